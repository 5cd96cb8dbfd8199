// Copyright 2026 The Scenarist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCENARIST_TOOLS_CLI_H_
#define SCENARIST_TOOLS_CLI_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scenarist/extract.h"

namespace scenarist::cli {

enum ExitCode { kOk = 0, kDomainError = 1, kIoError = 2 };

// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad corpus line, bad argument or bad configuration.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integer ticks pass through. ISO-8601 dates and date-times (UTC unless an
// offset is given) become seconds since the epoch divided by
// `granularity`, rounded down.
Tick ParseTimestamp(const std::string &text, int64_t granularity);

// Reads JSON-lines documents. Blank lines are skipped; unknown fields are
// ignored. Throws UsageError naming the 1-based line.
std::vector<Document> ReadCorpus(std::istream &in, int64_t granularity);

// Writes through a temporary file and rename. Throws IoError.
void WriteFileAtomic(const std::string &path, const std::string &contents);
std::string ReadFile(const std::string &path);

// Entry point; args exclude the program name. Results go to `out`,
// diagnostics to `err`.
int Run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

}  // namespace scenarist::cli

#endif  // SCENARIST_TOOLS_CLI_H_

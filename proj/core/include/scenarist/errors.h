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

#ifndef SCENARIST_ERRORS_H_
#define SCENARIST_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scenarist {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed pattern text. offset() is the byte offset into the source.
class ParseError : public Error {
 public:
  ParseError(const std::string &message, size_t offset)
      : Error(message + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

// Malformed definitions file. line() is 1-based.
class DefinitionError : public Error {
 public:
  DefinitionError(const std::string &message, int line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Graph contract violation: dangling endpoint, unknown id, bad order.
class GraphError : public Error {
 public:
  using Error::Error;
};

// Snapshot stream could not be decoded.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Query applied to a thing outside the function's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A mining stage failed. stage() names the stage.
class MiningError : public Error {
 public:
  MiningError(const std::string &stage, const std::string &message)
      : Error("stage " + stage + ": " + message), stage_(stage) {}

  const std::string &stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace scenarist

#endif  // SCENARIST_ERRORS_H_

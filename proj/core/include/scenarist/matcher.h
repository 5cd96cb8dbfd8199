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

#ifndef SCENARIST_MATCHER_H_
#define SCENARIST_MATCHER_H_

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "scenarist/definitions.h"
#include "scenarist/pattern.h"
#include "scenarist/tokenizer.h"

namespace scenarist {

// Role name (lowercase) -> type restriction.
using TypeEnv = std::map<std::string, TypeRef>;

// Half-open token range [begin, end).
struct TokenSpan {
  size_t begin = 0;
  size_t end = 0;

  size_t size() const { return end - begin; }
  bool operator==(const TokenSpan &) const = default;
  auto operator<=>(const TokenSpan &) const = default;
};

struct Binding {
  // Bound text with leading articles (a, an, the) trimmed, as long as one
  // token remains. `span` keeps the articles.
  std::string surface;
  TokenSpan span;

  bool operator==(const Binding &) const = default;
};

struct Match {
  TokenSpan span;
  std::map<std::string, Binding> bindings;

  bool operator==(const Match &) const = default;
};

// Whether `tokens` is a value of `type`:
//   word    one word token
//   number  one number token
//   money   a currency sign ($, €, £) then a number token
//   time    YYYY-MM-DD or HH:MM written without spaces, or one integer
//   composite  the composite pattern matches the whole slice
//   untyped    any non-empty slice
bool CheckType(std::span<const Token> tokens, const TypeRef &type);

// Every match of `pattern` in `tokens`, at every start position, sorted by
// (start, end, bindings) with duplicates removed.
//
// Literals compare lowercased text. Seq-set children match consecutively;
// an Any-set matches wherever one alternative does; an And-set matches the
// smallest window covering one match of every child, in any order and
// possibly overlapping. A variable matches any non-empty span accepted by its
// type in `env`; repeated variables must bind equal (lowercased) text, and
// the earliest such span is reported.
std::vector<Match> MatchPattern(const Pattern &pattern,
                                std::span<const Token> tokens,
                                const TypeEnv &env = {});

}  // namespace scenarist

#endif  // SCENARIST_MATCHER_H_

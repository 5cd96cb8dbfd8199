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

#ifndef SCENARIST_PATTERN_H_
#define SCENARIST_PATTERN_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace scenarist {

enum class PatternKind { kLiteral, kAny, kAnd, kSeq, kVariable };

// Node of a compiled pattern expression.
//
//   abc        Literal: one token, compared case-insensitively
//   {a b}      Any-set: at least one alternative matches
//   (a b)      And-set: every member matches within one token window
//   [a b]      Seq-set: members match consecutively, in order
//   $name      Variable: captures a non-empty token span
//
// Unbracketed top-level elements form an implicit Seq-set. Quoted phrases
// ('john doe') become a Seq-set of literals.
struct Pattern {
  PatternKind kind = PatternKind::kLiteral;
  // Literal token or variable name (without '$').
  std::string text;
  std::vector<Pattern> children;

  // Factories validate the node invariants and throw ParseError on
  // violation: literals must be exactly one token, variable names are
  // [A-Za-z0-9_]+, sets are non-empty.
  static Pattern Literal(std::string token);
  static Pattern Variable(std::string name);
  static Pattern Any(std::vector<Pattern> children);
  static Pattern And(std::vector<Pattern> children);
  static Pattern Seq(std::vector<Pattern> children);

  bool is_set() const {
    return kind == PatternKind::kAny || kind == PatternKind::kAnd ||
           kind == PatternKind::kSeq;
  }

  bool operator==(const Pattern &) const = default;
};

// Parses pattern notation. Typographic quotes are accepted as ASCII quotes.
// Throws ParseError with the byte offset of the offending input.
Pattern ParsePattern(std::string_view source);

// Canonical text form. ParsePattern(RenderPattern(p)) == p.
std::string RenderPattern(const Pattern &pattern);

// Same as RenderPattern, but each variable found in `values` is written as
// its bound text instead of `$name`.
std::string RenderPattern(const Pattern &pattern,
                          const std::map<std::string, std::string> &values);

// Variable names in left-to-right first-occurrence order, without repeats.
// The size of the result is the arity of the pattern.
std::vector<std::string> ListVariables(const Pattern &pattern);

}  // namespace scenarist

#endif  // SCENARIST_PATTERN_H_

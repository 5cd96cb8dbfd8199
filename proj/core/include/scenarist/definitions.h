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

#ifndef SCENARIST_DEFINITIONS_H_
#define SCENARIST_DEFINITIONS_H_

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scenarist/pattern.h"

namespace scenarist {

enum class AtomicType { kWord, kTime, kNumber, kMoney };

// Domain restriction of a role: none, one of the atomic types, or a
// variable-free composite pattern the bound text must match completely.
class TypeRef {
 public:
  TypeRef() = default;

  static TypeRef Untyped() { return TypeRef(); }
  static TypeRef Atomic(AtomicType type);
  // Throws ParseError if the pattern contains variables.
  static TypeRef Composite(Pattern pattern);

  bool is_untyped() const {
    return std::holds_alternative<std::monostate>(value_);
  }
  const AtomicType *atomic() const { return std::get_if<AtomicType>(&value_); }
  const Pattern *composite() const { return std::get_if<Pattern>(&value_); }

  bool operator==(const TypeRef &) const = default;

 private:
  std::variant<std::monostate, AtomicType, Pattern> value_;
};

const char *AtomicTypeName(AtomicType type);

// A named thing with its patterns and the roles it possesses.
// Role names are stored lowercase.
struct ThingDefinition {
  std::string name;
  std::vector<Pattern> patterns;
  std::vector<std::string> roles;
  std::map<std::string, TypeRef> role_types;

  // The patterns to match: the explicit ones, or the name itself read as a
  // pattern when there are none.
  std::vector<Pattern> EffectivePatterns() const;
};

// Parses a definitions file. Statements end with '.', keywords are
// case-insensitive and '#' starts a comment that runs to the end of the line.
//
//   There name X [patterns "p1", "p2", ...] [, has r1, r2 ...].
//   Name X patterns "p", ...            (adds patterns to an existing X)
//   R is word|time|number|money|'composite pattern'.
//
// Throws DefinitionError carrying the line of the offending statement.
std::vector<ThingDefinition> ParseDefinitions(std::string_view source);

}  // namespace scenarist

#endif  // SCENARIST_DEFINITIONS_H_

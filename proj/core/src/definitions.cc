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

#include "scenarist/definitions.h"

#include <algorithm>
#include <optional>
#include <utility>

#include "scenarist/errors.h"
#include "scenarist/tokenizer.h"

namespace scenarist {
namespace {

enum class LexKind { kWord, kQuoted, kComma, kPeriod };

struct Lexeme {
  LexKind kind;
  std::string text;
  int line;
};

bool IsWordChar(char c) {
  return !(c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v' || c == ',' || c == '.' || c == '\'' || c == '"' ||
           c == '#');
}

std::vector<Lexeme> Lex(const std::string &source) {
  std::vector<Lexeme> out;
  int line = 1;
  size_t pos = 0;
  while (pos < source.size()) {
    const char c = source[pos];
    if (c == '\n') {
      ++line;
      ++pos;
    } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
      ++pos;
    } else if (c == '#') {
      while (pos < source.size() && source[pos] != '\n') ++pos;
    } else if (c == ',') {
      out.push_back({LexKind::kComma, ",", line});
      ++pos;
    } else if (c == '.') {
      out.push_back({LexKind::kPeriod, ".", line});
      ++pos;
    } else if (c == '\'' || c == '"') {
      const int start_line = line;
      const size_t close = source.find(c, pos + 1);
      if (close == std::string::npos) {
        throw DefinitionError("unterminated quoted string", start_line);
      }
      std::string text = source.substr(pos + 1, close - pos - 1);
      line += static_cast<int>(std::count(text.begin(), text.end(), '\n'));
      out.push_back({LexKind::kQuoted, std::move(text), start_line});
      pos = close + 1;
    } else {
      const size_t begin = pos;
      while (pos < source.size() && IsWordChar(source[pos])) ++pos;
      out.push_back({LexKind::kWord, source.substr(begin, pos - begin), line});
    }
  }
  return out;
}

bool IsKeyword(const Lexeme &lexeme, std::string_view keyword) {
  return lexeme.kind == LexKind::kWord && Lowercase(lexeme.text) == keyword;
}

struct PendingType {
  std::string role;
  TypeRef type;
  int line;
};

class DefinitionsParser {
 public:
  std::vector<ThingDefinition> Parse(std::string_view source) {
    const std::vector<Lexeme> lexemes = Lex(NormalizeQuotes(source));
    std::vector<Lexeme> statement;
    for (const Lexeme &lexeme : lexemes) {
      if (lexeme.kind == LexKind::kPeriod) {
        if (!statement.empty()) Statement(statement);
        statement.clear();
      } else {
        statement.push_back(lexeme);
      }
    }
    if (!statement.empty()) Statement(statement);
    ApplyTypes();
    return std::move(definitions_);
  }

 private:
  void Statement(const std::vector<Lexeme> &s) {
    const int line = s.front().line;
    if (s.size() >= 3 && IsKeyword(s[0], "there") && IsKeyword(s[1], "name")) {
      ThingDefinition &def = FindOrCreate(NameOf(s[2]));
      Clauses(s, 3, &def);
      return;
    }
    if (s.size() >= 2 && IsKeyword(s[0], "name")) {
      const std::string name = NameOf(s[1]);
      ThingDefinition *def = Find(name);
      if (def == nullptr) {
        throw DefinitionError("'" + name + "' is not defined", line);
      }
      Clauses(s, 2, def);
      return;
    }
    if (s.size() == 3 && s[0].kind == LexKind::kWord && IsKeyword(s[1], "is")) {
      pending_.push_back({Lowercase(s[0].text), TypeOf(s[2]), line});
      return;
    }
    throw DefinitionError("unknown statement form", line);
  }

  static std::string NameOf(const Lexeme &lexeme) {
    if (lexeme.kind != LexKind::kWord && lexeme.kind != LexKind::kQuoted) {
      throw DefinitionError("expected a name", lexeme.line);
    }
    return lexeme.text;
  }

  static TypeRef TypeOf(const Lexeme &lexeme) {
    if (lexeme.kind == LexKind::kQuoted) {
      try {
        return TypeRef::Composite(ParsePattern(lexeme.text));
      } catch (const ParseError &e) {
        throw DefinitionError(e.what(), lexeme.line);
      }
    }
    const std::string word = Lowercase(lexeme.text);
    if (word == "word") return TypeRef::Atomic(AtomicType::kWord);
    if (word == "time") return TypeRef::Atomic(AtomicType::kTime);
    if (word == "number") return TypeRef::Atomic(AtomicType::kNumber);
    if (word == "money") return TypeRef::Atomic(AtomicType::kMoney);
    throw DefinitionError("unknown type '" + lexeme.text + "'", lexeme.line);
  }

  // patterns "p", ... and has r1 r2, ... in any order, optionally separated
  // by commas.
  void Clauses(const std::vector<Lexeme> &s, size_t i, ThingDefinition *def) {
    enum class Mode { kNone, kPatterns, kHas } mode = Mode::kNone;
    for (; i < s.size(); ++i) {
      const Lexeme &lexeme = s[i];
      if (lexeme.kind == LexKind::kComma) continue;
      if (IsKeyword(lexeme, "patterns")) {
        mode = Mode::kPatterns;
        continue;
      }
      if (IsKeyword(lexeme, "has")) {
        mode = Mode::kHas;
        continue;
      }
      if (mode == Mode::kPatterns && lexeme.kind == LexKind::kQuoted) {
        try {
          def->patterns.push_back(ParsePattern(lexeme.text));
        } catch (const ParseError &e) {
          throw DefinitionError(e.what(), lexeme.line);
        }
        continue;
      }
      if (mode == Mode::kHas && lexeme.kind == LexKind::kWord) {
        const std::string role = Lowercase(lexeme.text);
        if (std::find(def->roles.begin(), def->roles.end(), role) ==
            def->roles.end()) {
          def->roles.push_back(role);
        }
        continue;
      }
      throw DefinitionError("unexpected '" + lexeme.text + "'", lexeme.line);
    }
  }

  ThingDefinition *Find(const std::string &name) {
    for (ThingDefinition &def : definitions_) {
      if (def.name == name) return &def;
    }
    return nullptr;
  }

  ThingDefinition &FindOrCreate(const std::string &name) {
    if (ThingDefinition *def = Find(name)) return *def;
    definitions_.push_back(ThingDefinition{name, {}, {}, {}});
    return definitions_.back();
  }

  void ApplyTypes() {
    for (PendingType &pending : pending_) {
      bool declared = false;
      for (ThingDefinition &def : definitions_) {
        if (std::find(def.roles.begin(), def.roles.end(), pending.role) !=
            def.roles.end()) {
          def.role_types[pending.role] = pending.type;
          declared = true;
        }
      }
      if (!declared) {
        throw DefinitionError(
            "role '" + pending.role + "' is not declared in any has list",
            pending.line);
      }
    }
  }

  std::vector<ThingDefinition> definitions_;
  std::vector<PendingType> pending_;
};

bool ContainsVariable(const Pattern &pattern) {
  if (pattern.kind == PatternKind::kVariable) return true;
  return std::any_of(pattern.children.begin(), pattern.children.end(),
                     ContainsVariable);
}

}  // namespace

TypeRef TypeRef::Atomic(AtomicType type) {
  TypeRef t;
  t.value_ = type;
  return t;
}

TypeRef TypeRef::Composite(Pattern pattern) {
  if (ContainsVariable(pattern)) {
    throw ParseError("composite type pattern cannot contain variables", 0);
  }
  TypeRef t;
  t.value_ = std::move(pattern);
  return t;
}

const char *AtomicTypeName(AtomicType type) {
  switch (type) {
    case AtomicType::kWord:
      return "word";
    case AtomicType::kTime:
      return "time";
    case AtomicType::kNumber:
      return "number";
    case AtomicType::kMoney:
      return "money";
  }
  return "?";
}

std::vector<Pattern> ThingDefinition::EffectivePatterns() const {
  if (!patterns.empty()) return patterns;
  return {ParsePattern(name)};
}

std::vector<ThingDefinition> ParseDefinitions(std::string_view source) {
  return DefinitionsParser().Parse(source);
}

}  // namespace scenarist

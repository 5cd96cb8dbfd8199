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

#include "scenarist/pattern.h"

#include <algorithm>
#include <set>
#include <utility>

#include "scenarist/errors.h"
#include "scenarist/tokenizer.h"

namespace scenarist {
namespace {

bool IsNameChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

bool IsDelimiter(char c) {
  return c == '{' || c == '}' || c == '(' || c == ')' || c == '[' || c == ']';
}

bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Returns the ASCII quote character at `pos` (typographic quotes folded)
// and stores the byte length in `length`, or 0 if there is no quote.
char QuoteAt(std::string_view s, size_t pos, size_t *length) {
  *length = 1;
  if (s[pos] == '\'' || s[pos] == '"') return s[pos];
  if (pos + 2 < s.size() && static_cast<unsigned char>(s[pos]) == 0xE2 &&
      static_cast<unsigned char>(s[pos + 1]) == 0x80) {
    const auto third = static_cast<unsigned char>(s[pos + 2]);
    *length = 3;
    if (third >= 0x98 && third <= 0x9B) return '\'';
    if (third >= 0x9C && third <= 0x9F) return '"';
  }
  return 0;
}

class PatternParser {
 public:
  explicit PatternParser(std::string_view source) : source_(source) {}

  Pattern Parse() {
    std::vector<Pattern> elements = ParseElements(0, 0);
    if (elements.empty()) throw ParseError("empty pattern", 0);
    if (elements.size() == 1) return std::move(elements.front());
    return Pattern::Seq(std::move(elements));
  }

 private:
  // Parses elements until `closer` (0 for end of input). `open` is the
  // offset of the opening delimiter, used for error reporting.
  std::vector<Pattern> ParseElements(char closer, size_t open) {
    std::vector<Pattern> elements;
    while (true) {
      SkipSpace();
      if (pos_ >= source_.size()) {
        if (closer != 0) {
          throw ParseError(std::string("unbalanced delimiter: missing '") +
                               closer + "'",
                           open);
        }
        return elements;
      }
      const char c = source_[pos_];
      if (c == '}' || c == ')' || c == ']') {
        if (c != closer) {
          throw ParseError(
              std::string("unbalanced delimiter: unexpected '") + c + "'",
              pos_);
        }
        ++pos_;
        return elements;
      }
      if (c == '{' || c == '(' || c == '[') {
        const size_t at = pos_++;
        const char close = c == '{' ? '}' : c == '(' ? ')' : ']';
        std::vector<Pattern> children = ParseElements(close, at);
        if (children.empty()) throw ParseError("empty set", at);
        if (c == '{') {
          elements.push_back(Pattern::Any(std::move(children)));
        } else if (c == '(') {
          elements.push_back(Pattern::And(std::move(children)));
        } else {
          elements.push_back(Pattern::Seq(std::move(children)));
        }
        continue;
      }
      size_t quote_length = 0;
      const char quote = QuoteAt(source_, pos_, &quote_length);
      if (quote != 0) {
        elements.push_back(ParsePhrase(quote, quote_length));
        continue;
      }
      if (c == '$') {
        elements.push_back(ParseVariable());
        continue;
      }
      ParseBareRun(&elements);
    }
  }

  void SkipSpace() {
    // Non-ASCII spaces end up inside bare runs, where the tokenizer drops
    // them.
    while (pos_ < source_.size() && IsAsciiSpace(source_[pos_])) ++pos_;
  }

  Pattern ParsePhrase(char quote, size_t quote_length) {
    const size_t open = pos_;
    pos_ += quote_length;
    const size_t content_begin = pos_;
    while (pos_ < source_.size()) {
      size_t length = 0;
      if (QuoteAt(source_, pos_, &length) == quote) {
        const std::string_view content =
            source_.substr(content_begin, pos_ - content_begin);
        pos_ += length;
        std::vector<Token> tokens = Tokenize(NormalizeQuotes(content));
        if (tokens.empty()) throw ParseError("empty set", open);
        if (tokens.size() == 1) return Pattern::Literal(tokens[0].surface);
        std::vector<Pattern> literals;
        literals.reserve(tokens.size());
        for (Token &token : tokens) {
          literals.push_back(Pattern::Literal(std::move(token.surface)));
        }
        return Pattern::Seq(std::move(literals));
      }
      ++pos_;
    }
    throw ParseError("unbalanced delimiter: unterminated quote", open);
  }

  Pattern ParseVariable() {
    const size_t at = pos_++;
    const size_t name_begin = pos_;
    while (pos_ < source_.size() && IsNameChar(source_[pos_])) ++pos_;
    if (pos_ == name_begin) throw ParseError("bare '$'", at);
    return Pattern::Variable(
        std::string(source_.substr(name_begin, pos_ - name_begin)));
  }

  void ParseBareRun(std::vector<Pattern> *elements) {
    const size_t begin = pos_;
    while (pos_ < source_.size()) {
      const char c = source_[pos_];
      size_t quote_length = 0;
      if (IsAsciiSpace(c) || IsDelimiter(c) || c == '$' ||
          QuoteAt(source_, pos_, &quote_length) != 0) {
        break;
      }
      ++pos_;
    }
    for (Token &token : Tokenize(source_.substr(begin, pos_ - begin))) {
      elements->push_back(Pattern::Literal(std::move(token.surface)));
    }
  }

  std::string_view source_;
  size_t pos_ = 0;
};

bool IsQuoteToken(std::string_view token) {
  size_t length = 0;
  return !token.empty() && QuoteAt(token, 0, &length) != 0;
}

// A literal that re-lexes as itself when written without quotes.
bool IsBareLiteral(std::string_view token) {
  if (token.size() == 1 && (IsDelimiter(token[0]) || token[0] == '$')) {
    return false;
  }
  return !IsQuoteToken(token);
}

void Render(const Pattern &pattern,
            const std::map<std::string, std::string> *values, bool top,
            std::string *out);

void RenderChildren(const Pattern &pattern,
                    const std::map<std::string, std::string> *values,
                    std::string *out) {
  for (size_t i = 0; i < pattern.children.size(); ++i) {
    if (i > 0) *out += ' ';
    Render(pattern.children[i], values, false, out);
  }
}

// Picks a quote character usable for a phrase made of `children`, or 0.
char PhraseQuote(const Pattern &seq) {
  if (seq.children.size() < 2) return 0;
  bool has_single = false;
  bool has_double = false;
  for (const Pattern &child : seq.children) {
    if (child.kind != PatternKind::kLiteral) return 0;
    if (child.text == "'") has_single = true;
    if (child.text == "\"") has_double = true;
  }
  if (!has_single) return '\'';
  if (!has_double) return '"';
  return 0;
}

void Render(const Pattern &pattern,
            const std::map<std::string, std::string> *values, bool top,
            std::string *out) {
  switch (pattern.kind) {
    case PatternKind::kLiteral:
      if (IsBareLiteral(pattern.text)) {
        *out += pattern.text;
      } else {
        const char quote = pattern.text == "'" ? '"' : '\'';
        *out += quote;
        *out += pattern.text;
        *out += quote;
      }
      return;
    case PatternKind::kVariable:
      if (values != nullptr) {
        auto it = values->find(pattern.text);
        if (it != values->end()) {
          *out += it->second;
          return;
        }
      }
      *out += '$';
      *out += pattern.text;
      return;
    case PatternKind::kAny:
      *out += '{';
      RenderChildren(pattern, values, out);
      *out += '}';
      return;
    case PatternKind::kAnd:
      *out += '(';
      RenderChildren(pattern, values, out);
      *out += ')';
      return;
    case PatternKind::kSeq:
      if (top && pattern.children.size() >= 2) {
        RenderChildren(pattern, values, out);
        return;
      }
      if (const char quote = PhraseQuote(pattern); quote != 0) {
        *out += quote;
        for (size_t i = 0; i < pattern.children.size(); ++i) {
          if (i > 0) *out += ' ';
          *out += pattern.children[i].text;
        }
        *out += quote;
        return;
      }
      *out += '[';
      RenderChildren(pattern, values, out);
      *out += ']';
      return;
  }
}

void CollectVariables(const Pattern &pattern, std::set<std::string> *seen,
                      std::vector<std::string> *out) {
  if (pattern.kind == PatternKind::kVariable) {
    if (seen->insert(pattern.text).second) out->push_back(pattern.text);
    return;
  }
  for (const Pattern &child : pattern.children) {
    CollectVariables(child, seen, out);
  }
}

Pattern MakeSet(PatternKind kind, std::vector<Pattern> children) {
  if (children.empty()) throw ParseError("empty set", 0);
  Pattern p;
  p.kind = kind;
  p.children = std::move(children);
  return p;
}

}  // namespace

Pattern Pattern::Literal(std::string token) {
  const std::vector<Token> tokens = Tokenize(token);
  if (tokens.size() != 1 || tokens[0].surface != token) {
    throw ParseError("literal must be a single token: '" + token + "'", 0);
  }
  // Typographic quotes are folded by the parser, so they cannot round-trip.
  size_t length = 0;
  if (QuoteAt(token, 0, &length) != 0 && length > 1) {
    throw ParseError("literal cannot be a typographic quote", 0);
  }
  Pattern p;
  p.kind = PatternKind::kLiteral;
  p.text = std::move(token);
  return p;
}

Pattern Pattern::Variable(std::string name) {
  if (name.empty() || !std::all_of(name.begin(), name.end(), IsNameChar)) {
    throw ParseError("invalid variable name '" + name + "'", 0);
  }
  Pattern p;
  p.kind = PatternKind::kVariable;
  p.text = std::move(name);
  return p;
}

Pattern Pattern::Any(std::vector<Pattern> children) {
  return MakeSet(PatternKind::kAny, std::move(children));
}

Pattern Pattern::And(std::vector<Pattern> children) {
  return MakeSet(PatternKind::kAnd, std::move(children));
}

Pattern Pattern::Seq(std::vector<Pattern> children) {
  return MakeSet(PatternKind::kSeq, std::move(children));
}

Pattern ParsePattern(std::string_view source) {
  return PatternParser(source).Parse();
}

std::string RenderPattern(const Pattern &pattern) {
  std::string out;
  Render(pattern, nullptr, true, &out);
  return out;
}

std::string RenderPattern(const Pattern &pattern,
                          const std::map<std::string, std::string> &values) {
  std::string out;
  Render(pattern, &values, true, &out);
  return out;
}

std::vector<std::string> ListVariables(const Pattern &pattern) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  CollectVariables(pattern, &seen, &out);
  return out;
}

}  // namespace scenarist

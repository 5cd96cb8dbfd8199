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

#include "scenarist/tokenizer.h"

#include <cstdint>

namespace scenarist {
namespace {

struct CodePoint {
  char32_t value;
  size_t length;
};

CodePoint Decode(std::string_view text, size_t pos) {
  const auto lead = static_cast<unsigned char>(text[pos]);
  if (lead < 0x80) return {lead, 1};
  size_t length = 0;
  char32_t value = 0;
  if ((lead & 0xE0) == 0xC0) {
    length = 2;
    value = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    length = 3;
    value = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    length = 4;
    value = lead & 0x07;
  } else {
    return {0xFFFD, 1};
  }
  if (pos + length > text.size()) return {0xFFFD, 1};
  for (size_t i = 1; i < length; ++i) {
    const auto byte = static_cast<unsigned char>(text[pos + i]);
    if ((byte & 0xC0) != 0x80) return {0xFFFD, 1};
    value = (value << 6) | (byte & 0x3F);
  }
  return {value, length};
}

bool IsSpace(char32_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v' || c == 0xA0 || (c >= 0x2000 && c <= 0x200B) ||
         c == 0x202F || c == 0x205F || c == 0x3000 || c == 0xFEFF;
}

bool IsDigit(char32_t c) { return c >= '0' && c <= '9'; }

bool IsLetter(char32_t c) {
  if (c < 0x80) return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  if (c == 0xFFFD) return false;
  if (c >= 0xA1 && c <= 0xBF) return c == 0xAA || c == 0xB5 || c == 0xBA;
  if (c == 0xD7 || c == 0xF7) return false;
  if (c >= 0x2010 && c <= 0x205E) return false;
  if (c >= 0x20A0 && c <= 0x20CF) return false;
  if (c >= 0x3001 && c <= 0x3003) return false;
  return !IsSpace(c);
}

}  // namespace

std::string Lowercase(std::string_view text) {
  std::string out(text);
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  size_t pos = 0;
  while (pos < text.size()) {
    const CodePoint cp = Decode(text, pos);
    if (IsSpace(cp.value)) {
      pos += cp.length;
      continue;
    }
    const size_t begin = pos;
    TokenClass token_class;
    if (IsLetter(cp.value)) {
      token_class = TokenClass::kWord;
      pos += cp.length;
      while (pos < text.size()) {
        const CodePoint next = Decode(text, pos);
        if (!IsLetter(next.value)) break;
        pos += next.length;
      }
    } else if (IsDigit(cp.value)) {
      token_class = TokenClass::kNumber;
      while (pos < text.size() && IsDigit(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
      if (pos + 1 < text.size() && text[pos] == '.' &&
          IsDigit(static_cast<unsigned char>(text[pos + 1]))) {
        ++pos;
        while (pos < text.size() &&
               IsDigit(static_cast<unsigned char>(text[pos]))) {
          ++pos;
        }
      }
    } else {
      token_class = TokenClass::kPunct;
      pos += cp.length;
    }
    Token token;
    token.surface = std::string(text.substr(begin, pos - begin));
    token.norm = Lowercase(token.surface);
    token.token_class = token_class;
    token.begin = begin;
    token.end = pos;
    tokens.push_back(std::move(token));
  }
  return tokens;
}

std::string JoinSurface(std::span<const Token> tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && tokens[i].begin != tokens[i - 1].end) out += ' ';
    out += tokens[i].surface;
  }
  return out;
}

std::string NormalizeQuotes(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  size_t pos = 0;
  while (pos < text.size()) {
    const CodePoint cp = Decode(text, pos);
    switch (cp.value) {
      case 0x2018:
      case 0x2019:
      case 0x201A:
      case 0x201B:
        out += '\'';
        break;
      case 0x201C:
      case 0x201D:
      case 0x201E:
      case 0x201F:
        out += '"';
        break;
      default:
        out.append(text.substr(pos, cp.length));
    }
    pos += cp.length;
  }
  return out;
}

}  // namespace scenarist

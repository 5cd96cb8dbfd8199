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

#ifndef SCENARIST_TOKENIZER_H_
#define SCENARIST_TOKENIZER_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scenarist {

enum class TokenClass { kWord, kNumber, kPunct };

// A token of source text. [begin, end) is a byte span into the source.
struct Token {
  std::string surface;
  std::string norm;
  TokenClass token_class = TokenClass::kWord;
  size_t begin = 0;
  size_t end = 0;

  bool operator==(const Token &) const = default;
};

// Splits text into words (maximal letter runs), numbers (digit runs with at
// most one interior '.' flanked by digits) and single-character punctuation.
// Whitespace separates tokens and is dropped. Letters are ASCII letters and
// any non-ASCII code point that is not a known punctuation or space mark.
std::vector<Token> Tokenize(std::string_view text);

// ASCII lowercase. Non-ASCII bytes pass through unchanged.
std::string Lowercase(std::string_view text);

// Joins token surfaces, inserting a single space wherever the source had a
// gap between consecutive tokens.
std::string JoinSurface(std::span<const Token> tokens);

// Replaces typographic quotes with their ASCII counterparts.
std::string NormalizeQuotes(std::string_view text);

}  // namespace scenarist

#endif  // SCENARIST_TOKENIZER_H_

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

#include "scenarist/matcher.h"

#include <algorithm>
#include <regex>
#include <utility>

namespace scenarist {
namespace {

using Spans = std::map<std::string, TokenSpan>;

struct Partial {
  size_t end;
  Spans bindings;

  bool operator==(const Partial &) const = default;
  bool operator<(const Partial &other) const {
    if (end != other.end) return end < other.end;
    return bindings < other.bindings;
  }
};

void SortUnique(std::vector<Partial> *partials) {
  std::sort(partials->begin(), partials->end());
  partials->erase(std::unique(partials->begin(), partials->end()),
                  partials->end());
}

bool IsArticle(const std::string &norm) {
  return norm == "a" || norm == "an" || norm == "the";
}

bool IsTimeText(const std::string &text) {
  static const std::regex kDate(R"(\d{4}-\d{2}-\d{2})");
  static const std::regex kClock(R"(\d{1,2}:\d{2})");
  return std::regex_match(text, kDate) || std::regex_match(text, kClock);
}

class PatternMatcher {
 public:
  PatternMatcher(std::span<const Token> tokens, const TypeEnv &env)
      : tokens_(tokens), env_(env) {}

  std::vector<Match> Run(const Pattern &pattern) {
    std::vector<Match> matches;
    for (size_t start = 0; start < tokens_.size(); ++start) {
      std::vector<Partial> partials;
      Expand(pattern, start, {}, &partials);
      SortUnique(&partials);
      for (Partial &partial : partials) {
        Match match;
        match.span = {start, partial.end};
        for (const auto &[name, span] : partial.bindings) {
          match.bindings[name] = Binding{Surface(span), span};
        }
        matches.push_back(std::move(match));
      }
    }
    return matches;
  }

 private:
  // Appends every way `pattern` can match starting at `start`, given the
  // bindings made so far.
  void Expand(const Pattern &pattern, size_t start, const Spans &in,
              std::vector<Partial> *out) {
    switch (pattern.kind) {
      case PatternKind::kLiteral:
        if (start < tokens_.size() &&
            tokens_[start].norm == Lowercase(pattern.text)) {
          out->push_back({start + 1, in});
        }
        return;
      case PatternKind::kVariable: {
        const TypeRef &type = TypeOf(pattern.text);
        for (size_t end = start + 1; end <= tokens_.size(); ++end) {
          if (!CheckType(tokens_.subspan(start, end - start), type)) continue;
          Spans bindings = in;
          if (Bind(&bindings, pattern.text, {start, end})) {
            out->push_back({end, std::move(bindings)});
          }
        }
        return;
      }
      case PatternKind::kAny:
        for (const Pattern &child : pattern.children) {
          Expand(child, start, in, out);
        }
        return;
      case PatternKind::kSeq: {
        std::vector<Partial> frontier = {{start, in}};
        for (const Pattern &child : pattern.children) {
          std::vector<Partial> next;
          for (const Partial &partial : frontier) {
            Expand(child, partial.end, partial.bindings, &next);
          }
          SortUnique(&next);
          frontier = std::move(next);
          if (frontier.empty()) return;
        }
        out->insert(out->end(), std::make_move_iterator(frontier.begin()),
                    std::make_move_iterator(frontier.end()));
        return;
      }
      case PatternKind::kAnd: {
        std::vector<const std::vector<Occurrence> *> choices;
        for (const Pattern &child : pattern.children) {
          const std::vector<Occurrence> &occurrences = OccurrencesFrom(child, start);
          if (occurrences.empty()) return;
          choices.push_back(&occurrences);
        }
        CombineAnd(choices, 0, start, start, false, in, out);
        return;
      }
    }
  }

  struct Occurrence {
    size_t start;
    Partial partial;
  };

  // All unconstrained matches of `pattern` starting at or after `from`.
  const std::vector<Occurrence> &OccurrencesFrom(const Pattern &pattern,
                                                 size_t from) {
    auto key = std::make_pair(&pattern, from);
    auto it = occurrences_.find(key);
    if (it != occurrences_.end()) return it->second;
    std::vector<Occurrence> result;
    for (size_t s = from; s < tokens_.size(); ++s) {
      std::vector<Partial> partials;
      Expand(pattern, s, {}, &partials);
      SortUnique(&partials);
      for (Partial &partial : partials) {
        result.push_back({s, std::move(partial)});
      }
    }
    return occurrences_.emplace(key, std::move(result)).first->second;
  }

  void CombineAnd(const std::vector<const std::vector<Occurrence> *> &choices,
                  size_t index, size_t window_start, size_t max_end, bool touched_start, const Spans &bindings,
                  std::vector<Partial> *out) {
    if (index == choices.size()) {
      if (touched_start) out->push_back({max_end, bindings});
      return;
    }
    for (const Occurrence &occurrence : *choices[index]) {
      Spans merged = bindings;
      bool ok = true;
      for (const auto &[name, span] : occurrence.partial.bindings) {
        if (!Bind(&merged, name, span)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      CombineAnd(choices, index + 1, window_start,
                 std::max(max_end, occurrence.partial.end),
                 touched_start || occurrence.start == window_start, merged,
                 out);
    }
  }

  // Records `name` -> `span`. A repeated variable must have equal text and
  // keeps the smaller span.
  bool Bind(Spans *bindings, const std::string &name, TokenSpan span) const {
    auto [it, inserted] = bindings->emplace(name, span);
    if (inserted) return true;
    if (!SameText(it->second, span)) return false;
    it->second = std::min(it->second, span);
    return true;
  }

  bool SameText(TokenSpan a, TokenSpan b) const {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
      if (tokens_[a.begin + i].norm != tokens_[b.begin + i].norm) return false;
    }
    return true;
  }

  const TypeRef &TypeOf(const std::string &variable) const {
    static const TypeRef kUntyped;
    auto it = env_.find(Lowercase(variable));
    return it == env_.end() ? kUntyped : it->second;
  }

  std::string Surface(TokenSpan span) const {
    size_t begin = span.begin;
    while (span.end - begin > 1 && IsArticle(tokens_[begin].norm)) ++begin;
    return JoinSurface(tokens_.subspan(begin, span.end - begin));
  }

  std::span<const Token> tokens_;
  const TypeEnv &env_;
  std::map<std::pair<const Pattern *, size_t>, std::vector<Occurrence>>
      occurrences_;
};

}  // namespace

bool CheckType(std::span<const Token> tokens, const TypeRef &type) {
  if (tokens.empty()) return false;
  if (type.is_untyped()) return true;
  if (const Pattern *composite = type.composite()) {
    for (const Match &match : MatchPattern(*composite, tokens)) {
      if (match.span.begin == 0 && match.span.end == tokens.size()) return true;
    }
    return false;
  }
  switch (*type.atomic()) {
    case AtomicType::kWord:
      return tokens.size() == 1 && tokens[0].token_class == TokenClass::kWord;
    case AtomicType::kNumber:
      return tokens.size() == 1 && tokens[0].token_class == TokenClass::kNumber;
    case AtomicType::kMoney:
      return tokens.size() == 2 && tokens[0].token_class == TokenClass::kPunct &&
             (tokens[0].surface == "$" || tokens[0].surface == "€" ||
              tokens[0].surface == "£") &&
             tokens[1].token_class == TokenClass::kNumber;
    case AtomicType::kTime: {
      if (tokens.size() == 1) {
        return tokens[0].token_class == TokenClass::kNumber &&
               tokens[0].surface.find('.') == std::string::npos;
      }
      std::string text;
      for (size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0 && tokens[i].begin != tokens[i - 1].end) return false;
        text += tokens[i].surface;
      }
      return IsTimeText(text);
    }
  }
  return false;
}

std::vector<Match> MatchPattern(const Pattern &pattern,
                                std::span<const Token> tokens,
                                const TypeEnv &env) {
  return PatternMatcher(tokens, env).Run(pattern);
}

}  // namespace scenarist

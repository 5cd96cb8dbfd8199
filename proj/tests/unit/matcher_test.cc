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

#include <gtest/gtest.h>

#include <random>

#include "corpora.h"
#include "oracles.h"

namespace scenarist {
namespace {

std::vector<Match> MatchAll(const std::string &pattern, const std::string &text,
                       const TypeEnv &env = {}) {
  return MatchPattern(ParsePattern(pattern), Tokenize(text), env);
}

TEST(MatcherTest, SanctionsBindings) {
  const auto matches =
      MatchAll("{obama trump} {forced suggested} $organization to {impose "
          "implement apply} sanctions against $target",
          "Obama forced the EU to impose sanctions against Russia");
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(matches[0].bindings.at("organization").surface, "EU");
  EXPECT_EQ(matches[0].bindings.at("organization").span, (TokenSpan{2, 4}));
  EXPECT_EQ(matches[0].bindings.at("target").surface, "Russia");
}

TEST(MatcherTest, LiteralFullSpan) {
  const auto matches = MatchAll("abc", "abc");
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(matches[0].span, (TokenSpan{0, 1}));
  EXPECT_TRUE(matches[0].bindings.empty());
  EXPECT_TRUE(MatchAll("abc", "ABD").empty());
  EXPECT_EQ(MatchAll("ABC", "abc").size(), 1u);
}

TEST(MatcherTest, SeqOrderMattersAndDoesNot) {
  EXPECT_EQ(MatchAll("[a b]", "a b").size(), 1u);
  EXPECT_TRUE(MatchAll("[b a]", "a b").empty());
  EXPECT_EQ(MatchAll("(a b)", "a b").size(), 1u);
  EXPECT_EQ(MatchAll("(b a)", "a b").size(), 1u);
}

TEST(MatcherTest, AndWindowIsSmallestCover) {
  const auto matches = MatchAll("(a c)", "a b c");
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(matches[0].span, (TokenSpan{0, 3}));
}

TEST(MatcherTest, LazyVariablesFirst) {
  const auto matches = MatchAll("$x b", "a b b");
  ASSERT_EQ(matches.size(), 3u);
  EXPECT_EQ(matches[0].span, (TokenSpan{0, 2}));
  EXPECT_EQ(matches[1].span, (TokenSpan{0, 3}));
  EXPECT_EQ(matches[2].span, (TokenSpan{1, 3}));
}

TEST(MatcherTest, RepeatedVariableNeedsEqualText) {
  EXPECT_EQ(MatchAll("$x and $x", "tom and Tom").size(), 1u);
  EXPECT_TRUE(MatchAll("$x and $x", "tom and jerry").empty());
}

TEST(MatcherTest, ArticlesStrippedFromBindings) {
  const auto matches = MatchAll("saw $thing", "saw the big dog");
  ASSERT_FALSE(matches.empty());
  for (const Match &m : matches) {
    const std::string &surface = m.bindings.at("thing").surface;
    if (m.bindings.at("thing").span.size() > 1) {
      EXPECT_NE(surface.rfind("the ", 0), 0u) << surface;
    }
  }
  EXPECT_EQ(MatchAll("saw $thing", "saw the").at(0).bindings.at("thing").surface,
            "the");
}

TEST(MatcherTest, AnyMonotone) {
  const std::string text = "red light and green car";
  const size_t small = MatchAll("{red green}", text).size();
  const size_t large = MatchAll("{red green car}", text).size();
  EXPECT_EQ(small, 2u);
  EXPECT_EQ(large, 3u);
}

TEST(CheckTypeTest, AtomicTypes) {
  auto check = [](const std::string &text, AtomicType type) {
    return CheckType(Tokenize(text), TypeRef::Atomic(type));
  };
  EXPECT_TRUE(check("$3.50", AtomicType::kMoney));
  EXPECT_TRUE(check("€12", AtomicType::kMoney));
  EXPECT_FALSE(check("3.50", AtomicType::kMoney));
  EXPECT_FALSE(check("apples", AtomicType::kNumber));
  EXPECT_TRUE(check("12", AtomicType::kNumber));
  EXPECT_TRUE(check("apples", AtomicType::kWord));
  EXPECT_FALSE(check("red apples", AtomicType::kWord));
  EXPECT_TRUE(check("2018-05-01", AtomicType::kTime));
  EXPECT_TRUE(check("12:30", AtomicType::kTime));
  EXPECT_TRUE(check("1700", AtomicType::kTime));
  EXPECT_FALSE(check("2018 - 05 - 01", AtomicType::kTime));
  EXPECT_FALSE(check("noon", AtomicType::kTime));
}

TEST(CheckTypeTest, CompositeAndUntyped) {
  const TypeRef person = TypeRef::Composite(ParsePattern("{John Jane Joe Joi}"));
  EXPECT_TRUE(CheckType(Tokenize("john"), person));
  EXPECT_FALSE(CheckType(Tokenize("john smith"), person));
  EXPECT_TRUE(CheckType(Tokenize("anything at all"), TypeRef::Untyped()));
  EXPECT_FALSE(CheckType({}, TypeRef::Untyped()));
}

TEST(MatcherTest, TypedRolesFilterSpans) {
  const TypeEnv env = {{"item", TypeRef::Atomic(AtomicType::kWord)},
                       {"amount", TypeRef::Atomic(AtomicType::kNumber)},
                       {"cost", TypeRef::Atomic(AtomicType::kMoney)}};
  const auto matches =
      MatchAll("On sale: $item, quantity $amount, prices $cost",
          "On sale: apples, quantity 12, prices $3.50 today", env);
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(matches[0].bindings.at("item").surface, "apples");
  EXPECT_EQ(matches[0].bindings.at("amount").surface, "12");
  EXPECT_EQ(matches[0].bindings.at("cost").surface, "$3.50");
}

TEST(MatcherTest, AgreesWithAlignmentOracle) {
  std::mt19937 rng(424242);
  for (int round = 0; round < 300; ++round) {
    const Pattern p = testing::RandomPattern(&rng, 8, 2);
    const std::string text = testing::RandomText(&rng, 12);
    const auto tokens = Tokenize(text);
    std::vector<std::string> norms;
    for (const Token &t : tokens) norms.push_back(t.norm);
    std::set<oracle::Alignment> got;
    for (const Match &m : MatchPattern(p, tokens)) {
      oracle::Alignment a{m.span.begin, m.span.end, {}};
      for (const auto &[name, binding] : m.bindings) a.bindings[name] = binding.span;
      got.insert(a);
    }
    ASSERT_EQ(got, oracle::Alignments(p, norms))
        << RenderPattern(p) << " | " << text;
  }
}

}  // namespace
}  // namespace scenarist

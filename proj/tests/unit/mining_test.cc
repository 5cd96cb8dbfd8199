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

#include "scenarist/mining.h"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "corpora.h"
#include "mining_checks.h"
#include "scenarist/errors.h"
#include "scenarist/extract.h"
#include "scenarist/matcher.h"
#include "scenarist/queries.h"

namespace scenarist {
namespace {

using testing::Below;
using testing::Uniform;

std::string NameOf(const Graph &g, ThingId id) { return g.Thing(id).name.value_or(""); }

ThingId Named(const Graph &g, ThingKind kind, const std::string &name) {
  for (const ThingNode &n : g.things()) {
    if (n.kind == kind && n.name == name) return n.id;
  }
  return ThingId{};
}

// Events recorded through the extractor's recorder, one per (appearance,
// role, actor, tick).
struct Fixture {
  Graph g;
  EventRecorder recorder{&g};

  ThingId Event(const std::string &appearance, const std::string &role,
                const std::string &actor, Tick t) {
    return recorder.RecordEvent(appearance, {{role, actor}}, TimeSpec::Point(t),
                                "", appearance + " " + actor);
  }
};

// ---------------------------------------------------------------------------
// Role scoping and actor differentiation.

TEST(ScopeRolesTest, Stoplight) {
  Fixture f;
  const char *colors[] = {"red", "green", "yellow", "red", "green"};
  for (int i = 0; i < 5; ++i) f.Event("light", "light color", colors[i], i + 1);
  const auto domains = ScopeRoles(&f.g);
  ASSERT_EQ(domains.size(), 1u);
  EXPECT_EQ(domains[0].role, "light color");
  std::set<std::string> names;
  for (ThingId a : domains[0].actors) names.insert(NameOf(f.g, a));
  EXPECT_EQ(names, (std::set<std::string>{"red", "yellow", "green"}));
  std::set<std::string> members;
  for (const auto &m : f.g.Neighbors(domains[0].any_set, EdgeFilter{EdgeKind::kMember, {}, SetKind::kAny}, Direction::kOut)) {
    members.insert(NameOf(f.g, m.id));
  }
  EXPECT_EQ(members, names);
  const auto domain_edges = f.g.Neighbors(domains[0].appearance, EdgeKind::kDomain, Direction::kOut);
  EXPECT_TRUE(domain_edges.Contains(domains[0].any_set));
}

TEST(ScopeRolesTest, SingleEventGivesSingleton) {
  Fixture f;
  f.Event("light", "light color", "red", 1);
  const auto domains = ScopeRoles(&f.g);
  ASSERT_EQ(domains.size(), 1u);
  EXPECT_EQ(domains[0].actors.size(), 1u);
}

TEST(ScopeRolesTest, MatchesGroupBy) {
  std::mt19937 rng(21);
  for (int round = 0; round < 50; ++round) {
    Fixture f;
    std::map<std::pair<std::string, std::string>, std::set<std::string>> expected;
    for (int i = 0; i < 50; ++i) {
      const std::string app = testing::LetterName("app", Below(&rng, 4), 1);
      const std::string role = testing::LetterName("role", Below(&rng, 3), 1);
      const std::string actor = testing::LetterName("who", Below(&rng, 6), 1);
      f.Event(app, role, actor, i);
      expected[{app, role}].insert(actor);
    }
    std::map<std::pair<std::string, std::string>, std::set<std::string>> got;
    for (const RoleDomain &d : ScopeRoles(&f.g)) {
      auto &names = got[{NameOf(f.g, d.appearance), d.role}];
      for (ThingId a : d.actors) names.insert(NameOf(f.g, a));
    }
    ASSERT_EQ(got, expected) << "round " << round;
  }
}

TEST(DifferentiateActorsTest, MostProbableCleaner) {
  Fixture f;
  f.Event("cleaning", "cleaner", "father", 1);
  f.Event("cleaning", "cleaner", "mother", 2);
  f.Event("cleaning", "cleaner", "mother", 3);
  const auto table = DifferentiateActors(f.g);
  ASSERT_EQ(table.size(), 1u);
  EXPECT_EQ(table[0].events, 3);
  EXPECT_EQ(NameOf(f.g, table[0].most_probable), "mother");
  ASSERT_EQ(table[0].actors.size(), 2u);
  EXPECT_DOUBLE_EQ(table[0].actors[0].frequency, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(table[0].actors[1].frequency, 1.0 / 3.0);
}

TEST(DifferentiateActorsTest, TiesGoToEarliest) {
  Fixture f;
  f.Event("cleaning", "cleaner", "zed", 1);
  f.Event("cleaning", "cleaner", "amy", 2);
  EXPECT_EQ(NameOf(f.g, DifferentiateActors(f.g).at(0).most_probable), "zed");
  Fixture single;
  single.Event("cleaning", "cleaner", "amy", 2);
  EXPECT_DOUBLE_EQ(DifferentiateActors(single.g).at(0).actors.at(0).frequency, 1.0);
}

TEST(DifferentiateActorsTest, MatchesCounting) {
  std::mt19937 rng(22);
  for (int round = 0; round < 50; ++round) {
    Fixture f;
    std::map<std::pair<std::string, std::string>, std::map<std::string, int64_t>> counts;
    for (int i = 0; i < 40; ++i) {
      const std::string app = testing::LetterName("app", Below(&rng, 3), 1);
      const std::string role = testing::LetterName("role", Below(&rng, 2), 1);
      const std::string actor = testing::LetterName("who", Below(&rng, 5), 1);
      f.Event(app, role, actor, i);
      ++counts[{app, role}][actor];
    }
    const auto table = DifferentiateActors(f.g);
    ASSERT_EQ(table.size(), counts.size());
    for (const RoleDifferentiation &row : table) {
      const auto &expected = counts.at({NameOf(f.g, row.appearance), row.role});
      int64_t total = 0;
      int64_t best = 0;
      for (const auto &[actor, n] : expected) {
        total += n;
        best = std::max(best, n);
      }
      ASSERT_EQ(row.events, total);
      ASSERT_EQ(row.actors.size(), expected.size());
      for (const ActorFrequency &a : row.actors) {
        const int64_t n = expected.at(NameOf(f.g, a.actor));
        ASSERT_EQ(a.count, n);
        ASSERT_DOUBLE_EQ(a.frequency, static_cast<double>(n) / total);
      }
      ASSERT_EQ(expected.at(NameOf(f.g, row.most_probable)), best);
    }
  }
}

// ---------------------------------------------------------------------------
// Appearance unification.

std::vector<std::string> Split(const std::string &text) {
  std::vector<std::string> out;
  std::string word;
  for (char c : text + " ") {
    if (c == ' ') {
      if (!word.empty()) out.push_back(word);
      word.clear();
    } else {
      word += c;
    }
  }
  return out;
}

TEST(AntiUnifyTest, Cleaners) {
  const auto g = AntiUnify({Split("john cleans window"), Split("mary cleans window")});
  EXPECT_EQ(RenderPattern(g.pattern), "$x cleans window");
  ASSERT_EQ(g.domains.size(), 1u);
  EXPECT_EQ(g.domains[0], (std::set<std::string>{"john", "mary"}));
}

TEST(AntiUnifyTest, IdenticalSequencesStayLiteral) {
  const auto g = AntiUnify({Split("a b c"), Split("a b c")});
  EXPECT_TRUE(g.domains.empty());
  EXPECT_EQ(RenderPattern(g.pattern), "a b c");
  EXPECT_THROW(AntiUnify({}), std::invalid_argument);
  EXPECT_THROW(AntiUnify({Split("a b"), Split("a")}), std::invalid_argument);
}

TEST(AntiUnifyTest, MatchesPositionwiseOracle) {
  std::mt19937 rng(23);
  for (int round = 0; round < 300; ++round) {
    const size_t length = 1 + Below(&rng, 5);
    std::vector<std::vector<std::string>> seqs(2 + Below(&rng, 3));
    for (auto &s : seqs) {
      for (size_t i = 0; i < length; ++i) s.push_back(std::string(1, 'a' + Below(&rng, 3)));
    }
    const auto g = AntiUnify(seqs);
    std::vector<std::set<std::string>> columns(length);
    for (const auto &s : seqs) {
      for (size_t i = 0; i < length; ++i) columns[i].insert(s[i]);
    }
    std::vector<std::set<std::string>> domains;
    std::string rendered;
    for (size_t i = 0; i < length; ++i) {
      if (i > 0) rendered += ' ';
      if (columns[i].size() == 1) {
        rendered += *columns[i].begin();
      } else {
        static const char *kNames[] = {"x", "y", "z"};
        rendered += "$" + (domains.size() < 3 ? std::string(kNames[domains.size()])
                                               : "x" + std::to_string(domains.size() + 1));
        domains.push_back(columns[i]);
      }
    }
    ASSERT_EQ(RenderPattern(g.pattern), rendered);
    ASSERT_EQ(g.domains, domains);
    // The generalization matches every input.
    for (const auto &s : seqs) {
      std::string text;
      for (const auto &w : s) text += w + " ";
      ASSERT_FALSE(MatchPattern(g.pattern, Tokenize(text)).empty()) << rendered << " / " << text;
    }
  }
}

TEST(UnifyAppearancesTest, AnyCleanerWillDo) {
  Graph g;
  EventExtractor extractor(
      &g, ParseDefinitions("There name cleaning patterns \"$cleaner cleans the "
                           "window\", has cleaner."));
  const char *who[] = {"mother", "father", "serviceman", "mother"};
  for (int i = 0; i < 4; ++i) {
    extractor.Extract({std::string(who[i]) + " cleans the window", "", i});
  }
  const auto found = UnifyAppearances(&g, 2);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(RenderPattern(found[0].generalization.pattern), "$x cleans the window");
  EXPECT_EQ(found[0].generalization.domains.at(0),
            (std::set<std::string>{"father", "mother", "serviceman"}));
  EXPECT_EQ(found[0].events.size(), 4u);
  const ThingId concrete = Named(g, ThingKind::kAppearance, "cleaning");
  EXPECT_TRUE(AppearancesOfEvent(g, found[0].events[0]).Contains(found[0].id));
  EXPECT_TRUE(g.Neighbors(concrete, EdgeKind::kIs, Direction::kOut).Contains(found[0].id));
  // Not enough support.
  Graph sparse;
  ExtractEvents(ParseDefinitions("There name cleaning patterns \"$cleaner cleans the window\", has cleaner."),
                {"mother cleans the window", "", 1}, &sparse);
  EXPECT_TRUE(UnifyAppearances(&sparse, 2).empty());
}

// ---------------------------------------------------------------------------
// Clustering, situations, chains, scenarios, forks.

TEST(ClusterEventsTest, Examples) {
  Fixture f;
  f.Event("red-light", "light", "red", 5);
  f.Event("car-crossing", "car", "sedan", 5);
  f.Event("car-crossing", "car", "van", 15);
  const auto coincidences = ClusterEvents(&f.g, 1);
  ASSERT_EQ(coincidences.size(), 2u);
  EXPECT_EQ(EventsOfCoincidence(f.g, coincidences[0]).size(), 2u);
  EXPECT_EQ(*f.g.Times(coincidences[1]), TimeSpec::Point(15));
}

TEST(ClusterEventsTest, MatchesComponentOracle) {
  std::mt19937 rng(31);
  for (int i = 0; i < 300; ++i) ASSERT_EQ(testing::CheckClusterEvents(&rng), "") << i;
}

TEST(UnifySituationsTest, RecurringTriple) {
  Fixture f;
  std::vector<ThingId> coincidences;
  for (int k = 0; k < 5; ++k) {
    const Tick t = 10 * k;
    f.Event("window-cleaned", "who", "mother", t);
    f.Event("parent-busy", "who", "father", t);
    f.Event("no-games", "who", "kid", t);
    if (k % 2 == 0) f.Event("raining", "who", "sky", t);
  }
  coincidences = ClusterEvents(&f.g, 1);
  ASSERT_EQ(coincidences.size(), 5u);
  std::set<std::string> names;
  for (ThingId s : UnifySituations(&f.g, coincidences, 2)) names.insert(NameOf(f.g, s));
  EXPECT_EQ(names, (std::set<std::string>{
                       "no-games & parent-busy & window-cleaned",
                       "no-games & parent-busy & raining & window-cleaned"}));
  const ThingId triple = Named(f.g, ThingKind::kSituation, "no-games & parent-busy & window-cleaned");
  EXPECT_EQ(CoincidencesOfSituation(f.g, triple).size(), 5u);
}

TEST(UnifySituationsTest, DistinctCoincidencesGiveNothing) {
  Fixture f;
  f.Event("a", "who", "x", 1);
  f.Event("b", "who", "x", 10);
  EXPECT_TRUE(UnifySituations(&f.g, ClusterEvents(&f.g, 1), 2).empty());
}

TEST(UnifySituationsTest, MatchesPowersetOracle) {
  std::mt19937 rng(32);
  for (int i = 0; i < 300; ++i) ASSERT_EQ(testing::CheckUnifySituations(&rng), "") << i;
}

TEST(ChainCoincidencesTest, WindowCleaningProcess) {
  Fixture f;
  f.Event("dirty-window", "who", "john", 1);
  f.Event("cleaning", "who", "john", 2);
  f.Event("clean-window", "who", "john", 3);
  f.Event("cleaning", "who", "mary", 20);
  f.Event("clean-window", "who", "bob", 21);
  const auto processes = ChainCoincidences(&f.g, ClusterEvents(&f.g, 1), MiningConfig{});
  ASSERT_EQ(processes.size(), 1u);
  EXPECT_EQ(CoincidencesOfProcess(f.g, processes[0]).size(), 3u);
  EXPECT_EQ(TimespanOf(f.g, processes[0]), TimeSpec::Range(1, 3));
}

TEST(ChainCoincidencesTest, MatchesPathOracle) {
  std::mt19937 rng(33);
  for (int i = 0; i < 300; ++i) ASSERT_EQ(testing::CheckChainCoincidences(&rng), "") << i;
}

TEST(ChainCoincidencesTest, PathLimit) {
  // A layered DAG with 2^12 source-to-sink paths.
  std::vector<ChainStep> steps;
  for (Tick t = 0; t < 12; ++t) {
    steps.push_back({TimeSpec::Point(t), {1}});
    steps.push_back({TimeSpec::Point(t), {1}});
  }
  EXPECT_EQ(MaximalChains(steps, MiningConfig{}).size(), 4096u);
  EXPECT_THROW(MaximalChains(steps, MiningConfig{}, 100), MiningError);
}

TEST(ScenarioModelTest, WindowCleaningScenario) {
  const std::vector<std::vector<int64_t>> sequences(10, {7, 8, 9});
  const ScenarioModel model = ScenarioModel::Build(sequences);
  const auto closed = model.ClosedFrequent(2);
  ASSERT_EQ(closed.size(), 1u);
  EXPECT_EQ(model.Prefix(closed[0]), (std::vector<int64_t>{7, 8, 9}));
  EXPECT_EQ(model.nodes[closed[0]].count, 10);
  EXPECT_TRUE(ScenarioModel::Build({{7, 8}}).ClosedFrequent(2).empty());
}

TEST(UnifyScenariosTest, MatchesPrefixOracle) {
  std::mt19937 rng(34);
  for (int i = 0; i < 300; ++i) ASSERT_EQ(testing::CheckUnifyScenarios(&rng), "") << i;
}

TEST(DetectForksTest, Examples) {
  std::vector<std::vector<int64_t>> even;
  for (int i = 0; i < 10; ++i) even.push_back({1, i % 2 == 0 ? 2 : 3});
  const auto forks = DetectForks(ScenarioModel::Build(even), 0.2, 2);
  ASSERT_EQ(forks.size(), 1u);
  EXPECT_EQ(forks[0].prefix, (std::vector<int64_t>{1}));
  ASSERT_EQ(forks[0].branches.size(), 2u);
  EXPECT_DOUBLE_EQ(forks[0].branches[0].probability, 0.5);
  std::vector<std::vector<int64_t>> skewed;
  for (int i = 0; i < 10; ++i) skewed.push_back({1, i == 0 ? 2 : 3});
  EXPECT_TRUE(DetectForks(ScenarioModel::Build(skewed), 0.2, 1).empty());
}

TEST(DetectForksTest, MatchesNodeScan) {
  std::mt19937 rng(35);
  for (int i = 0; i < 300; ++i) ASSERT_EQ(testing::CheckDetectForks(&rng), "") << i;
}

// ---------------------------------------------------------------------------
// Triggers and the pipeline.

struct Observed {
  double base = 0;
  double shifted = 0;
};

// Injury rate overall and among processes that entered on red, read
// straight from the extracted events.
Observed CountInjuries(const Graph &g) {
  std::map<Tick, std::pair<bool, bool>> processes;  // entered, injured
  for (const ThingNode &n : g.things()) {
    if (n.kind != ThingKind::kEvent) continue;
    const Tick k = g.Times(n.id)->start() / 10;
    const auto apps = AppearancesOfEvent(g, n.id);
    auto &p = processes[k];
    if (apps.Contains(Named(g, ThingKind::kAppearance, "enter-on-red"))) p.first = true;
    if (apps.Contains(Named(g, ThingKind::kAppearance, "injury"))) p.second = true;
  }
  int64_t injured = 0, entered = 0, entered_injured = 0;
  for (const auto &[k, p] : processes) {
    injured += p.second;
    entered += p.first;
    entered_injured += p.first && p.second;
  }
  return {static_cast<double>(injured) / processes.size(),
          static_cast<double>(entered_injured) / entered};
}

TEST(TriggersTest, EnterOnRedMatchesCounting) {
  for (uint32_t seed = 1; seed <= 5; ++seed) {
    Graph g = testing::ExtractCorpus(testing::CrosswalkCorpus(seed, 60, nullptr));
    const MiningReport report = RunPipeline(&g, MiningConfig{});
    ASSERT_EQ(report.forks.size(), 1u) << seed;
    ASSERT_FALSE(report.triggers.empty()) << seed;
    const Observed truth = CountInjuries(g);
    const Trigger &top = report.triggers.front();
    EXPECT_EQ(NameOf(g, top.thing), "enter-on-red") << seed;
    EXPECT_NEAR(top.score, std::abs(truth.shifted - truth.base), 1e-9) << seed;
    size_t injury = 0;
    for (size_t b = 0; b < report.forks[0].branches.size(); ++b) {
      if (NameOf(g, ThingId{report.forks[0].branches[b].situation}) == "injury") injury = b;
    }
    EXPECT_NEAR(top.base[injury], truth.base, 1e-9);
    EXPECT_NEAR(top.shifted[injury], truth.shifted, 1e-9);
  }
}

TEST(PipelineTest, EmptyGraph) {
  Graph g;
  const MiningReport report = RunPipeline(&g, MiningConfig{});
  EXPECT_EQ(report.nodes_created, 0);
  EXPECT_EQ(g.size(), 0u);
  EXPECT_TRUE(report.forks.empty());
  EXPECT_EQ(report.stages.size(), 9u);
  EXPECT_EQ(ReportJson(g, report),
            "{\"stages\":{\"scope_roles\":0,\"differentiate_actors\":0,"
            "\"unify_appearances\":0,\"cluster_events\":0,\"unify_situations\":0,"
            "\"chain_coincidences\":0,\"unify_scenarios\":0,\"detect_forks\":0,"
            "\"differentiate_triggers\":0},\"roles\":[],\"scenarios\":[],"
            "\"forks\":[],\"triggers\":[]}");
}

TEST(PipelineTest, InvalidConfigNamesStage) {
  Graph g;
  MiningConfig config;
  config.min_support = 0;
  try {
    RunPipeline(&g, config);
    FAIL();
  } catch (const MiningError &e) {
    EXPECT_EQ(e.stage(), "config");
  }
}

TEST(PipelineTest, IdempotentAndConsistent) {
  Graph g = testing::ExtractCorpus(testing::CrosswalkCorpus(9, 80, nullptr));
  const MiningConfig config;
  const MiningReport first = RunPipeline(&g, config);
  EXPECT_GT(first.nodes_created, 0);
  const size_t size = g.size();
  const size_t edges = g.edges().size();
  const MiningReport second = RunPipeline(&g, config);
  EXPECT_EQ(second.nodes_created, 0);
  EXPECT_EQ(g.size(), size);
  EXPECT_EQ(g.edges().size(), edges);
  EXPECT_EQ(ReportJson(g, first), ReportJson(g, second));

  for (const ThingNode &n : g.things()) {
    if (n.kind == ThingKind::kCoincidence) {
      const auto events = EventsOfCoincidence(g, n.id).ids();
      for (ThingId a : events) {
        for (ThingId b : events) {
          EXPECT_LT(g.Times(a)->Distance(*g.Times(b)), std::max<Tick>(config.coincidence_window, 1));
        }
      }
    }
    if (n.kind == ThingKind::kProcess) {
      const auto steps = g.OrderedMembers(n.id);
      for (size_t i = 1; i < steps.size(); ++i) {
        EXPECT_GT(g.Times(steps[i])->start(), g.Times(steps[i - 1])->start());
      }
    }
    if (n.kind == ThingKind::kScenario) {
      const auto processes = ProcessesOfScenario(g, n.id);
      EXPECT_GE(static_cast<int64_t>(processes.size()), config.min_support);
      EXPECT_EQ(std::get<Tick>(n.properties.at("support")),
                static_cast<Tick>(processes.size()));
    }
  }
}

}  // namespace
}  // namespace scenarist

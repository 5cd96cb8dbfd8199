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

#ifndef SCENARIST_MINING_H_
#define SCENARIST_MINING_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "scenarist/graph.h"
#include "scenarist/pattern.h"

namespace scenarist {

struct MiningConfig {
  // Events at distance below the window (in ticks) coincide. Intersecting
  // TimeSpecs always coincide, so 0 and 1 behave the same.
  Tick coincidence_window = 1;
  Tick chain_max_gap = 1;
  bool chain_requires_shared_actor = true;
  int64_t min_support = 2;
  double fork_epsilon = 0.2;
  double trigger_min_shift = 0.2;

  // Throws std::invalid_argument naming the offending field.
  void Validate() const;
};

// Key property under which mined nodes are found again on later runs.
inline constexpr const char *kKeyProperty = "key";
// Rendered pattern of an abstract appearance.
inline constexpr const char *kPatternProperty = "pattern";

// ---------------------------------------------------------------------------
// Role scoping and actor differentiation.

struct RoleDomain {
  ThingId appearance;
  std::string role;
  ThingId any_set;
  std::vector<ThingId> actors;
};

// For every concrete appearance and role bound by its events, an any-set of
// the distinct actors seen, linked from the appearance by Domain(role).
std::vector<RoleDomain> ScopeRoles(Graph *graph);

struct ActorFrequency {
  ThingId actor;
  int64_t count = 0;
  double frequency = 0;
};

struct RoleDifferentiation {
  ThingId appearance;
  std::string role;
  // Events of the appearance with the role filled.
  int64_t events = 0;
  // Ordered by count descending, then first occurrence, then name.
  std::vector<ActorFrequency> actors;
  ThingId most_probable;
};

std::vector<RoleDifferentiation> DifferentiateActors(const Graph &graph);

// ---------------------------------------------------------------------------
// Appearance unification.

struct Generalization {
  // Seq of literals and variables x, y, z, x4, x5, ...; a single element
  // is returned bare.
  Pattern pattern;
  // Observed tokens per variable, in variable order.
  std::vector<std::set<std::string>> domains;
};

// Least general pattern covering equal-length token sequences.
// Throws std::invalid_argument on an empty input or unequal lengths.
Generalization AntiUnify(const std::vector<std::vector<std::string>> &sequences);

// Groups token sequences of equal length that agree on at least half of
// their positions (and at least one), closing transitively. Returns index
// groups, each sorted, ordered by first index.
std::vector<std::vector<size_t>> GroupSequences(
    const std::vector<std::vector<std::string>> &sequences);

struct AbstractAppearance {
  ThingId id;
  Generalization generalization;
  std::vector<ThingId> events;
};

// Anti-unifies event texts and materializes generalizations with at least
// one literal and one variable position covering >= min_support events.
std::vector<AbstractAppearance> UnifyAppearances(Graph *graph,
                                                 int64_t min_support);

// ---------------------------------------------------------------------------
// Event clustering.

// Partition of indices into connected components of the coincidence
// relation. Groups are sorted and ordered by (earliest tick, first index).
std::vector<std::vector<size_t>> ClusterTimes(const std::vector<TimeSpec> &times,
                                              Tick window);

// Coincidence nodes over all events, ordered by start tick then id.
std::vector<ThingId> ClusterEvents(Graph *graph, Tick window);

// ---------------------------------------------------------------------------
// Situation unification.

struct Itemset {
  std::vector<int64_t> items;  // sorted
  int64_t support = 0;

  bool operator==(const Itemset &) const = default;
};

// Closed itemsets with support >= min_support, ordered by items.
std::vector<Itemset> ClosedItemsets(
    const std::vector<std::vector<int64_t>> &transactions, int64_t min_support);

// Appearances directly instantiated by the coincidence's events.
std::vector<int64_t> CoincidenceItems(const Graph &graph, ThingId coincidence);

// Situation nodes for the closed frequent itemsets of `coincidences`.
std::vector<ThingId> UnifySituations(Graph *graph,
                                     const std::vector<ThingId> &coincidences,
                                     int64_t min_support);

// ---------------------------------------------------------------------------
// Coincidence chaining.

struct ChainStep {
  TimeSpec times;
  std::set<int64_t> actors;
};

// Maximal paths with >= 2 steps through the DAG where a -> b iff
// start(b) > start(a), start(b) - end(a) <= max_gap and, if required, they
// share an actor. Paths are index sequences ordered lexicographically.
// Throws MiningError past `limit` paths.
std::vector<std::vector<size_t>> MaximalChains(const std::vector<ChainStep> &steps,
                                               const MiningConfig &config,
                                               size_t limit = 1000000);

// Process nodes with Member(seq) edges to coincidences.
std::vector<ThingId> ChainCoincidences(Graph *graph,
                                       const std::vector<ThingId> &coincidences,
                                       const MiningConfig &config);

// ---------------------------------------------------------------------------
// Scenario unification.

struct ScenarioNode {
  int64_t situation = -1;  // -1 at the root
  int64_t count = 0;
  int64_t parent = -1;
  int64_t depth = 0;
  // Children ordered by situation id.
  std::vector<int64_t> children;
  // Sequences passing through the node.
  std::vector<size_t> sequences;
};

struct ScenarioModel {
  // nodes[0] is the root.
  std::vector<ScenarioNode> nodes;
  // Lifted situation sequence and process id per input process.
  std::vector<std::vector<int64_t>> sequences;
  std::vector<ThingId> processes;
  // Situations lifting draws from.
  std::set<int64_t> situations;
  // (model node, scenario node) for closed frequent prefixes, in preorder.
  std::vector<std::pair<int64_t, ThingId>> scenarios;

  static ScenarioModel Build(const std::vector<std::vector<int64_t>> &sequences);

  std::vector<int64_t> Prefix(int64_t node) const;
  double BranchProbability(int64_t child) const;
  // Node indices, parents before children, siblings by situation id.
  std::vector<int64_t> Preorder() const;
  // Nodes other than the root with count >= min_support and no child of
  // equal count.
  std::vector<int64_t> ClosedFrequent(int64_t min_support) const;
};

// Situation a coincidence lifts to among `situations`: highest support,
// then largest itemset, then smallest id. -1 if none.
int64_t LiftCoincidence(const Graph &graph, ThingId coincidence,
                        const std::set<int64_t> &situations);

ScenarioModel UnifyScenarios(Graph *graph, const std::vector<ThingId> &processes,
                             const std::vector<ThingId> &situations,
                             int64_t min_support);

// ---------------------------------------------------------------------------
// Forks and triggers.

struct Branch {
  int64_t node = 0;
  int64_t situation = 0;
  double probability = 0;
};

struct Fork {
  int64_t node = 0;
  std::vector<int64_t> prefix;
  std::vector<Branch> branches;
};

// Nodes with >= 2 children of count >= min_support whose probabilities,
// renormalized over those children, span at most epsilon.
std::vector<Fork> DetectForks(const ScenarioModel &model, double epsilon,
                              int64_t min_support);

struct Trigger {
  size_t fork = 0;
  ThingId thing;
  double score = 0;
  std::vector<double> base;
  std::vector<double> shifted;
  int64_t support = 0;
};

std::vector<Trigger> DifferentiateTriggers(const Graph &graph,
                                           const ScenarioModel &model,
                                           const std::vector<Fork> &forks,
                                           const MiningConfig &config);

// ---------------------------------------------------------------------------
// Pipeline.

struct MiningReport {
  std::vector<std::pair<std::string, int64_t>> stages;
  std::vector<RoleDifferentiation> roles;
  ScenarioModel model;
  std::vector<Fork> forks;
  std::vector<Trigger> triggers;
  // Nodes added to the graph by this run.
  int64_t nodes_created = 0;
};

// Runs the nine stages in order. Throws MiningError naming the stage.
MiningReport RunPipeline(Graph *graph, const MiningConfig &config);

// Report as compact JSON; things are referred to by name.
std::string ReportJson(const Graph &graph, const MiningReport &report);

}  // namespace scenarist

#endif  // SCENARIST_MINING_H_

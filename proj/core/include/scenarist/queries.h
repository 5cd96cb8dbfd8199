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

#ifndef SCENARIST_QUERIES_H_
#define SCENARIST_QUERIES_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "scenarist/graph.h"

namespace scenarist {

// Optional narrowing of a query. Unset fields do not filter.
struct QueryScope {
  std::optional<std::string> role;
  std::optional<TimeSpec> time;
  std::optional<int64_t> order;
};

struct QueryOptions {
  // Weight multiplier per extra Is hop when following inheritance chains.
  // 1 keeps every ancestor crisp.
  double is_attenuation = 1.0;
};

// Functional sets over the graph. Every function takes the thing whose
// relations are queried and returns the related things with weights; crisp
// facts have weight 1. An argument of the wrong kind yields an empty set and
// an unknown id throws GraphError. Listed pairs are inverse to each other:
// y in F(x) exactly when x in G(y), under equal scopes.

// Actors linked to the role by Is, or bound under the role's name by an
// event's Has edge.
WeightedSet ActorsOfRole(const Graph &graph, ThingId role);
WeightedSet RolesOfActor(const Graph &graph, ThingId actor);

// Has edges from appearances to role nodes.
WeightedSet RolesOfAppearance(const Graph &graph, ThingId appearance);
WeightedSet AppearancesOfRole(const Graph &graph, ThingId role);

// Transitive Is chains between events and appearances.
WeightedSet AppearancesOfEvent(const Graph &graph, ThingId event,
                               const QueryOptions &options = {});
WeightedSet EventsOfAppearance(const Graph &graph, ThingId appearance,
                               const QueryOptions &options = {});

// Events whose times intersect `time`, optionally only members of
// `coincidence`.
WeightedSet EventsAt(const Graph &graph, const TimeSpec &time,
                     std::optional<ThingId> coincidence = std::nullopt);
WeightedSet AppearancesAt(const Graph &graph, const TimeSpec &time,
                          const QueryOptions &options = {});

// Has edges from events to actors. scope.role selects the role label and
// scope.time requires the event to intersect it.
WeightedSet ActorsOfEvent(const Graph &graph, ThingId event,
                          const QueryScope &scope = {});
WeightedSet EventsOfActor(const Graph &graph, ThingId actor,
                          const QueryScope &scope = {});

// Member(and) edges from situations to appearances.
WeightedSet SituationsOfAppearance(const Graph &graph, ThingId appearance);
WeightedSet AppearancesOfSituation(const Graph &graph, ThingId situation);

// Is edges from coincidences to the situations generalizing them.
WeightedSet SituationsOfCoincidence(const Graph &graph, ThingId coincidence);
WeightedSet CoincidencesOfSituation(const Graph &graph, ThingId situation);

// Member(and) edges from coincidences to events.
WeightedSet CoincidencesOfEvent(const Graph &graph, ThingId event);
WeightedSet EventsOfCoincidence(const Graph &graph, ThingId coincidence);

// Coincidences whose times intersect `time`, optionally only those
// containing `event`.
WeightedSet CoincidencesAt(const Graph &graph, const TimeSpec &time,
                           std::optional<ThingId> event = std::nullopt);

// Member(seq) edges from scenarios to situations; `order` selects one
// position.
WeightedSet ScenariosOfSituation(const Graph &graph, ThingId situation,
                                 std::optional<int64_t> order = std::nullopt);
WeightedSet SituationsOfScenario(const Graph &graph, ThingId scenario,
                                 std::optional<int64_t> order = std::nullopt);

// Is edges from processes to scenarios.
WeightedSet ProcessesOfScenario(const Graph &graph, ThingId scenario);
WeightedSet ScenariosOfProcess(const Graph &graph, ThingId process);

// Processes whose timespan intersects `time`.
WeightedSet ProcessesAt(const Graph &graph, const TimeSpec &time);

// Member(seq) edges from processes to coincidences; `time` keeps only
// coincidences that intersect it.
WeightedSet ProcessesOfCoincidence(
    const Graph &graph, ThingId coincidence,
    const std::optional<TimeSpec> &time = std::nullopt);
WeightedSet CoincidencesOfProcess(
    const Graph &graph, ThingId process,
    const std::optional<TimeSpec> &time = std::nullopt);

// Times of an event or coincidence, the union over an actor's events, or
// the union over a process's coincidences. Throws DomainError for other
// kinds.
TimeSpec TimespanOf(const Graph &graph, ThingId thing);

// Named entry point used by the command line front end.
struct QueryParam {
  enum class Type { kThing, kTime };
  Type type = Type::kThing;
  // Kind used to resolve a thing given by name.
  ThingKind kind = ThingKind::kGeneric;
  bool optional = false;
};

struct QueryArgs {
  std::vector<std::optional<ThingId>> things;
  std::vector<std::optional<TimeSpec>> times;
  QueryScope scope;
  QueryOptions options;
};

struct QueryFunction {
  std::string name;
  std::vector<QueryParam> params;
  // Scope fields the function honours.
  bool uses_role = false;
  bool uses_time = false;
  bool uses_order = false;
  std::function<WeightedSet(const Graph &, const QueryArgs &)> run;
};

// Every weighted-set query by snake_case name, in a fixed order.
// timespan_of is separate because it returns a TimeSpec.
const std::vector<QueryFunction> &QueryInventory();
const QueryFunction *FindQuery(const std::string &name);

}  // namespace scenarist

#endif  // SCENARIST_QUERIES_H_

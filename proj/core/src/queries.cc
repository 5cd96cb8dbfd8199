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

#include "scenarist/queries.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "scenarist/errors.h"

namespace scenarist {
namespace {

bool IsKind(const Graph &graph, ThingId id, ThingKind kind) {
  return graph.Thing(id).kind == kind;
}

// Endpoints of `id`'s edges matching `accept`, restricted to things of
// `other_kind`, provided `id` itself is of `own_kind`.
template <typename Accept>
WeightedSet Related(const Graph &graph, ThingId id, ThingKind own_kind,
                    ThingKind other_kind, Direction direction,
                    Accept accept) {
  WeightedSet out;
  if (!IsKind(graph, id, own_kind)) return out;
  std::vector<std::pair<int64_t, ThingId>> found;
  for (size_t index : graph.EdgesOf(id, direction)) {
    const Edge &edge = graph.edges()[index];
    if (!accept(edge)) continue;
    const ThingId other = direction == Direction::kOut ? edge.to : edge.from;
    if (!IsKind(graph, other, other_kind)) continue;
    found.emplace_back(edge.order.value_or(-1), other);
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const auto &a, const auto &b) { return a.first < b.first; });
  for (const auto &[order, other] : found) out.Insert(other, 1.0);
  return out;
}

auto OfKind(EdgeKind kind) {
  return [kind](const Edge &edge) { return edge.kind == kind; };
}

auto MemberOf(SetKind set_kind, std::optional<int64_t> order = std::nullopt) {
  return [set_kind, order](const Edge &edge) {
    return edge.kind == EdgeKind::kMember && edge.set_kind == set_kind &&
           (!order || edge.order == order);
  };
}

bool TimesIntersect(const Graph &graph, ThingId id, const TimeSpec &time) {
  const TimeSpec *times = graph.Times(id);
  return times != nullptr && times->Intersects(time);
}

// Breadth-first walk along Is edges; things of `kind` at hop distance d get
// weight attenuation^(d-1).
WeightedSet IsClosure(const Graph &graph, ThingId start, ThingKind own_kind,
                      ThingKind kind, Direction direction,
                      const QueryOptions &options) {
  WeightedSet out;
  if (!IsKind(graph, start, own_kind)) return out;
  std::unordered_map<int64_t, int> depth = {{start.value, 0}};
  std::deque<ThingId> queue = {start};
  while (!queue.empty()) {
    const ThingId current = queue.front();
    queue.pop_front();
    const int d = depth[current.value];
    for (size_t index : graph.EdgesOf(current, direction)) {
      const Edge &edge = graph.edges()[index];
      if (edge.kind != EdgeKind::kIs) continue;
      const ThingId next = direction == Direction::kOut ? edge.to : edge.from;
      if (!depth.emplace(next.value, d + 1).second) continue;
      queue.push_back(next);
      if (IsKind(graph, next, kind)) {
        out.Insert(next, std::pow(options.is_attenuation, d));
      }
    }
  }
  return out;
}

std::vector<ThingId> RolesNamed(const Graph &graph, const std::string &name) {
  std::vector<ThingId> out;
  for (const ThingNode &node : graph.things()) {
    if (node.kind == ThingKind::kRole && node.name == name) out.push_back(node.id);
  }
  return out;
}

WeightedSet ThingsOfKind(const Graph &graph, ThingKind kind,
                         const std::function<bool(ThingId)> &keep) {
  WeightedSet out;
  for (const ThingNode &node : graph.things()) {
    if (node.kind == kind && keep(node.id)) out.Insert(node.id, 1.0);
  }
  return out;
}

}  // namespace

WeightedSet ActorsOfRole(const Graph &graph, ThingId role) {
  WeightedSet out = Related(graph, role, ThingKind::kRole, ThingKind::kActor,
                            Direction::kIn, OfKind(EdgeKind::kIs));
  const ThingNode &node = graph.Thing(role);
  if (node.kind != ThingKind::kRole || !node.name) return out;
  std::vector<ThingId> found;
  for (const Edge &edge : graph.edges()) {
    if (edge.kind == EdgeKind::kHas && edge.role == *node.name &&
        IsKind(graph, edge.from, ThingKind::kEvent) &&
        IsKind(graph, edge.to, ThingKind::kActor)) {
      found.push_back(edge.to);
    }
  }
  std::sort(found.begin(), found.end());
  for (ThingId actor : found) out.Insert(actor, 1.0);
  return out;
}

WeightedSet RolesOfActor(const Graph &graph, ThingId actor) {
  WeightedSet out = Related(graph, actor, ThingKind::kActor, ThingKind::kRole,
                            Direction::kOut, OfKind(EdgeKind::kIs));
  if (!IsKind(graph, actor, ThingKind::kActor)) return out;
  std::vector<ThingId> found;
  for (size_t index : graph.EdgesOf(actor, Direction::kIn)) {
    const Edge &edge = graph.edges()[index];
    if (edge.kind != EdgeKind::kHas ||
        !IsKind(graph, edge.from, ThingKind::kEvent)) {
      continue;
    }
    for (ThingId role : RolesNamed(graph, edge.role)) found.push_back(role);
  }
  std::sort(found.begin(), found.end());
  for (ThingId role : found) out.Insert(role, 1.0);
  return out;
}

WeightedSet RolesOfAppearance(const Graph &graph, ThingId appearance) {
  return Related(graph, appearance, ThingKind::kAppearance, ThingKind::kRole,
                 Direction::kOut, OfKind(EdgeKind::kHas));
}

WeightedSet AppearancesOfRole(const Graph &graph, ThingId role) {
  return Related(graph, role, ThingKind::kRole, ThingKind::kAppearance,
                 Direction::kIn, OfKind(EdgeKind::kHas));
}

WeightedSet AppearancesOfEvent(const Graph &graph, ThingId event,
                               const QueryOptions &options) {
  return IsClosure(graph, event, ThingKind::kEvent, ThingKind::kAppearance,
                   Direction::kOut, options);
}

WeightedSet EventsOfAppearance(const Graph &graph, ThingId appearance,
                               const QueryOptions &options) {
  return IsClosure(graph, appearance, ThingKind::kAppearance,
                   ThingKind::kEvent, Direction::kIn, options);
}

WeightedSet EventsAt(const Graph &graph, const TimeSpec &time,
                     std::optional<ThingId> coincidence) {
  std::optional<WeightedSet> members;
  if (coincidence) members = EventsOfCoincidence(graph, *coincidence);
  return ThingsOfKind(graph, ThingKind::kEvent, [&](ThingId id) {
    return TimesIntersect(graph, id, time) &&
           (!members || members->Contains(id));
  });
}

WeightedSet AppearancesAt(const Graph &graph, const TimeSpec &time,
                          const QueryOptions &options) {
  WeightedSet out;
  for (const auto &member : EventsAt(graph, time)) {
    out = WeightedSet::Union(out, AppearancesOfEvent(graph, member.id, options));
  }
  return out;
}

WeightedSet ActorsOfEvent(const Graph &graph, ThingId event,
                          const QueryScope &scope) {
  if (scope.time && IsKind(graph, event, ThingKind::kEvent) &&
      !TimesIntersect(graph, event, *scope.time)) {
    return {};
  }
  return Related(graph, event, ThingKind::kEvent, ThingKind::kActor,
                 Direction::kOut, [&](const Edge &edge) {
                   return edge.kind == EdgeKind::kHas &&
                          (!scope.role || edge.role == *scope.role);
                 });
}

WeightedSet EventsOfActor(const Graph &graph, ThingId actor,
                          const QueryScope &scope) {
  return Related(graph, actor, ThingKind::kActor, ThingKind::kEvent,
                 Direction::kIn, [&](const Edge &edge) {
                   return edge.kind == EdgeKind::kHas &&
                          (!scope.role || edge.role == *scope.role) &&
                          (!scope.time ||
                           TimesIntersect(graph, edge.from, *scope.time));
                 });
}

WeightedSet SituationsOfAppearance(const Graph &graph, ThingId appearance) {
  return Related(graph, appearance, ThingKind::kAppearance,
                 ThingKind::kSituation, Direction::kIn,
                 MemberOf(SetKind::kAnd));
}

WeightedSet AppearancesOfSituation(const Graph &graph, ThingId situation) {
  return Related(graph, situation, ThingKind::kSituation,
                 ThingKind::kAppearance, Direction::kOut,
                 MemberOf(SetKind::kAnd));
}

WeightedSet SituationsOfCoincidence(const Graph &graph, ThingId coincidence) {
  return Related(graph, coincidence, ThingKind::kCoincidence,
                 ThingKind::kSituation, Direction::kOut, OfKind(EdgeKind::kIs));
}

WeightedSet CoincidencesOfSituation(const Graph &graph, ThingId situation) {
  return Related(graph, situation, ThingKind::kSituation,
                 ThingKind::kCoincidence, Direction::kIn,
                 OfKind(EdgeKind::kIs));
}

WeightedSet CoincidencesOfEvent(const Graph &graph, ThingId event) {
  return Related(graph, event, ThingKind::kEvent, ThingKind::kCoincidence,
                 Direction::kIn, MemberOf(SetKind::kAnd));
}

WeightedSet EventsOfCoincidence(const Graph &graph, ThingId coincidence) {
  return Related(graph, coincidence, ThingKind::kCoincidence,
                 ThingKind::kEvent, Direction::kOut, MemberOf(SetKind::kAnd));
}

WeightedSet CoincidencesAt(const Graph &graph, const TimeSpec &time,
                           std::optional<ThingId> event) {
  std::optional<WeightedSet> containing;
  if (event) containing = CoincidencesOfEvent(graph, *event);
  return ThingsOfKind(graph, ThingKind::kCoincidence, [&](ThingId id) {
    return TimesIntersect(graph, id, time) &&
           (!containing || containing->Contains(id));
  });
}

WeightedSet ScenariosOfSituation(const Graph &graph, ThingId situation,
                                 std::optional<int64_t> order) {
  return Related(graph, situation, ThingKind::kSituation,
                 ThingKind::kScenario, Direction::kIn,
                 MemberOf(SetKind::kSeq, order));
}

WeightedSet SituationsOfScenario(const Graph &graph, ThingId scenario,
                                 std::optional<int64_t> order) {
  return Related(graph, scenario, ThingKind::kScenario, ThingKind::kSituation,
                 Direction::kOut, MemberOf(SetKind::kSeq, order));
}

WeightedSet ProcessesOfScenario(const Graph &graph, ThingId scenario) {
  return Related(graph, scenario, ThingKind::kScenario, ThingKind::kProcess,
                 Direction::kIn, OfKind(EdgeKind::kIs));
}

WeightedSet ScenariosOfProcess(const Graph &graph, ThingId process) {
  return Related(graph, process, ThingKind::kProcess, ThingKind::kScenario,
                 Direction::kOut, OfKind(EdgeKind::kIs));
}

WeightedSet ProcessesAt(const Graph &graph, const TimeSpec &time) {
  return ThingsOfKind(graph, ThingKind::kProcess, [&](ThingId id) {
    return TimespanOf(graph, id).Intersects(time);
  });
}

WeightedSet ProcessesOfCoincidence(const Graph &graph, ThingId coincidence,
                                   const std::optional<TimeSpec> &time) {
  if (time && IsKind(graph, coincidence, ThingKind::kCoincidence) &&
      !TimesIntersect(graph, coincidence, *time)) {
    return {};
  }
  return Related(graph, coincidence, ThingKind::kCoincidence,
                 ThingKind::kProcess, Direction::kIn,
                 MemberOf(SetKind::kSeq));
}

WeightedSet CoincidencesOfProcess(const Graph &graph, ThingId process,
                                  const std::optional<TimeSpec> &time) {
  return Related(graph, process, ThingKind::kProcess, ThingKind::kCoincidence,
                 Direction::kOut, [&](const Edge &edge) {
                   return MemberOf(SetKind::kSeq)(edge) &&
                          (!time || TimesIntersect(graph, edge.to, *time));
                 });
}

TimeSpec TimespanOf(const Graph &graph, ThingId thing) {
  const ThingNode &node = graph.Thing(thing);
  TimeSpec out;
  switch (node.kind) {
    case ThingKind::kEvent:
    case ThingKind::kCoincidence:
      if (const TimeSpec *times = graph.Times(thing)) out = *times;
      return out;
    case ThingKind::kActor:
      for (const auto &member : EventsOfActor(graph, thing)) {
        if (const TimeSpec *times = graph.Times(member.id)) out.Add(*times);
      }
      return out;
    case ThingKind::kProcess:
      for (const auto &member : CoincidencesOfProcess(graph, thing)) {
        if (const TimeSpec *times = graph.Times(member.id)) out.Add(*times);
      }
      return out;
    default:
      throw DomainError(std::string(ThingKindName(node.kind)) +
                        " has no temporal extent");
  }
}

const std::vector<QueryFunction> &QueryInventory() {
  using T = QueryParam::Type;
  auto thing = [](ThingKind kind, bool optional = false) {
    return QueryParam{T::kThing, kind, optional};
  };
  const QueryParam time{T::kTime, ThingKind::kGeneric, false};
  static const std::vector<QueryFunction> kInventory = {
      {"actors_of_role", {thing(ThingKind::kRole)}, false, false, false,
       [](const Graph &g, const QueryArgs &a) {
         return ActorsOfRole(g, *a.things[0]);
       }},
      {"roles_of_actor", {thing(ThingKind::kActor)}, false, false, false,
       [](const Graph &g, const QueryArgs &a) {
         return RolesOfActor(g, *a.things[0]);
       }},
      {"roles_of_appearance", {thing(ThingKind::kAppearance)}, false, false,
       false,
       [](const Graph &g, const QueryArgs &a) {
         return RolesOfAppearance(g, *a.things[0]);
       }},
      {"appearances_of_role", {thing(ThingKind::kRole)}, false, false, false,
       [](const Graph &g, const QueryArgs &a) {
         return AppearancesOfRole(g, *a.things[0]);
       }},
      {"appearances_of_event", {thing(ThingKind::kEvent)}, false, false, false,
       [](const Graph &g, const QueryArgs &a) {
         return AppearancesOfEvent(g, *a.things[0], a.options);
       }},
      {"events_of_appearance", {thing(ThingKind::kAppearance)}, false, false,
       false,
       [](const Graph &g, const QueryArgs &a) {
         return EventsOfAppearance(g, *a.things[0], a.options);
       }},
      {"events_at", {time, thing(ThingKind::kCoincidence, true)}, false, false,
       false,
       [](const Graph &g, const QueryArgs &a) {
         return EventsAt(g, *a.times[0], a.things[0]);
       }},
      {"appearances_at", {time}, false, false, false,
       [](const Graph &g, const QueryArgs &a) {
         return AppearancesAt(g, *a.times[0], a.options);
       }},
      {"actors_of_event", {thing(ThingKind::kEvent)}, true, true, false,
       [](const Graph &g, const QueryArgs &a) {
         return ActorsOfEvent(g, *a.things[0], a.scope);
       }},
      {"events_of_actor", {thing(ThingKind::kActor)}, true, true, false,
       [](const Graph &g, const QueryArgs &a) {
         return EventsOfActor(g, *a.things[0], a.scope);
       }},
      {"situations_of_appearance", {thing(ThingKind::kAppearance)}, false,
       false, false,
       [](const Graph &g, const QueryArgs &a) {
         return SituationsOfAppearance(g, *a.things[0]);
       }},
      {"appearances_of_situation", {thing(ThingKind::kSituation)}, false,
       false, false,
       [](const Graph &g, const QueryArgs &a) {
         return AppearancesOfSituation(g, *a.things[0]);
       }},
      {"situations_of_coincidence", {thing(ThingKind::kCoincidence)}, false,
       false, false,
       [](const Graph &g, const QueryArgs &a) {
         return SituationsOfCoincidence(g, *a.things[0]);
       }},
      {"coincidences_of_situation", {thing(ThingKind::kSituation)}, false,
       false, false,
       [](const Graph &g, const QueryArgs &a) {
         return CoincidencesOfSituation(g, *a.things[0]);
       }},
      {"coincidences_of_event", {thing(ThingKind::kEvent)}, false, false,
       false,
       [](const Graph &g, const QueryArgs &a) {
         return CoincidencesOfEvent(g, *a.things[0]);
       }},
      {"events_of_coincidence", {thing(ThingKind::kCoincidence)}, false, false,
       false,
       [](const Graph &g, const QueryArgs &a) {
         return EventsOfCoincidence(g, *a.things[0]);
       }},
      {"coincidences_at", {time, thing(ThingKind::kEvent, true)}, false, false,
       false,
       [](const Graph &g, const QueryArgs &a) {
         return CoincidencesAt(g, *a.times[0], a.things[0]);
       }},
      {"scenarios_of_situation", {thing(ThingKind::kSituation)}, false, false,
       true,
       [](const Graph &g, const QueryArgs &a) {
         return ScenariosOfSituation(g, *a.things[0], a.scope.order);
       }},
      {"situations_of_scenario", {thing(ThingKind::kScenario)}, false, false,
       true,
       [](const Graph &g, const QueryArgs &a) {
         return SituationsOfScenario(g, *a.things[0], a.scope.order);
       }},
      {"processes_of_scenario", {thing(ThingKind::kScenario)}, false, false,
       false,
       [](const Graph &g, const QueryArgs &a) {
         return ProcessesOfScenario(g, *a.things[0]);
       }},
      {"scenarios_of_process", {thing(ThingKind::kProcess)}, false, false,
       false,
       [](const Graph &g, const QueryArgs &a) {
         return ScenariosOfProcess(g, *a.things[0]);
       }},
      {"processes_at", {time}, false, false, false,
       [](const Graph &g, const QueryArgs &a) {
         return ProcessesAt(g, *a.times[0]);
       }},
      {"processes_of_coincidence", {thing(ThingKind::kCoincidence)}, false,
       true, false,
       [](const Graph &g, const QueryArgs &a) {
         return ProcessesOfCoincidence(g, *a.things[0], a.scope.time);
       }},
      {"coincidences_of_process", {thing(ThingKind::kProcess)}, false, true,
       false,
       [](const Graph &g, const QueryArgs &a) {
         return CoincidencesOfProcess(g, *a.things[0], a.scope.time);
       }},
  };
  return kInventory;
}

const QueryFunction *FindQuery(const std::string &name) {
  for (const QueryFunction &function : QueryInventory()) {
    if (function.name == name) return &function;
  }
  return nullptr;
}

}  // namespace scenarist

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

#include "scenarist/graph.h"

#include <algorithm>
#include <array>
#include <utility>

#include "scenarist/errors.h"

namespace scenarist {
namespace {

constexpr std::array<std::pair<ThingKind, const char *>, 10> kThingKinds = {{
    {ThingKind::kActor, "actor"},
    {ThingKind::kRole, "role"},
    {ThingKind::kAppearance, "appearance"},
    {ThingKind::kEvent, "event"},
    {ThingKind::kSituation, "situation"},
    {ThingKind::kCoincidence, "coincidence"},
    {ThingKind::kScenario, "scenario"},
    {ThingKind::kProcess, "process"},
    {ThingKind::kGeneric, "generic"},
    {ThingKind::kTime, "time"},
}};

constexpr std::array<std::pair<EdgeKind, const char *>, 5> kEdgeKinds = {{
    {EdgeKind::kIs, "is"},
    {EdgeKind::kHas, "has"},
    {EdgeKind::kTimes, "times"},
    {EdgeKind::kMember, "member"},
    {EdgeKind::kDomain, "domain"},
}};

constexpr std::array<std::pair<SetKind, const char *>, 3> kSetKinds = {{
    {SetKind::kAnd, "and"},
    {SetKind::kSeq, "seq"},
    {SetKind::kAny, "any"},
}};

template <typename Enum, size_t N>
const char *NameIn(const std::array<std::pair<Enum, const char *>, N> &table,
                   Enum value) {
  for (const auto &[v, name] : table) {
    if (v == value) return name;
  }
  return "?";
}

template <typename Enum, size_t N>
std::optional<Enum> ParseIn(
    const std::array<std::pair<Enum, const char *>, N> &table,
    std::string_view name) {
  for (const auto &[v, n] : table) {
    if (name == n) return v;
  }
  return std::nullopt;
}

bool HasRole(EdgeKind kind) {
  return kind == EdgeKind::kHas || kind == EdgeKind::kDomain;
}

}  // namespace

const char *ThingKindName(ThingKind kind) { return NameIn(kThingKinds, kind); }
std::optional<ThingKind> ParseThingKind(std::string_view name) {
  return ParseIn(kThingKinds, name);
}
const char *EdgeKindName(EdgeKind kind) { return NameIn(kEdgeKinds, kind); }
std::optional<EdgeKind> ParseEdgeKind(std::string_view name) {
  return ParseIn(kEdgeKinds, name);
}
const char *SetKindName(SetKind kind) { return NameIn(kSetKinds, kind); }
std::optional<SetKind> ParseSetKind(std::string_view name) {
  return ParseIn(kSetKinds, name);
}

ThingId Graph::AddThing(ThingKind kind, std::optional<std::string> name,
                        Properties properties, const TimeSpec &times) {
  if (kind == ThingKind::kEvent && times.empty()) {
    throw GraphError("event requires non-empty times");
  }
  if (kind == ThingKind::kTime) {
    throw GraphError("time nodes are created through SetTimes");
  }
  const ThingId id{static_cast<int64_t>(things_.size())};
  things_.push_back(ThingNode{id, kind, std::move(name), std::move(properties)});
  out_.emplace_back();
  in_.emplace_back();
  if (!times.empty()) SetTimes(id, times);
  return id;
}

ThingId Graph::AddTimeNode(const TimeSpec &times) {
  const ThingId id{static_cast<int64_t>(things_.size())};
  things_.push_back(ThingNode{id, ThingKind::kTime, std::nullopt, {}});
  out_.emplace_back();
  in_.emplace_back();
  time_specs_[id.value] = times;
  return id;
}

Graph::EdgeKey Graph::KeyOf(const Edge &edge) {
  return {static_cast<int>(edge.kind), edge.from.value, edge.to.value,
          edge.role, static_cast<int>(edge.set_kind), edge.order.value_or(-1)};
}

void Graph::AddEdge(const Edge &input) {
  CheckKnown(input.from);
  CheckKnown(input.to);
  Edge edge = input;
  if (HasRole(edge.kind)) {
    if (edge.role.empty()) {
      throw GraphError(std::string(EdgeKindName(edge.kind)) +
                       " edge needs a role name");
    }
  } else {
    edge.role.clear();
  }
  if (edge.kind == EdgeKind::kDomain) edge.set_kind = SetKind::kAny;
  if (edge.kind != EdgeKind::kMember && edge.kind != EdgeKind::kDomain) {
    edge.set_kind = SetKind::kAnd;
  }
  if (edge.kind != EdgeKind::kMember || edge.set_kind != SetKind::kSeq) {
    if (edge.order.has_value() && edge.kind == EdgeKind::kMember) {
      throw GraphError("order only applies to seq members");
    }
    edge.order.reset();
  }
  if (edge.kind == EdgeKind::kTimes) {
    if (Thing(edge.to).kind != ThingKind::kTime) {
      throw GraphError("times edge must point to a time node");
    }
    auto it = times_of_.find(edge.from.value);
    if (it != times_of_.end() && it->second != edge.to) {
      throw GraphError("thing already has a times edge");
    }
  }
  if (edge.kind == EdgeKind::kMember && edge.set_kind == SetKind::kSeq) {
    int64_t &next = seq_size_[edge.from.value];
    if (!edge.order.has_value()) {
      edge.order = next;
    } else if (edge_keys_.count(KeyOf(edge)) > 0) {
      return;
    } else if (*edge.order != next) {
      throw GraphError("seq member order " + std::to_string(*edge.order) +
                       " is not the next order " + std::to_string(next));
    }
    ++next;
  }
  if (!edge_keys_.insert(KeyOf(edge)).second) return;
  const size_t index = edges_.size();
  edges_.push_back(edge);
  out_[edge.from.value].push_back(index);
  in_[edge.to.value].push_back(index);
  if (edge.kind == EdgeKind::kTimes) times_of_[edge.from.value] = edge.to;
}

void Graph::CheckKnown(ThingId id) const {
  if (!Contains(id)) {
    throw GraphError("unknown thing id " + std::to_string(id.value));
  }
}

const ThingNode &Graph::Thing(ThingId id) const {
  CheckKnown(id);
  return things_[id.value];
}

ThingNode &Graph::MutableThing(ThingId id) {
  CheckKnown(id);
  return things_[id.value];
}

std::span<const size_t> Graph::EdgesOf(ThingId id, Direction direction) const {
  CheckKnown(id);
  return direction == Direction::kOut ? out_[id.value] : in_[id.value];
}

WeightedSet Graph::Neighbors(ThingId id, EdgeKind kind,
                             Direction direction) const {
  return Neighbors(id, EdgeFilter{kind, std::nullopt, std::nullopt},
                   direction);
}

WeightedSet Graph::Neighbors(ThingId id, const EdgeFilter &filter,
                             Direction direction) const {
  std::vector<const Edge *> matching;
  for (size_t index : EdgesOf(id, direction)) {
    const Edge &edge = edges_[index];
    if (edge.kind != filter.kind) continue;
    if (filter.role && edge.role != *filter.role) continue;
    if (filter.set_kind && edge.set_kind != *filter.set_kind) continue;
    matching.push_back(&edge);
  }
  if (direction == Direction::kOut) {
    std::stable_sort(matching.begin(), matching.end(),
                     [](const Edge *a, const Edge *b) {
                       return a->order.value_or(-1) < b->order.value_or(-1);
                     });
  }
  WeightedSet out;
  for (const Edge *edge : matching) {
    out.Insert(direction == Direction::kOut ? edge->to : edge->from, 1.0);
  }
  return out;
}

std::vector<ThingId> Graph::OrderedMembers(ThingId parent) const {
  std::vector<const Edge *> members;
  for (size_t index : EdgesOf(parent, Direction::kOut)) {
    const Edge &edge = edges_[index];
    if (edge.kind == EdgeKind::kMember && edge.set_kind == SetKind::kSeq) {
      members.push_back(&edge);
    }
  }
  std::sort(members.begin(), members.end(), [](const Edge *a, const Edge *b) {
    return *a->order < *b->order;
  });
  std::vector<ThingId> out;
  out.reserve(members.size());
  for (const Edge *edge : members) out.push_back(edge->to);
  return out;
}

const TimeSpec *Graph::Times(ThingId id) const {
  CheckKnown(id);
  auto it = times_of_.find(id.value);
  if (it == times_of_.end()) return nullptr;
  return &time_specs_.at(it->second.value);
}

void Graph::SetTimes(ThingId id, const TimeSpec &times) {
  CheckKnown(id);
  if (things_[id.value].kind == ThingKind::kTime) {
    throw GraphError("time nodes cannot have times");
  }
  auto it = times_of_.find(id.value);
  if (it != times_of_.end()) {
    time_specs_[it->second.value] = times;
    return;
  }
  const ThingId time_node = AddTimeNode(times);
  AddEdge(Edge::Times(id, time_node));
}

void Graph::SetProperty(ThingId id, const std::string &key,
                        PropertyValue value) {
  MutableThing(id).properties[key] = std::move(value);
}

const std::string *Graph::StringProperty(ThingId id,
                                         const std::string &key) const {
  const ThingNode &node = Thing(id);
  auto it = node.properties.find(key);
  if (it == node.properties.end()) return nullptr;
  return std::get_if<std::string>(&it->second);
}

bool operator==(const Graph &a, const Graph &b) {
  return a.things_ == b.things_ && a.edges_ == b.edges_ &&
         a.time_specs_ == b.time_specs_;
}

}  // namespace scenarist

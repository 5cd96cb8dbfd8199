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

#ifndef SCENARIST_GRAPH_H_
#define SCENARIST_GRAPH_H_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <variant>
#include <vector>

#include "scenarist/time_spec.h"
#include "scenarist/weighted_set.h"

namespace scenarist {

// `time` nodes hold the TimeSpec that a Times edge points to.
enum class ThingKind {
  kActor,
  kRole,
  kAppearance,
  kEvent,
  kSituation,
  kCoincidence,
  kScenario,
  kProcess,
  kGeneric,
  kTime,
};

const char *ThingKindName(ThingKind kind);
std::optional<ThingKind> ParseThingKind(std::string_view name);

// Text, number, or tick.
using PropertyValue = std::variant<std::string, double, Tick>;
using Properties = std::map<std::string, PropertyValue>;

struct ThingNode {
  ThingId id;
  ThingKind kind = ThingKind::kGeneric;
  std::optional<std::string> name;
  Properties properties;

  bool operator==(const ThingNode &) const = default;
};

enum class EdgeKind { kIs, kHas, kTimes, kMember, kDomain };
enum class SetKind { kAnd, kSeq, kAny };
enum class Direction { kOut, kIn };

const char *EdgeKindName(EdgeKind kind);
std::optional<EdgeKind> ParseEdgeKind(std::string_view name);
const char *SetKindName(SetKind kind);
std::optional<SetKind> ParseSetKind(std::string_view name);

// Typed relationship between two things.
//   Is      inheritance: instance -> class
//   Has     possession of a role, labelled with the role name
//   Times   thing -> its time node
//   Member  set -> member; seq members carry an order starting at 0
//   Domain  appearance -> any-set of admissible actors for a role
struct Edge {
  EdgeKind kind = EdgeKind::kIs;
  ThingId from;
  ThingId to;
  std::string role;
  SetKind set_kind = SetKind::kAnd;
  std::optional<int64_t> order;

  static Edge Is(ThingId from, ThingId to) {
    return {EdgeKind::kIs, from, to, {}, SetKind::kAnd, std::nullopt};
  }
  static Edge Has(ThingId from, std::string role, ThingId to) {
    return {EdgeKind::kHas, from, to, std::move(role), SetKind::kAnd,
            std::nullopt};
  }
  static Edge Times(ThingId from, ThingId to) {
    return {EdgeKind::kTimes, from, to, {}, SetKind::kAnd, std::nullopt};
  }
  static Edge Member(ThingId set, SetKind set_kind, ThingId member,
                     std::optional<int64_t> order = std::nullopt) {
    return {EdgeKind::kMember, set, member, {}, set_kind, order};
  }
  static Edge Domain(ThingId appearance, std::string role, ThingId any_set) {
    return {EdgeKind::kDomain, appearance, any_set, std::move(role),
            SetKind::kAny, std::nullopt};
  }

  bool operator==(const Edge &) const = default;
};

// Restricts which edges Neighbors() follows. Unset fields match anything.
struct EdgeFilter {
  EdgeKind kind = EdgeKind::kIs;
  std::optional<std::string> role;
  std::optional<SetKind> set_kind;
};

// In-memory typed graph of things and relationships.
//
// Mutations must be serialized by the caller. Const member functions may run
// concurrently with each other while no mutation is in progress.
class Graph {
 public:
  Graph() = default;

  // Creates a thing. Events need non-empty `times`; a non-empty `times`
  // creates a time node linked by a Times edge. Names need not be unique.
  ThingId AddThing(ThingKind kind, std::optional<std::string> name = {},
                   Properties properties = {}, const TimeSpec &times = {});

  // Stores an edge. Re-adding an identical edge is a no-op. A Member(seq)
  // edge without order gets the next free order of its parent; an explicit
  // order must equal that next order. Throws GraphError on dangling
  // endpoints, empty role labels, or a Times edge not ending at a time node.
  void AddEdge(const Edge &edge);

  bool Contains(ThingId id) const {
    return id.value >= 0 && id.value < static_cast<int64_t>(things_.size());
  }
  // Throws GraphError for unknown ids.
  const ThingNode &Thing(ThingId id) const;

  size_t size() const { return things_.size(); }
  std::span<const ThingNode> things() const { return things_; }
  std::span<const Edge> edges() const { return edges_; }

  // Indices into edges() leaving or entering `id`, in insertion order.
  std::span<const size_t> EdgesOf(ThingId id, Direction direction) const;

  // Endpoints across matching edges, weight 1. Member(seq) neighbours come in
  // order; everything else in insertion order. Throws GraphError for an
  // unknown id.
  WeightedSet Neighbors(ThingId id, EdgeKind kind, Direction direction) const;
  WeightedSet Neighbors(ThingId id, const EdgeFilter &filter,
                        Direction direction) const;

  // Seq members of `parent` by order, repeats included.
  std::vector<ThingId> OrderedMembers(ThingId parent) const;

  // The thing's TimeSpec, or nullptr if it has no Times edge.
  const TimeSpec *Times(ThingId id) const;
  // Replaces the TimeSpec, creating the time node on first use.
  void SetTimes(ThingId id, const TimeSpec &times);

  void SetProperty(ThingId id, const std::string &key, PropertyValue value);
  // nullptr if absent or not a string.
  const std::string *StringProperty(ThingId id, const std::string &key) const;

  // Creates a free-standing time node.
  ThingId AddTimeNode(const TimeSpec &times);

 private:
  using EdgeKey =
      std::tuple<int, int64_t, int64_t, std::string, int, int64_t>;

  ThingNode &MutableThing(ThingId id);
  void CheckKnown(ThingId id) const;
  static EdgeKey KeyOf(const Edge &edge);

  std::vector<ThingNode> things_;
  std::vector<Edge> edges_;
  std::vector<std::vector<size_t>> out_;
  std::vector<std::vector<size_t>> in_;
  std::set<EdgeKey> edge_keys_;
  // Next Member(seq) order per parent.
  std::unordered_map<int64_t, int64_t> seq_size_;
  // TimeSpec of each time node.
  std::unordered_map<int64_t, TimeSpec> time_specs_;
  // Time node of each owner.
  std::unordered_map<int64_t, ThingId> times_of_;

  friend bool operator==(const Graph &a, const Graph &b);
  friend Graph LoadJson(std::string_view text);
  friend std::string SaveJson(const Graph &graph);
};

// Same things (ids, kinds, names, properties), same edges in the same
// order, same TimeSpecs.
bool operator==(const Graph &a, const Graph &b);

// JSON snapshot:
//   {"things":[{"id","kind","name","properties"}],
//    "edges":[{"kind","role","set_kind","order","from","to"}],
//    "times":[{"id","intervals":[[s,e],...]}]}
// Numeric properties are JSON floats, tick properties JSON integers.
std::string SaveJson(const Graph &graph);
// Throws FormatError on malformed input; no partial graph escapes.
Graph LoadJson(std::string_view text);

}  // namespace scenarist

#endif  // SCENARIST_GRAPH_H_

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

#ifndef SCENARIST_WEIGHTED_SET_H_
#define SCENARIST_WEIGHTED_SET_H_

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

namespace scenarist {

// Identifier of a thing in a Graph. Assigned in increasing order from 0.
struct ThingId {
  int64_t value = -1;

  bool operator==(const ThingId &) const = default;
  auto operator<=>(const ThingId &) const = default;
};

// A fuzzy set of things: distinct members, each with a weight in [0, 1].
// Crisp membership is weight 1. Iteration follows insertion order.
class WeightedSet {
 public:
  struct Member {
    ThingId id;
    double weight;

    bool operator==(const Member &) const = default;
  };

  // Adds `id`, or raises its weight to max(old, weight). Weights are
  // clamped to [0, 1].
  void Insert(ThingId id, double weight = 1.0);

  bool Contains(ThingId id) const { return index_.count(id.value) > 0; }
  // 0 for non-members.
  double WeightOf(ThingId id) const;

  size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Member> &members() const { return members_; }
  std::vector<ThingId> ids() const;

  // Members sorted by id.
  WeightedSet Sorted() const;

  // Fuzzy union (max) and intersection (min).
  static WeightedSet Union(const WeightedSet &a, const WeightedSet &b);
  static WeightedSet Intersection(const WeightedSet &a, const WeightedSet &b);

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

 private:
  std::vector<Member> members_;
  std::unordered_map<int64_t, size_t> index_;
};

}  // namespace scenarist

template <>
struct std::hash<scenarist::ThingId> {
  size_t operator()(const scenarist::ThingId &id) const noexcept {
    return std::hash<int64_t>()(id.value);
  }
};

#endif  // SCENARIST_WEIGHTED_SET_H_

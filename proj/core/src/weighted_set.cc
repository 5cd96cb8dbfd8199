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

#include "scenarist/weighted_set.h"

#include <algorithm>

namespace scenarist {

void WeightedSet::Insert(ThingId id, double weight) {
  weight = std::clamp(weight, 0.0, 1.0);
  auto [it, inserted] = index_.emplace(id.value, members_.size());
  if (inserted) {
    members_.push_back({id, weight});
  } else {
    double &current = members_[it->second].weight;
    current = std::max(current, weight);
  }
}

double WeightedSet::WeightOf(ThingId id) const {
  auto it = index_.find(id.value);
  return it == index_.end() ? 0.0 : members_[it->second].weight;
}

std::vector<ThingId> WeightedSet::ids() const {
  std::vector<ThingId> out;
  out.reserve(members_.size());
  for (const Member &m : members_) out.push_back(m.id);
  return out;
}

WeightedSet WeightedSet::Sorted() const {
  std::vector<Member> sorted = members_;
  std::sort(sorted.begin(), sorted.end(),
            [](const Member &a, const Member &b) { return a.id < b.id; });
  WeightedSet out;
  for (const Member &m : sorted) out.Insert(m.id, m.weight);
  return out;
}

WeightedSet WeightedSet::Union(const WeightedSet &a, const WeightedSet &b) {
  WeightedSet out = a;
  for (const Member &m : b.members_) out.Insert(m.id, m.weight);
  return out;
}

WeightedSet WeightedSet::Intersection(const WeightedSet &a,
                                      const WeightedSet &b) {
  WeightedSet out;
  for (const Member &m : a.members_) {
    if (b.Contains(m.id)) out.Insert(m.id, std::min(m.weight, b.WeightOf(m.id)));
  }
  return out;
}

}  // namespace scenarist

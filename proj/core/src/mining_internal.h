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

#ifndef SCENARIST_MINING_INTERNAL_H_
#define SCENARIST_MINING_INTERNAL_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scenarist/graph.h"

namespace scenarist {
namespace internal {

// Finds mined nodes by their key property, creating them on demand.
class KeyIndex {
 public:
  explicit KeyIndex(Graph *graph);

  // `created` is set when the node is new.
  ThingId Get(ThingKind kind, const std::string &key,
              std::optional<std::string> name, bool *created = nullptr);

 private:
  Graph *graph_;
  std::map<std::pair<ThingKind, std::string>, ThingId> index_;
};

std::string JoinIds(const std::vector<int64_t> &ids);

// Endpoints of out-edges of `id` with the given kind that are of `kind`.
std::vector<ThingId> Targets(const Graph &graph, ThingId id, EdgeKind edge,
                             ThingKind kind);
// Same for in-edges.
std::vector<ThingId> Sources(const Graph &graph, ThingId id, EdgeKind edge,
                             ThingKind kind);

// Appearances without a pattern property, i.e. not mined.
bool IsConcreteAppearance(const Graph &graph, ThingId id);

// (role, actor) pairs bound by an event, in edge order.
std::vector<std::pair<std::string, ThingId>> Bindings(const Graph &graph,
                                                      ThingId event);

const std::string &NameOf(const Graph &graph, ThingId id);

}  // namespace internal
}  // namespace scenarist

#endif  // SCENARIST_MINING_INTERNAL_H_

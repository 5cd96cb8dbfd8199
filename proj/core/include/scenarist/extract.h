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

#ifndef SCENARIST_EXTRACT_H_
#define SCENARIST_EXTRACT_H_

#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scenarist/definitions.h"
#include "scenarist/graph.h"
#include "scenarist/matcher.h"

namespace scenarist {

// A timestamped piece of text.
struct Document {
  std::string text;
  std::string source;
  Tick time = 0;
};

// Writes appearances, roles, actors and events into a graph, reusing
// existing nodes by name: appearances by definition name, roles by role
// name, actors by lowercased value.
//
// Every event gets an Is edge to its appearance, a Times edge, the
// `sources` and `text` properties, and one Has(role) edge per bound actor.
// Each actor also gets an Is edge to the role it plays.
class EventRecorder {
 public:
  explicit EventRecorder(Graph *graph);

  ThingId Appearance(const std::string &name);
  ThingId Role(const std::string &name);
  // `value` is lowercased to form the actor's identity and name.
  ThingId Actor(const std::string &value);

  // Links the appearance to a role node with Has(role).
  void DeclareRole(ThingId appearance, const std::string &role);

  ThingId RecordEvent(const std::string &appearance,
                      const std::vector<std::pair<std::string, std::string>>
                          &role_values,
                      const TimeSpec &times, const std::string &source,
                      const std::string &text);

  Graph &graph() { return *graph_; }

 private:
  ThingId FindOrCreate(ThingKind kind, const std::string &name,
                       std::unordered_map<std::string, ThingId> *index);

  Graph *graph_;
  std::unordered_map<std::string, ThingId> appearances_;
  std::unordered_map<std::string, ThingId> roles_;
  std::unordered_map<std::string, ThingId> actors_;
};

// Matches definitions against documents and records one event per match.
class EventExtractor {
 public:
  EventExtractor(Graph *graph, std::vector<ThingDefinition> definitions);

  // Ids of the events created for `document`, grouped by definition in
  // definition order, then by match order.
  std::vector<ThingId> Extract(const Document &document);

  // Events created so far per definition name.
  const std::map<std::string, int64_t> &counts() const { return counts_; }

 private:
  struct Compiled {
    ThingDefinition definition;
    std::vector<Pattern> patterns;
  };

  EventRecorder recorder_;
  std::vector<Compiled> compiled_;
  std::map<std::string, int64_t> counts_;
};

// One-shot form of EventExtractor::Extract.
std::vector<ThingId> ExtractEvents(const std::vector<ThingDefinition> &definitions,
                                   const Document &document, Graph *graph);

}  // namespace scenarist

#endif  // SCENARIST_EXTRACT_H_

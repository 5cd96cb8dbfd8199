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

#include "scenarist/extract.h"

#include "scenarist/tokenizer.h"

namespace scenarist {

EventRecorder::EventRecorder(Graph *graph) : graph_(graph) {
  for (const ThingNode &node : graph_->things()) {
    if (!node.name) continue;
    switch (node.kind) {
      case ThingKind::kAppearance:
        appearances_.emplace(*node.name, node.id);
        break;
      case ThingKind::kRole:
        roles_.emplace(*node.name, node.id);
        break;
      case ThingKind::kActor:
        actors_.emplace(*node.name, node.id);
        break;
      default:
        break;
    }
  }
}

ThingId EventRecorder::FindOrCreate(
    ThingKind kind, const std::string &name,
    std::unordered_map<std::string, ThingId> *index) {
  auto it = index->find(name);
  if (it != index->end()) return it->second;
  const ThingId id = graph_->AddThing(kind, name);
  index->emplace(name, id);
  return id;
}

ThingId EventRecorder::Appearance(const std::string &name) {
  return FindOrCreate(ThingKind::kAppearance, name, &appearances_);
}

ThingId EventRecorder::Role(const std::string &name) {
  return FindOrCreate(ThingKind::kRole, Lowercase(name), &roles_);
}

ThingId EventRecorder::Actor(const std::string &value) {
  return FindOrCreate(ThingKind::kActor, Lowercase(value), &actors_);
}

void EventRecorder::DeclareRole(ThingId appearance, const std::string &role) {
  const std::string name = Lowercase(role);
  graph_->AddEdge(Edge::Has(appearance, name, Role(name)));
}

ThingId EventRecorder::RecordEvent(
    const std::string &appearance,
    const std::vector<std::pair<std::string, std::string>> &role_values,
    const TimeSpec &times, const std::string &source, const std::string &text) {
  const ThingId appearance_id = Appearance(appearance);
  Properties properties;
  properties["sources"] = source;
  properties["text"] = text;
  const ThingId event = graph_->AddThing(ThingKind::kEvent, appearance,
                                         std::move(properties), times);
  graph_->AddEdge(Edge::Is(event, appearance_id));
  for (const auto &[role, value] : role_values) {
    const std::string role_name = Lowercase(role);
    DeclareRole(appearance_id, role_name);
    const ThingId actor = Actor(value);
    graph_->AddEdge(Edge::Has(event, role_name, actor));
    graph_->AddEdge(Edge::Is(actor, Role(role_name)));
  }
  return event;
}

EventExtractor::EventExtractor(Graph *graph,
                               std::vector<ThingDefinition> definitions)
    : recorder_(graph) {
  for (ThingDefinition &definition : definitions) {
    Compiled compiled{definition, definition.EffectivePatterns()};
    const ThingId appearance = recorder_.Appearance(definition.name);
    for (const std::string &role : definition.roles) {
      recorder_.DeclareRole(appearance, role);
    }
    for (const Pattern &pattern : compiled.patterns) {
      for (const std::string &variable : ListVariables(pattern)) {
        recorder_.DeclareRole(appearance, variable);
      }
    }
    counts_.emplace(definition.name, 0);
    compiled_.push_back(std::move(compiled));
  }
}

std::vector<ThingId> EventExtractor::Extract(const Document &document) {
  const std::vector<Token> tokens = Tokenize(document.text);
  std::vector<ThingId> events;
  for (const Compiled &compiled : compiled_) {
    for (const Pattern &pattern : compiled.patterns) {
      for (const Match &match :
           MatchPattern(pattern, tokens, compiled.definition.role_types)) {
        std::map<std::string, std::string> values;
        std::vector<std::pair<std::string, std::string>> role_values;
        for (const auto &[name, binding] : match.bindings) {
          values[name] = binding.surface;
          role_values.emplace_back(name, binding.surface);
        }
        events.push_back(recorder_.RecordEvent(
            compiled.definition.name, role_values,
            TimeSpec::Point(document.time), document.source,
            RenderPattern(pattern, values)));
        ++counts_[compiled.definition.name];
      }
    }
  }
  return events;
}

std::vector<ThingId> ExtractEvents(const std::vector<ThingDefinition> &definitions,
                                   const Document &document, Graph *graph) {
  return EventExtractor(graph, definitions).Extract(document);
}

}  // namespace scenarist

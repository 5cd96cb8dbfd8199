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

#include <string>
#include <utility>

#include "json.hpp"
#include "scenarist/errors.h"
#include "scenarist/graph.h"

namespace scenarist {
namespace {

using nlohmann::json;

json PropertyToJson(const PropertyValue &value) {
  if (const auto *text = std::get_if<std::string>(&value)) return *text;
  if (const auto *number = std::get_if<double>(&value)) return *number;
  return std::get<Tick>(value);
}

PropertyValue PropertyFromJson(const json &value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_float()) return value.get<double>();
  if (value.is_number_integer()) return value.get<Tick>();
  throw FormatError("property values must be strings or numbers");
}

void CheckFields(const json &object, std::initializer_list<const char *> known,
                 const char *what) {
  if (!object.is_object()) {
    throw FormatError(std::string(what) + " entries must be objects");
  }
  for (const auto &[key, unused] : object.items()) {
    bool found = false;
    for (const char *name : known) found = found || key == name;
    if (!found) {
      throw FormatError("unknown field '" + key + "' in " + what);
    }
  }
}

const json &Required(const json &object, const char *field, const char *what) {
  auto it = object.find(field);
  if (it == object.end()) {
    throw FormatError(std::string("missing field '") + field + "' in " + what);
  }
  return *it;
}

bool Present(const json &object, const char *field) {
  auto it = object.find(field);
  return it != object.end() && !it->is_null();
}

int64_t IdFrom(const json &value) {
  if (!value.is_number_integer()) throw FormatError("ids must be integers");
  return value.get<int64_t>();
}

}  // namespace

std::string SaveJson(const Graph &graph) {
  json things = json::array();
  json times = json::array();
  for (const ThingNode &node : graph.things()) {
    json properties = json::object();
    for (const auto &[key, value] : node.properties) {
      properties[key] = PropertyToJson(value);
    }
    if (node.kind == ThingKind::kTime) {
      json intervals = json::array();
      for (const Interval &interval :
           graph.time_specs_.at(node.id.value).intervals()) {
        intervals.push_back({interval.start, interval.end});
      }
      times.push_back({{"id", node.id.value}, {"intervals", intervals}});
    }
    things.push_back({{"id", node.id.value},
                      {"kind", ThingKindName(node.kind)},
                      {"name", node.name ? json(*node.name) : json(nullptr)},
                      {"properties", std::move(properties)}});
  }
  json edges = json::array();
  for (const Edge &edge : graph.edges()) {
    const bool has_role =
        edge.kind == EdgeKind::kHas || edge.kind == EdgeKind::kDomain;
    const bool member = edge.kind == EdgeKind::kMember;
    edges.push_back(
        {{"kind", EdgeKindName(edge.kind)},
         {"role", has_role ? json(edge.role) : json(nullptr)},
         {"set_kind", member ? json(SetKindName(edge.set_kind)) : json(nullptr)},
         {"order", edge.order ? json(*edge.order) : json(nullptr)},
         {"from", edge.from.value},
         {"to", edge.to.value}});
  }
  json root = {{"things", std::move(things)},
               {"edges", std::move(edges)},
               {"times", std::move(times)}};
  return root.dump();
}

Graph LoadJson(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception &e) {
    throw FormatError(std::string("malformed snapshot: ") + e.what());
  }
  CheckFields(root, {"things", "edges", "times"}, "snapshot");
  const json &things = Required(root, "things", "snapshot");
  const json &edges = Required(root, "edges", "snapshot");
  const json &times = Required(root, "times", "snapshot");
  if (!things.is_array() || !edges.is_array() || !times.is_array()) {
    throw FormatError("things, edges and times must be arrays");
  }

  std::map<int64_t, TimeSpec> specs;
  for (const json &entry : times) {
    CheckFields(entry, {"id", "intervals"}, "times");
    const int64_t id = IdFrom(Required(entry, "id", "times"));
    const json &intervals = Required(entry, "intervals", "times");
    if (!intervals.is_array()) throw FormatError("intervals must be an array");
    TimeSpec spec;
    for (const json &pair : intervals) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
          !pair[1].is_number_integer()) {
        throw FormatError("intervals must be [start, end] integer pairs");
      }
      const Tick start = pair[0].get<Tick>();
      const Tick end = pair[1].get<Tick>();
      if (start > end) throw FormatError("interval start after end");
      spec.Add(Interval{start, end});
    }
    if (!specs.emplace(id, std::move(spec)).second) {
      throw FormatError("duplicate times entry " + std::to_string(id));
    }
  }

  std::vector<ThingNode> nodes(things.size());
  std::vector<bool> seen(things.size(), false);
  for (const json &entry : things) {
    CheckFields(entry, {"id", "kind", "name", "properties"}, "things");
    const int64_t id = IdFrom(Required(entry, "id", "things"));
    if (id < 0 || id >= static_cast<int64_t>(things.size()) || seen[id]) {
      throw FormatError("thing ids must be unique and dense from 0");
    }
    seen[id] = true;
    const json &kind_value = Required(entry, "kind", "things");
    const auto kind = kind_value.is_string()
                          ? ParseThingKind(kind_value.get<std::string>())
                          : std::nullopt;
    if (!kind) throw FormatError("unknown thing kind");
    ThingNode &node = nodes[id];
    node.id = ThingId{id};
    node.kind = *kind;
    if (Present(entry, "name")) {
      if (!entry["name"].is_string()) throw FormatError("names must be strings");
      node.name = entry["name"].get<std::string>();
    }
    if (Present(entry, "properties")) {
      const json &properties = entry["properties"];
      if (!properties.is_object()) {
        throw FormatError("properties must be an object");
      }
      for (const auto &[key, value] : properties.items()) {
        node.properties[key] = PropertyFromJson(value);
      }
    }
  }

  Graph graph;
  try {
    for (ThingNode &node : nodes) {
      if (node.kind == ThingKind::kTime) {
        auto it = specs.find(node.id.value);
        if (it == specs.end()) {
          throw FormatError("time node " + std::to_string(node.id.value) +
                            " has no times entry");
        }
        graph.AddTimeNode(it->second);
        specs.erase(it);
      } else {
        graph.things_.push_back(std::move(node));
        graph.out_.emplace_back();
        graph.in_.emplace_back();
      }
    }
    if (!specs.empty()) {
      throw FormatError("times entry " + std::to_string(specs.begin()->first) +
                        " does not name a time node");
    }
    for (const json &entry : edges) {
      CheckFields(entry, {"kind", "role", "set_kind", "order", "from", "to"},
                  "edges");
      const json &kind_value = Required(entry, "kind", "edges");
      const auto kind = kind_value.is_string()
                            ? ParseEdgeKind(kind_value.get<std::string>())
                            : std::nullopt;
      if (!kind) throw FormatError("unknown edge kind");
      Edge edge;
      edge.kind = *kind;
      edge.from = ThingId{IdFrom(Required(entry, "from", "edges"))};
      edge.to = ThingId{IdFrom(Required(entry, "to", "edges"))};
      if (Present(entry, "role")) {
        if (!entry["role"].is_string()) throw FormatError("role must be a string");
        edge.role = entry["role"].get<std::string>();
      }
      if (Present(entry, "set_kind")) {
        const auto set_kind = entry["set_kind"].is_string()
                                  ? ParseSetKind(entry["set_kind"].get<std::string>())
                                  : std::nullopt;
        if (!set_kind) throw FormatError("unknown set kind");
        edge.set_kind = *set_kind;
      } else if (edge.kind == EdgeKind::kMember) {
        throw FormatError("member edge without set_kind");
      }
      if (Present(entry, "order")) edge.order = IdFrom(entry["order"]);
      graph.AddEdge(edge);
    }
  } catch (const GraphError &e) {
    throw FormatError(std::string("inconsistent snapshot: ") + e.what());
  }
  for (const ThingNode &node : graph.things()) {
    if (node.kind == ThingKind::kEvent && graph.Times(node.id) == nullptr) {
      throw FormatError("event " + std::to_string(node.id.value) +
                        " has no times");
    }
  }
  return graph;
}

}  // namespace scenarist

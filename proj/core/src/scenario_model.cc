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

#include <algorithm>
#include <cmath>

#include "mining_internal.h"
#include "scenarist/errors.h"
#include "scenarist/mining.h"

namespace scenarist {

using internal::JoinIds;
using internal::NameOf;

ScenarioModel ScenarioModel::Build(
    const std::vector<std::vector<int64_t>> &sequences) {
  ScenarioModel model;
  model.sequences = sequences;
  model.nodes.push_back(ScenarioNode{});
  for (size_t k = 0; k < sequences.size(); ++k) {
    int64_t node = 0;
    model.nodes[0].count++;
    model.nodes[0].sequences.push_back(k);
    for (int64_t situation : sequences[k]) {
      auto &children = model.nodes[node].children;
      auto it = std::lower_bound(
          children.begin(), children.end(), situation,
          [&](int64_t child, int64_t s) { return model.nodes[child].situation < s; });
      int64_t child;
      if (it != children.end() && model.nodes[*it].situation == situation) {
        child = *it;
      } else {
        child = static_cast<int64_t>(model.nodes.size());
        children.insert(it, child);
        ScenarioNode fresh;
        fresh.situation = situation;
        fresh.parent = node;
        fresh.depth = model.nodes[node].depth + 1;
        model.nodes.push_back(std::move(fresh));
      }
      node = child;
      model.nodes[node].count++;
      model.nodes[node].sequences.push_back(k);
    }
  }
  return model;
}

std::vector<int64_t> ScenarioModel::Prefix(int64_t node) const {
  std::vector<int64_t> out;
  for (; node > 0; node = nodes[node].parent) {
    out.push_back(nodes[node].situation);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

double ScenarioModel::BranchProbability(int64_t child) const {
  const ScenarioNode &parent = nodes[nodes[child].parent];
  return static_cast<double>(nodes[child].count) / parent.count;
}

std::vector<int64_t> ScenarioModel::Preorder() const {
  std::vector<int64_t> out;
  if (nodes.empty()) return out;
  std::vector<int64_t> stack = {0};
  while (!stack.empty()) {
    const int64_t node = stack.back();
    stack.pop_back();
    out.push_back(node);
    const auto &children = nodes[node].children;
    stack.insert(stack.end(), children.rbegin(), children.rend());
  }
  return out;
}

std::vector<int64_t> ScenarioModel::ClosedFrequent(int64_t min_support) const {
  std::vector<int64_t> out;
  for (int64_t node : Preorder()) {
    if (node == 0 || nodes[node].count < min_support) continue;
    bool closed = true;
    for (int64_t child : nodes[node].children) {
      if (nodes[child].count == nodes[node].count) closed = false;
    }
    if (closed) out.push_back(node);
  }
  return out;
}

namespace {

int64_t SupportOf(const Graph &graph, ThingId situation) {
  const auto &properties = graph.Thing(situation).properties;
  auto it = properties.find("support");
  if (it == properties.end()) return 0;
  if (const Tick *value = std::get_if<Tick>(&it->second)) return *value;
  return 0;
}

}  // namespace

int64_t LiftCoincidence(const Graph &graph, ThingId coincidence,
                        const std::set<int64_t> &situations) {
  int64_t best = -1;
  int64_t best_support = 0;
  size_t best_size = 0;
  for (ThingId s : internal::Targets(graph, coincidence, EdgeKind::kIs,
                                     ThingKind::kSituation)) {
    if (!situations.count(s.value)) continue;
    const int64_t support = SupportOf(graph, s);
    const size_t size =
        internal::Targets(graph, s, EdgeKind::kMember, ThingKind::kAppearance)
            .size();
    const bool better =
        best < 0 || support > best_support ||
        (support == best_support &&
         (size > best_size || (size == best_size && s.value < best)));
    if (better) {
      best = s.value;
      best_support = support;
      best_size = size;
    }
  }
  return best;
}

ScenarioModel UnifyScenarios(Graph *graph, const std::vector<ThingId> &processes,
                             const std::vector<ThingId> &situations,
                             int64_t min_support) {
  std::set<int64_t> allowed;
  for (ThingId s : situations) allowed.insert(s.value);
  std::vector<std::vector<int64_t>> lifted;
  for (ThingId process : processes) {
    std::vector<int64_t> sequence;
    for (ThingId c : graph->OrderedMembers(process)) {
      const int64_t s = LiftCoincidence(*graph, c, allowed);
      if (s >= 0) sequence.push_back(s);
    }
    lifted.push_back(std::move(sequence));
  }
  ScenarioModel model = ScenarioModel::Build(lifted);
  model.processes = processes;
  model.situations = std::move(allowed);
  internal::KeyIndex keys(graph);
  for (int64_t node : model.ClosedFrequent(min_support)) {
    const std::vector<int64_t> prefix = model.Prefix(node);
    std::string name;
    for (size_t i = 0; i < prefix.size(); ++i) {
      if (i > 0) name += " > ";
      name += NameOf(*graph, ThingId{prefix[i]});
    }
    const ThingId scenario =
        keys.Get(ThingKind::kScenario, "scenario:" + JoinIds(prefix), name);
    graph->SetProperty(scenario, "support", Tick{model.nodes[node].count});
    for (size_t i = 0; i < prefix.size(); ++i) {
      graph->AddEdge(Edge::Member(scenario, SetKind::kSeq, ThingId{prefix[i]},
                                  static_cast<int64_t>(i)));
    }
    for (size_t k : model.nodes[node].sequences) {
      graph->AddEdge(Edge::Is(processes[k], scenario));
    }
    model.scenarios.emplace_back(node, scenario);
  }
  return model;
}

std::vector<Fork> DetectForks(const ScenarioModel &model, double epsilon,
                              int64_t min_support) {
  std::vector<Fork> out;
  for (int64_t node : model.Preorder()) {
    std::vector<int64_t> frequent;
    int64_t total = 0;
    for (int64_t child : model.nodes[node].children) {
      if (model.nodes[child].count >= min_support) {
        frequent.push_back(child);
        total += model.nodes[child].count;
      }
    }
    if (frequent.size() < 2) continue;
    Fork fork{node, model.Prefix(node), {}};
    double low = 1;
    double high = 0;
    for (int64_t child : frequent) {
      const double p = static_cast<double>(model.nodes[child].count) / total;
      fork.branches.push_back({child, model.nodes[child].situation, p});
      low = std::min(low, p);
      high = std::max(high, p);
    }
    if (high - low <= epsilon + 1e-12) out.push_back(std::move(fork));
  }
  return out;
}

namespace {

// Appearances and co-situations seen in a process before it leaves the
// fork's prefix: extra events next to the lifted situation, and other
// situations the prefix coincidences instantiate.
std::set<int64_t> PrefixContext(const Graph &graph, const ScenarioModel &model,
                                ThingId process, int64_t depth) {
  std::set<int64_t> out;
  int64_t lifted_count = 0;
  for (ThingId c : graph.OrderedMembers(process)) {
    if (lifted_count >= depth) break;
    const int64_t lifted = LiftCoincidence(graph, c, model.situations);
    std::set<int64_t> covered;
    if (lifted >= 0) {
      ++lifted_count;
      for (ThingId a : internal::Targets(graph, ThingId{lifted},
                                         EdgeKind::kMember,
                                         ThingKind::kAppearance)) {
        covered.insert(a.value);
      }
    }
    for (int64_t item : CoincidenceItems(graph, c)) {
      if (!covered.count(item)) out.insert(item);
    }
    for (ThingId s : internal::Targets(graph, c, EdgeKind::kIs,
                                       ThingKind::kSituation)) {
      if (s.value != lifted && model.situations.count(s.value)) {
        out.insert(s.value);
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Trigger> DifferentiateTriggers(const Graph &graph,
                                           const ScenarioModel &model,
                                           const std::vector<Fork> &forks,
                                           const MiningConfig &config) {
  std::vector<Trigger> out;
  for (size_t f = 0; f < forks.size(); ++f) {
    const Fork &fork = forks[f];
    const int64_t depth = model.nodes[fork.node].depth;
    const size_t branches = fork.branches.size();
    std::vector<int64_t> base_counts(branches, 0);
    int64_t reaching = 0;
    std::map<int64_t, std::vector<int64_t>> present;
    for (size_t b = 0; b < branches; ++b) {
      for (size_t k : model.nodes[fork.branches[b].node].sequences) {
        ++reaching;
        ++base_counts[b];
        for (int64_t x : PrefixContext(graph, model, model.processes[k], depth)) {
          auto &counts = present[x];
          counts.resize(branches, 0);
          ++counts[b];
        }
      }
    }
    std::vector<double> base;
    for (int64_t count : base_counts) {
      base.push_back(static_cast<double>(count) / reaching);
    }
    std::vector<Trigger> found;
    for (const auto &[x, counts] : present) {
      int64_t support = 0;
      for (int64_t count : counts) support += count;
      if (support < config.min_support) continue;
      Trigger trigger{f, ThingId{x}, 0, base, {}, support};
      for (size_t b = 0; b < branches; ++b) {
        const double p = static_cast<double>(counts[b]) / support;
        trigger.shifted.push_back(p);
        trigger.score = std::max(trigger.score, std::abs(p - base[b]));
      }
      if (trigger.score + 1e-12 >= config.trigger_min_shift) {
        found.push_back(std::move(trigger));
      }
    }
    std::sort(found.begin(), found.end(), [&](const Trigger &a, const Trigger &b) {
      if (a.score != b.score) return a.score > b.score;
      if (a.support != b.support) return a.support > b.support;
      const std::string &na = NameOf(graph, a.thing);
      const std::string &nb = NameOf(graph, b.thing);
      if (na != nb) return na < nb;
      return a.thing < b.thing;
    });
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

}  // namespace scenarist

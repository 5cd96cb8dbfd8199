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

#include <exception>

#include "json.hpp"

#include "mining_internal.h"
#include "scenarist/errors.h"
#include "scenarist/mining.h"

namespace scenarist {

using internal::NameOf;

namespace {

template <typename F>
auto RunStage(const std::string &stage, F &&body) {
  try {
    return body();
  } catch (const MiningError &) {
    throw;
  } catch (const std::exception &e) {
    throw MiningError(stage, e.what());
  }
}

}  // namespace

MiningReport RunPipeline(Graph *graph, const MiningConfig &config) {
  RunStage("config", [&] {
    config.Validate();
    return 0;
  });
  const size_t before = graph->size();
  MiningReport report;
  auto count = [&](const char *stage, size_t n) {
    report.stages.emplace_back(stage, static_cast<int64_t>(n));
  };

  count("scope_roles", RunStage("scope_roles", [&] {
          return ScopeRoles(graph).size();
        }));
  report.roles = RunStage("differentiate_actors",
                          [&] { return DifferentiateActors(*graph); });
  count("differentiate_actors", report.roles.size());
  count("unify_appearances", RunStage("unify_appearances", [&] {
          return UnifyAppearances(graph, config.min_support).size();
        }));
  const auto coincidences = RunStage("cluster_events", [&] {
    return ClusterEvents(graph, config.coincidence_window);
  });
  count("cluster_events", coincidences.size());
  const auto situations = RunStage("unify_situations", [&] {
    return UnifySituations(graph, coincidences, config.min_support);
  });
  count("unify_situations", situations.size());
  const auto processes = RunStage("chain_coincidences", [&] {
    return ChainCoincidences(graph, coincidences, config);
  });
  count("chain_coincidences", processes.size());
  report.model = RunStage("unify_scenarios", [&] {
    return UnifyScenarios(graph, processes, situations, config.min_support);
  });
  count("unify_scenarios", report.model.scenarios.size());
  report.forks = RunStage("detect_forks", [&] {
    return DetectForks(report.model, config.fork_epsilon, config.min_support);
  });
  count("detect_forks", report.forks.size());
  report.triggers = RunStage("differentiate_triggers", [&] {
    return DifferentiateTriggers(*graph, report.model, report.forks, config);
  });
  count("differentiate_triggers", report.triggers.size());
  report.nodes_created = static_cast<int64_t>(graph->size() - before);
  return report;
}

std::string ReportJson(const Graph &graph, const MiningReport &report) {
  using nlohmann::ordered_json;
  ordered_json out;
  ordered_json stages = ordered_json::object();
  for (const auto &[stage, n] : report.stages) stages[stage] = n;
  out["stages"] = stages;

  ordered_json roles = ordered_json::array();
  for (const RoleDifferentiation &row : report.roles) {
    ordered_json actors = ordered_json::array();
    for (const ActorFrequency &a : row.actors) {
      actors.push_back({{"actor", NameOf(graph, a.actor)},
                        {"count", a.count},
                        {"frequency", a.frequency}});
    }
    roles.push_back({{"appearance", NameOf(graph, row.appearance)},
                     {"role", row.role},
                     {"events", row.events},
                     {"actors", actors},
                     {"most_probable", NameOf(graph, row.most_probable)}});
  }
  out["roles"] = roles;

  auto names = [&](const std::vector<int64_t> &ids) {
    ordered_json list = ordered_json::array();
    for (int64_t id : ids) list.push_back(NameOf(graph, ThingId{id}));
    return list;
  };
  ordered_json scenarios = ordered_json::array();
  for (const auto &[node, scenario] : report.model.scenarios) {
    scenarios.push_back({{"situations", names(report.model.Prefix(node))},
                         {"support", report.model.nodes[node].count}});
  }
  out["scenarios"] = scenarios;

  ordered_json forks = ordered_json::array();
  for (const Fork &fork : report.forks) {
    ordered_json branches = ordered_json::array();
    for (const Branch &b : fork.branches) {
      branches.push_back({{"situation", NameOf(graph, ThingId{b.situation})},
                          {"p", b.probability}});
    }
    forks.push_back({{"prefix", names(fork.prefix)}, {"branches", branches}});
  }
  out["forks"] = forks;

  ordered_json triggers = ordered_json::array();
  for (const Trigger &t : report.triggers) {
    triggers.push_back({{"fork", t.fork},
                        {"thing", NameOf(graph, t.thing)},
                        {"kind", ThingKindName(graph.Thing(t.thing).kind)},
                        {"score", t.score},
                        {"base", t.base},
                        {"shifted", t.shifted},
                        {"support", t.support}});
  }
  out["triggers"] = triggers;
  return out.dump();
}

}  // namespace scenarist

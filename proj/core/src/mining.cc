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

#include "scenarist/mining.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "mining_internal.h"
#include "scenarist/errors.h"
#include "scenarist/tokenizer.h"

namespace scenarist {
namespace internal {

KeyIndex::KeyIndex(Graph *graph) : graph_(graph) {
  for (const ThingNode &node : graph->things()) {
    if (const std::string *key = graph->StringProperty(node.id, kKeyProperty)) {
      index_.emplace(std::make_pair(node.kind, *key), node.id);
    }
  }
}

ThingId KeyIndex::Get(ThingKind kind, const std::string &key,
                      std::optional<std::string> name, bool *created) {
  auto it = index_.find({kind, key});
  if (created != nullptr) *created = it == index_.end();
  if (it != index_.end()) return it->second;
  const ThingId id = graph_->AddThing(kind, std::move(name),
                                      {{kKeyProperty, key}});
  index_.emplace(std::make_pair(kind, key), id);
  return id;
}

std::string JoinIds(const std::vector<int64_t> &ids) {
  std::string out;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(ids[i]);
  }
  return out;
}

namespace {

std::vector<ThingId> Endpoints(const Graph &graph, ThingId id, EdgeKind edge,
                               ThingKind kind, Direction direction) {
  std::vector<ThingId> out;
  for (size_t index : graph.EdgesOf(id, direction)) {
    const Edge &e = graph.edges()[index];
    if (e.kind != edge) continue;
    const ThingId other = direction == Direction::kOut ? e.to : e.from;
    if (graph.Thing(other).kind == kind) out.push_back(other);
  }
  return out;
}

}  // namespace

std::vector<ThingId> Targets(const Graph &graph, ThingId id, EdgeKind edge,
                             ThingKind kind) {
  return Endpoints(graph, id, edge, kind, Direction::kOut);
}

std::vector<ThingId> Sources(const Graph &graph, ThingId id, EdgeKind edge,
                             ThingKind kind) {
  return Endpoints(graph, id, edge, kind, Direction::kIn);
}

bool IsConcreteAppearance(const Graph &graph, ThingId id) {
  const ThingNode &node = graph.Thing(id);
  return node.kind == ThingKind::kAppearance &&
         !node.properties.count(kPatternProperty);
}

std::vector<std::pair<std::string, ThingId>> Bindings(const Graph &graph,
                                                      ThingId event) {
  std::vector<std::pair<std::string, ThingId>> out;
  for (size_t index : graph.EdgesOf(event, Direction::kOut)) {
    const Edge &e = graph.edges()[index];
    if (e.kind == EdgeKind::kHas &&
        graph.Thing(e.to).kind == ThingKind::kActor) {
      out.emplace_back(e.role, e.to);
    }
  }
  return out;
}

const std::string &NameOf(const Graph &graph, ThingId id) {
  static const std::string kEmpty;
  const ThingNode &node = graph.Thing(id);
  return node.name ? *node.name : kEmpty;
}

}  // namespace internal

using internal::JoinIds;
using internal::KeyIndex;
using internal::NameOf;

void MiningConfig::Validate() const {
  if (coincidence_window < 0) {
    throw std::invalid_argument("coincidence_window must be >= 0");
  }
  if (chain_max_gap < 1) throw std::invalid_argument("chain_max_gap must be >= 1");
  if (min_support < 1) throw std::invalid_argument("min_support must be >= 1");
  if (!(fork_epsilon >= 0 && fork_epsilon <= 1)) {
    throw std::invalid_argument("fork_epsilon must be in [0, 1]");
  }
  if (!(trigger_min_shift > 0 && trigger_min_shift <= 1)) {
    throw std::invalid_argument("trigger_min_shift must be in (0, 1]");
  }
}

namespace {

std::vector<ThingId> ConcreteAppearances(const Graph &graph) {
  std::vector<ThingId> out;
  for (const ThingNode &node : graph.things()) {
    if (internal::IsConcreteAppearance(graph, node.id)) out.push_back(node.id);
  }
  return out;
}

std::vector<ThingId> DirectEvents(const Graph &graph, ThingId appearance) {
  std::vector<ThingId> out = internal::Sources(graph, appearance, EdgeKind::kIs,
                                               ThingKind::kEvent);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Tick StartOf(const Graph &graph, ThingId id) {
  const TimeSpec *times = graph.Times(id);
  return times == nullptr || times->empty() ? 0 : times->start();
}

// Actor nodes by name, lowest id first.
std::map<std::string, ThingId> ActorIndex(const Graph &graph) {
  std::map<std::string, ThingId> out;
  for (const ThingNode &node : graph.things()) {
    if (node.kind == ThingKind::kActor && node.name) {
      out.emplace(*node.name, node.id);
    }
  }
  return out;
}

ThingId AnySet(Graph *graph, KeyIndex *keys, ThingId appearance,
               const std::string &role, const std::vector<ThingId> &actors) {
  const ThingId set = keys->Get(
      ThingKind::kGeneric, "domain:" + std::to_string(appearance.value) + ":" + role,
      role);
  for (ThingId actor : actors) {
    graph->AddEdge(Edge::Member(set, SetKind::kAny, actor));
  }
  graph->AddEdge(Edge::Domain(appearance, role, set));
  return set;
}

}  // namespace

std::vector<RoleDomain> ScopeRoles(Graph *graph) {
  KeyIndex keys(graph);
  std::vector<RoleDomain> out;
  for (ThingId appearance : ConcreteAppearances(*graph)) {
    std::map<std::string, std::set<ThingId>> actors;
    for (ThingId event : DirectEvents(*graph, appearance)) {
      for (const auto &[role, actor] : internal::Bindings(*graph, event)) {
        actors[role].insert(actor);
      }
    }
    for (const auto &[role, set] : actors) {
      std::vector<ThingId> members(set.begin(), set.end());
      const ThingId any_set = AnySet(graph, &keys, appearance, role, members);
      out.push_back({appearance, role, any_set, std::move(members)});
    }
  }
  return out;
}

std::vector<RoleDifferentiation> DifferentiateActors(const Graph &graph) {
  std::vector<RoleDifferentiation> out;
  for (ThingId appearance : ConcreteAppearances(graph)) {
    struct Seen {
      int64_t count = 0;
      Tick first = 0;
    };
    std::map<std::string, std::set<ThingId>> filled;
    std::map<std::string, std::map<ThingId, Seen>> seen;
    for (ThingId event : DirectEvents(graph, appearance)) {
      const Tick start = StartOf(graph, event);
      std::set<std::pair<std::string, ThingId>> unique;
      for (const auto &binding : internal::Bindings(graph, event)) {
        unique.insert(binding);
      }
      for (const auto &[role, actor] : unique) {
        filled[role].insert(event);
        auto [it, fresh] = seen[role].try_emplace(actor, Seen{0, start});
        ++it->second.count;
        if (!fresh) it->second.first = std::min(it->second.first, start);
      }
    }
    for (const auto &[role, actors] : seen) {
      RoleDifferentiation row{appearance, role,
                              static_cast<int64_t>(filled[role].size()),
                              {}, {}};
      std::vector<std::pair<ThingId, Seen>> ranked(actors.begin(), actors.end());
      std::sort(ranked.begin(), ranked.end(), [&](const auto &a, const auto &b) {
        if (a.second.count != b.second.count) {
          return a.second.count > b.second.count;
        }
        if (a.second.first != b.second.first) {
          return a.second.first < b.second.first;
        }
        const std::string &na = NameOf(graph, a.first);
        const std::string &nb = NameOf(graph, b.first);
        if (na != nb) return na < nb;
        return a.first < b.first;
      });
      for (const auto &[actor, s] : ranked) {
        row.actors.push_back(
            {actor, s.count, static_cast<double>(s.count) / row.events});
      }
      row.most_probable = row.actors.front().actor;
      out.push_back(std::move(row));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string VariableName(size_t index) {
  static const char *kFirst[] = {"x", "y", "z"};
  if (index < 3) return kFirst[index];
  return "x" + std::to_string(index + 1);
}

bool ValidLiteral(const std::string &token) {
  try {
    Pattern::Literal(token);
    return true;
  } catch (const Error &) {
    return false;
  }
}

}  // namespace

Generalization AntiUnify(const std::vector<std::vector<std::string>> &sequences) {
  if (sequences.empty()) throw std::invalid_argument("nothing to anti-unify");
  const size_t length = sequences.front().size();
  if (length == 0) throw std::invalid_argument("empty sequence");
  for (const auto &sequence : sequences) {
    if (sequence.size() != length) {
      throw std::invalid_argument("sequences differ in length");
    }
  }
  Generalization out;
  std::vector<Pattern> elements;
  for (size_t i = 0; i < length; ++i) {
    std::set<std::string> tokens;
    for (const auto &sequence : sequences) tokens.insert(sequence[i]);
    if (tokens.size() == 1 && ValidLiteral(*tokens.begin())) {
      elements.push_back(Pattern::Literal(*tokens.begin()));
    } else {
      elements.push_back(Pattern::Variable(VariableName(out.domains.size())));
      out.domains.push_back(std::move(tokens));
    }
  }
  out.pattern = elements.size() == 1 ? std::move(elements.front())
                                     : Pattern::Seq(std::move(elements));
  return out;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  size_t Find(size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void Union(size_t a, size_t b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<size_t> parent_;
};

std::vector<std::vector<size_t>> Components(UnionFind *sets, size_t n) {
  std::map<size_t, std::vector<size_t>> groups;
  for (size_t i = 0; i < n; ++i) groups[sets->Find(i)].push_back(i);
  std::vector<std::vector<size_t>> out;
  for (auto &[root, members] : groups) out.push_back(std::move(members));
  return out;
}

}  // namespace

std::vector<std::vector<size_t>> GroupSequences(
    const std::vector<std::vector<std::string>> &sequences) {
  UnionFind sets(sequences.size());
  std::map<size_t, std::vector<size_t>> by_length;
  for (size_t i = 0; i < sequences.size(); ++i) {
    by_length[sequences[i].size()].push_back(i);
  }
  for (const auto &[length, members] : by_length) {
    if (length == 0) continue;
    for (size_t a = 0; a < members.size(); ++a) {
      for (size_t b = a + 1; b < members.size(); ++b) {
        const auto &sa = sequences[members[a]];
        const auto &sb = sequences[members[b]];
        size_t agree = 0;
        for (size_t i = 0; i < length; ++i) agree += sa[i] == sb[i];
        if (agree > 0 && 2 * agree >= length) sets.Union(members[a], members[b]);
      }
    }
  }
  return Components(&sets, sequences.size());
}

std::vector<AbstractAppearance> UnifyAppearances(Graph *graph,
                                                 int64_t min_support) {
  std::vector<ThingId> events;
  std::vector<std::vector<std::string>> texts;
  for (const ThingNode &node : graph->things()) {
    if (node.kind != ThingKind::kEvent) continue;
    const std::string *text = graph->StringProperty(node.id, "text");
    if (text == nullptr) continue;
    std::vector<std::string> norms;
    for (const Token &token : Tokenize(*text)) norms.push_back(token.norm);
    if (norms.empty()) continue;
    events.push_back(node.id);
    texts.push_back(std::move(norms));
  }
  KeyIndex keys(graph);
  std::map<std::string, ThingId> actors = ActorIndex(*graph);
  std::vector<AbstractAppearance> out;
  for (const auto &group : GroupSequences(texts)) {
    if (static_cast<int64_t>(group.size()) < min_support) continue;
    std::vector<std::vector<std::string>> members;
    for (size_t i : group) members.push_back(texts[i]);
    Generalization general = AntiUnify(members);
    const size_t variables = general.domains.size();
    if (variables == 0 || variables == members.front().size()) continue;
    const std::string rendered = RenderPattern(general.pattern);
    const ThingId abstract =
        keys.Get(ThingKind::kAppearance, "abstract:" + rendered, rendered);
    graph->SetProperty(abstract, kPatternProperty, rendered);
    AbstractAppearance result{abstract, general, {}};
    for (size_t i : group) {
      result.events.push_back(events[i]);
      for (ThingId appearance : internal::Targets(*graph, events[i], EdgeKind::kIs,
                                                  ThingKind::kAppearance)) {
        if (appearance != abstract) graph->AddEdge(Edge::Is(appearance, abstract));
      }
    }
    const std::vector<std::string> names = ListVariables(general.pattern);
    for (size_t v = 0; v < variables; ++v) {
      std::vector<ThingId> domain;
      for (const std::string &token : general.domains[v]) {
        auto it = actors.find(token);
        if (it == actors.end()) {
          it = actors.emplace(token, graph->AddThing(ThingKind::kActor, token))
                   .first;
        }
        domain.push_back(it->second);
      }
      AnySet(graph, &keys, abstract, names[v], domain);
    }
    out.push_back(std::move(result));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<size_t>> ClusterTimes(const std::vector<TimeSpec> &times,
                                              Tick window) {
  struct Piece {
    Interval interval;
    size_t owner;
  };
  std::vector<Piece> pieces;
  for (size_t i = 0; i < times.size(); ++i) {
    for (const Interval &interval : times[i].intervals()) {
      pieces.push_back({interval, i});
    }
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece &a, const Piece &b) {
    if (a.interval.start != b.interval.start) {
      return a.interval.start < b.interval.start;
    }
    return a.owner < b.owner;
  });
  const Tick reach_limit = std::max<Tick>(window, 1);
  UnionFind sets(times.size());
  bool open = false;
  Tick reach = 0;
  size_t holder = 0;
  for (const Piece &piece : pieces) {
    if (open && piece.interval.start - reach < reach_limit) {
      sets.Union(holder, piece.owner);
      if (piece.interval.end > reach) {
        reach = piece.interval.end;
        holder = piece.owner;
      }
    } else {
      open = true;
      reach = piece.interval.end;
      holder = piece.owner;
    }
  }
  std::vector<std::vector<size_t>> groups = Components(&sets, times.size());
  auto earliest = [&](const std::vector<size_t> &group) {
    Tick best = 0;
    bool any = false;
    for (size_t i : group) {
      if (times[i].empty()) continue;
      if (!any || times[i].start() < best) best = times[i].start();
      any = true;
    }
    return best;
  };
  std::stable_sort(groups.begin(), groups.end(),
                   [&](const auto &a, const auto &b) {
                     const Tick ea = earliest(a);
                     const Tick eb = earliest(b);
                     if (ea != eb) return ea < eb;
                     return a.front() < b.front();
                   });
  return groups;
}

std::vector<ThingId> ClusterEvents(Graph *graph, Tick window) {
  std::vector<ThingId> events;
  std::vector<TimeSpec> times;
  for (const ThingNode &node : graph->things()) {
    if (node.kind != ThingKind::kEvent) continue;
    const TimeSpec *spec = graph->Times(node.id);
    if (spec == nullptr || spec->empty()) continue;
    events.push_back(node.id);
    times.push_back(*spec);
  }
  KeyIndex keys(graph);
  std::vector<ThingId> out;
  for (const auto &group : ClusterTimes(times, window)) {
    std::vector<int64_t> ids;
    TimeSpec span;
    for (size_t i : group) {
      ids.push_back(events[i].value);
      span.Add(times[i]);
    }
    const ThingId coincidence =
        keys.Get(ThingKind::kCoincidence, "coincidence:" + JoinIds(ids), {});
    graph->SetTimes(coincidence, span);
    for (size_t i : group) {
      graph->AddEdge(Edge::Member(coincidence, SetKind::kAnd, events[i]));
    }
    out.push_back(coincidence);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Itemset> ClosedItemsets(
    const std::vector<std::vector<int64_t>> &transactions, int64_t min_support) {
  std::vector<std::vector<int64_t>> normalized;
  for (std::vector<int64_t> t : transactions) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    normalized.push_back(std::move(t));
  }
  std::set<std::vector<int64_t>> distinct(normalized.begin(), normalized.end());
  // Closed itemsets are exactly the non-empty intersections of transactions.
  std::set<std::vector<int64_t>> closed;
  for (const auto &t : distinct) {
    if (t.empty()) continue;
    std::vector<std::vector<int64_t>> fresh = {t};
    for (const auto &c : closed) {
      std::vector<int64_t> meet;
      std::set_intersection(c.begin(), c.end(), t.begin(), t.end(),
                            std::back_inserter(meet));
      if (!meet.empty()) fresh.push_back(std::move(meet));
    }
    closed.insert(fresh.begin(), fresh.end());
  }
  std::vector<Itemset> out;
  for (const auto &items : closed) {
    int64_t support = 0;
    for (const auto &t : normalized) {
      support += std::includes(t.begin(), t.end(), items.begin(), items.end());
    }
    if (support >= min_support) out.push_back({items, support});
  }
  return out;
}

std::vector<int64_t> CoincidenceItems(const Graph &graph, ThingId coincidence) {
  std::vector<int64_t> out;
  for (ThingId event : internal::Targets(graph, coincidence, EdgeKind::kMember,
                                         ThingKind::kEvent)) {
    for (ThingId appearance : internal::Targets(graph, event, EdgeKind::kIs,
                                                ThingKind::kAppearance)) {
      out.push_back(appearance.value);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ThingId> UnifySituations(Graph *graph,
                                     const std::vector<ThingId> &coincidences,
                                     int64_t min_support) {
  std::vector<std::vector<int64_t>> transactions;
  for (ThingId c : coincidences) {
    transactions.push_back(CoincidenceItems(*graph, c));
  }
  KeyIndex keys(graph);
  std::vector<ThingId> out;
  for (const Itemset &itemset : ClosedItemsets(transactions, min_support)) {
    std::vector<std::string> names;
    for (int64_t item : itemset.items) {
      names.push_back(NameOf(*graph, ThingId{item}));
    }
    std::sort(names.begin(), names.end());
    std::string name;
    for (size_t i = 0; i < names.size(); ++i) {
      if (i > 0) name += " & ";
      name += names[i];
    }
    const ThingId situation = keys.Get(
        ThingKind::kSituation, "situation:" + JoinIds(itemset.items), name);
    graph->SetProperty(situation, "support", Tick{itemset.support});
    for (int64_t item : itemset.items) {
      graph->AddEdge(Edge::Member(situation, SetKind::kAnd, ThingId{item}));
    }
    for (size_t i = 0; i < coincidences.size(); ++i) {
      const auto &t = transactions[i];
      if (std::includes(t.begin(), t.end(), itemset.items.begin(),
                        itemset.items.end())) {
        graph->AddEdge(Edge::Is(coincidences[i], situation));
      }
    }
    out.push_back(situation);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<size_t>> MaximalChains(const std::vector<ChainStep> &steps,
                                               const MiningConfig &config,
                                               size_t limit) {
  const size_t n = steps.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (steps[a].times.start() != steps[b].times.start()) {
      return steps[a].times.start() < steps[b].times.start();
    }
    return a < b;
  });
  std::vector<std::vector<size_t>> next(n);
  std::vector<bool> has_parent(n, false);
  for (size_t oa = 0; oa < n; ++oa) {
    const ChainStep &a = steps[order[oa]];
    for (size_t ob = oa + 1; ob < n; ++ob) {
      const ChainStep &b = steps[order[ob]];
      if (b.times.start() - a.times.end() > config.chain_max_gap) break;
      if (b.times.start() <= a.times.start()) continue;
      if (config.chain_requires_shared_actor) {
        bool shared = false;
        for (int64_t actor : a.actors) {
          if (b.actors.count(actor)) {
            shared = true;
            break;
          }
        }
        if (!shared) continue;
      }
      next[order[oa]].push_back(order[ob]);
      has_parent[order[ob]] = true;
    }
  }
  for (auto &children : next) std::sort(children.begin(), children.end());
  std::vector<std::vector<size_t>> out;
  std::vector<size_t> path;
  auto walk = [&](auto &&self, size_t node) -> void {
    path.push_back(node);
    if (next[node].empty()) {
      if (path.size() >= 2) {
        if (out.size() >= limit) {
          throw MiningError("chain_coincidences",
                            "more than " + std::to_string(limit) + " chains");
        }
        out.push_back(path);
      }
    } else {
      for (size_t child : next[node]) self(self, child);
    }
    path.pop_back();
  };
  for (size_t i = 0; i < n; ++i) {
    if (!has_parent[i]) walk(walk, i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ThingId> ChainCoincidences(Graph *graph,
                                       const std::vector<ThingId> &coincidences,
                                       const MiningConfig &config) {
  std::vector<ChainStep> steps;
  std::vector<ThingId> kept;
  for (ThingId c : coincidences) {
    const TimeSpec *times = graph->Times(c);
    if (times == nullptr || times->empty()) continue;
    ChainStep step{*times, {}};
    for (ThingId event : internal::Targets(*graph, c, EdgeKind::kMember,
                                           ThingKind::kEvent)) {
      for (const auto &[role, actor] : internal::Bindings(*graph, event)) {
        step.actors.insert(actor.value);
      }
    }
    steps.push_back(std::move(step));
    kept.push_back(c);
  }
  KeyIndex keys(graph);
  std::vector<ThingId> out;
  for (const auto &chain : MaximalChains(steps, config)) {
    std::vector<int64_t> ids;
    for (size_t i : chain) ids.push_back(kept[i].value);
    const ThingId process =
        keys.Get(ThingKind::kProcess, "process:" + JoinIds(ids), {});
    for (size_t i = 0; i < chain.size(); ++i) {
      graph->AddEdge(Edge::Member(process, SetKind::kSeq, kept[chain[i]],
                                  static_cast<int64_t>(i)));
    }
    out.push_back(process);
  }
  return out;
}

}  // namespace scenarist

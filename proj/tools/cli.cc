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

#include "cli.h"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "scenarist/definitions.h"
#include "scenarist/errors.h"
#include "scenarist/graph.h"
#include "scenarist/mining.h"
#include "scenarist/queries.h"

namespace scenarist::cli {

using nlohmann::json;

namespace {

int64_t FloorDiv(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Tick ParseTimestamp(const std::string &text, int64_t granularity) {
  if (granularity < 1) throw UsageError("granularity must be >= 1");
  static const std::regex kInteger(R"(-?\d+)");
  static const std::regex kIso(
      R"((\d{4})-(\d{2})-(\d{2})(?:[T ](\d{2}):(\d{2})(?::(\d{2})(?:\.\d+)?)?)"
      R"((Z|[+-]\d{2}:?\d{2})?)?)");
  std::smatch m;
  if (std::regex_match(text, kInteger)) return std::stoll(text);
  if (!std::regex_match(text, m, kIso)) {
    throw UsageError("unrecognized timestamp '" + text + "'");
  }
  using namespace std::chrono;
  const year_month_day date{year{std::stoi(m[1])},
                            month{static_cast<unsigned>(std::stoi(m[2]))},
                            day{static_cast<unsigned>(std::stoi(m[3]))}};
  if (!date.ok()) throw UsageError("invalid date '" + text + "'");
  int64_t seconds = sys_days(date).time_since_epoch() / std::chrono::seconds(1);
  if (m[4].matched) {
    const int hour = std::stoi(m[4]);
    const int minute = std::stoi(m[5]);
    const int second = m[6].matched ? std::stoi(m[6]) : 0;
    if (hour > 23 || minute > 59 || second > 60) {
      throw UsageError("invalid time of day '" + text + "'");
    }
    seconds += hour * 3600 + minute * 60 + second;
  }
  if (m[7].matched && m[7] != "Z") {
    std::string zone = m[7];
    zone.erase(std::remove(zone.begin(), zone.end(), ':'), zone.end());
    const int sign = zone[0] == '-' ? -1 : 1;
    const int offset =
        std::stoi(zone.substr(1, 2)) * 3600 + std::stoi(zone.substr(3, 2)) * 60;
    seconds -= sign * offset;
  }
  return FloorDiv(seconds, granularity);
}

std::vector<Document> ReadCorpus(std::istream &in, int64_t granularity) {
  std::vector<Document> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fail = [&](const std::string &message) {
      return UsageError("corpus line " + std::to_string(number) + ": " +
                        message);
    };
    json value;
    try {
      value = json::parse(line);
    } catch (const json::parse_error &e) {
      throw fail("malformed JSON");
    }
    if (!value.is_object()) throw fail("expected an object");
    Document doc;
    const auto text = value.find("text");
    if (text == value.end() || !text->is_string()) {
      throw fail("missing string field 'text'");
    }
    doc.text = text->get<std::string>();
    const auto time = value.find("time");
    if (time == value.end()) throw fail("missing field 'time'");
    if (time->is_number_integer()) {
      doc.time = time->get<int64_t>();
    } else if (time->is_string()) {
      try {
        doc.time = ParseTimestamp(time->get<std::string>(), granularity);
      } catch (const UsageError &e) {
        throw fail(e.what());
      }
    } else {
      throw fail("'time' must be an integer or an ISO-8601 string");
    }
    const auto source = value.find("source");
    if (source != value.end()) {
      if (!source->is_string()) throw fail("'source' must be a string");
      doc.source = source->get<std::string>();
    }
    out.push_back(std::move(doc));
  }
  if (in.bad()) throw IoError("error reading corpus");
  return out;
}

void WriteFileAtomic(const std::string &path, const std::string &contents) {
  const std::string temp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream file(temp, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot write " + path);
    file << contents;
    file.flush();
    if (!file) {
      std::remove(temp.c_str());
      throw IoError("cannot write " + path);
    }
  }
  if (std::rename(temp.c_str(), path.c_str()) != 0) {
    std::remove(temp.c_str());
    throw IoError("cannot rename onto " + path);
  }
}

std::string ReadFile(const std::string &path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot read " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  if (file.bad()) throw IoError("error reading " + path);
  return buffer.str();
}

namespace {

struct Settings {
  std::string definitions;
  std::string corpus;
  std::string snapshot;
  std::string out;
  std::string config;
  int64_t granularity = 1;
  MiningConfig mining;

  // Overrides given on the command line, applied after --config.
  std::optional<int64_t> min_support;
  std::optional<double> fork_epsilon;
  std::optional<double> trigger_min_shift;
  std::optional<Tick> window;
  std::optional<Tick> max_gap;
  std::optional<bool> shared_actor;
  std::optional<int64_t> granularity_flag;
};

void ApplyConfig(Settings *s) {
  if (!s->config.empty()) {
    json value;
    try {
      value = json::parse(ReadFile(s->config));
    } catch (const json::parse_error &e) {
      throw UsageError("config: malformed JSON");
    }
    if (!value.is_object()) throw UsageError("config: expected an object");
    try {
      for (const auto &[key, v] : value.items()) {
        if (key == "coincidence_window") {
          s->mining.coincidence_window = v.get<Tick>();
        } else if (key == "chain_max_gap") {
          s->mining.chain_max_gap = v.get<Tick>();
        } else if (key == "chain_requires_shared_actor") {
          s->mining.chain_requires_shared_actor = v.get<bool>();
        } else if (key == "min_support") {
          s->mining.min_support = v.get<int64_t>();
        } else if (key == "fork_epsilon") {
          s->mining.fork_epsilon = v.get<double>();
        } else if (key == "trigger_min_shift") {
          s->mining.trigger_min_shift = v.get<double>();
        } else if (key == "granularity") {
          s->granularity = v.get<int64_t>();
        } else {
          throw UsageError("config: unknown key '" + key + "'");
        }
      }
    } catch (const json::type_error &e) {
      throw UsageError("config: wrong value type");
    }
  }
  if (s->min_support) s->mining.min_support = *s->min_support;
  if (s->fork_epsilon) s->mining.fork_epsilon = *s->fork_epsilon;
  if (s->trigger_min_shift) s->mining.trigger_min_shift = *s->trigger_min_shift;
  if (s->window) s->mining.coincidence_window = *s->window;
  if (s->max_gap) s->mining.chain_max_gap = *s->max_gap;
  if (s->shared_actor) s->mining.chain_requires_shared_actor = *s->shared_actor;
  if (s->granularity_flag) s->granularity = *s->granularity_flag;
  if (s->granularity < 1) throw UsageError("granularity must be >= 1");
  try {
    s->mining.Validate();
  } catch (const std::invalid_argument &e) {
    throw UsageError(e.what());
  }
}

void Emit(const std::string &path, const std::string &text, std::ostream &out) {
  if (path.empty()) {
    out << text << "\n";
  } else {
    WriteFileAtomic(path, text + "\n");
  }
}

Graph Extract(const Settings &s, json *summary) {
  const std::vector<ThingDefinition> definitions =
      ParseDefinitions(ReadFile(s.definitions));
  std::ifstream corpus(s.corpus, std::ios::binary);
  if (!corpus) throw IoError("cannot read " + s.corpus);
  const std::vector<Document> documents = ReadCorpus(corpus, s.granularity);
  Graph graph;
  EventExtractor extractor(&graph, definitions);
  int64_t events = 0;
  for (const Document &doc : documents) events += extractor.Extract(doc).size();
  json per_definition = json::object();
  for (const ThingDefinition &def : definitions) {
    auto it = extractor.counts().find(def.name);
    per_definition[def.name] = it == extractor.counts().end() ? 0 : it->second;
  }
  *summary = {{"documents", documents.size()},
              {"events", events},
              {"per_definition", per_definition}};
  return graph;
}

std::string Mine(Graph *graph, const Settings &s, std::ostream &err) {
  const MiningReport report = RunPipeline(graph, s.mining);
  err << "mined " << report.nodes_created << " new nodes\n";
  return ReportJson(*graph, report);
}

// A thing argument: a numeric id, or a name resolved to the lowest id of
// the expected kind.
std::optional<ThingId> ResolveThing(const Graph &graph, const std::string &arg,
                                    ThingKind kind, std::ostream &err) {
  static const std::regex kId(R"(\d+)");
  if (std::regex_match(arg, kId)) {
    const ThingId id{std::stoll(arg)};
    if (!graph.Contains(id)) throw UsageError("unknown thing id " + arg);
    return id;
  }
  for (const ThingNode &node : graph.things()) {
    if (node.kind == kind && node.name == arg) return node.id;
  }
  err << "no " << ThingKindName(kind) << " named '" << arg << "'\n";
  return std::nullopt;
}

TimeSpec ParseTimeArg(const std::string &arg) {
  static const std::regex kRange(R"((-?\d+)(?:\.\.(-?\d+))?)");
  std::smatch m;
  if (!std::regex_match(arg, m, kRange)) {
    throw UsageError("time must be 't' or 'a..b', got '" + arg + "'");
  }
  const Tick start = std::stoll(m[1]);
  const Tick end = m[2].matched ? std::stoll(m[2]) : start;
  if (start > end) throw UsageError("empty time range '" + arg + "'");
  return TimeSpec::Range(start, end);
}

std::string ValidNames() {
  std::string names = "timespan_of";
  for (const QueryFunction &f : QueryInventory()) names += ", " + f.name;
  return names;
}

json SetJson(const Graph &graph, const WeightedSet &set) {
  json out = json::array();
  for (const auto &member : set) {
    const ThingNode &node = graph.Thing(member.id);
    out.push_back({{"id", member.id.value},
                   {"name", node.name ? json(*node.name) : json(nullptr)},
                   {"kind", ThingKindName(node.kind)},
                   {"weight", member.weight}});
  }
  return out;
}

struct QueryFlags {
  std::string function;
  std::vector<std::string> args;
  std::optional<std::string> role;
  std::optional<std::string> time;
  std::optional<int64_t> order;
  double attenuation = 1.0;
};

std::string Query(const Graph &graph, const QueryFlags &q, std::ostream &err) {
  if (q.function == "timespan_of") {
    if (q.args.size() != 1) throw UsageError("timespan_of takes one thing");
    static const std::regex kId(R"(\d+)");
    std::optional<ThingId> id;
    if (std::regex_match(q.args[0], kId)) {
      id = ResolveThing(graph, q.args[0], ThingKind::kGeneric, err);
    } else {
      std::ostringstream quiet;
      for (ThingKind kind : {ThingKind::kEvent, ThingKind::kCoincidence,
                             ThingKind::kActor, ThingKind::kProcess}) {
        if ((id = ResolveThing(graph, q.args[0], kind, quiet))) break;
      }
      if (!id) err << "nothing with a time span named '" << q.args[0] << "'\n";
    }
    if (!id) return "[]";
    json intervals = json::array();
    const TimeSpec span = TimespanOf(graph, *id);
    for (const Interval &i : span.intervals()) {
      intervals.push_back({i.start, i.end});
    }
    return intervals.dump();
  }
  const QueryFunction *function = FindQuery(q.function);
  if (function == nullptr) {
    throw UsageError("unknown function '" + q.function +
                     "'; valid names: " + ValidNames());
  }
  size_t required = 0;
  for (const QueryParam &p : function->params) required += !p.optional;
  if (q.args.size() < required || q.args.size() > function->params.size()) {
    throw UsageError(function->name + " takes " + std::to_string(required) +
                     (required == function->params.size()
                          ? ""
                          : "-" + std::to_string(function->params.size())) +
                     " arguments");
  }
  if (q.role && !function->uses_role) {
    throw UsageError(function->name + " does not take --role");
  }
  if (q.time && !function->uses_time) {
    throw UsageError(function->name + " does not take --time");
  }
  if (q.order && !function->uses_order) {
    throw UsageError(function->name + " does not take --order");
  }
  QueryArgs args;
  args.scope.role = q.role;
  if (q.time) args.scope.time = ParseTimeArg(*q.time);
  args.scope.order = q.order;
  args.options.is_attenuation = q.attenuation;
  bool unresolved = false;
  for (size_t i = 0; i < function->params.size(); ++i) {
    const QueryParam &p = function->params[i];
    if (p.type == QueryParam::Type::kTime) {
      args.times.push_back(i < q.args.size()
                               ? std::optional(ParseTimeArg(q.args[i]))
                               : std::nullopt);
      continue;
    }
    std::optional<ThingId> id;
    if (i < q.args.size()) {
      id = ResolveThing(graph, q.args[i], p.kind, err);
      unresolved |= !id;
    }
    args.things.push_back(id);
  }
  if (unresolved) return "[]";
  return SetJson(graph, function->run(graph, args)).dump();
}

Graph LoadSnapshot(const std::string &path) {
  return LoadJson(ReadFile(path));
}

}  // namespace

int Run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Event extraction and scenario mining over text corpora",
               "scenarist"};
  app.require_subcommand(1);
  Settings s;

  auto mining_flags = [&](CLI::App *cmd) {
    cmd->add_option("--config", s.config, "JSON file with mining settings");
    cmd->add_option("--min-support", s.min_support);
    cmd->add_option("--fork-epsilon", s.fork_epsilon);
    cmd->add_option("--trigger-min-shift", s.trigger_min_shift);
    cmd->add_option("--window", s.window, "Coincidence window in ticks");
    cmd->add_option("--max-gap", s.max_gap, "Largest chaining gap in ticks");
    cmd->add_option("--shared-actor", s.shared_actor,
                    "Chained coincidences must share an actor");
  };

  CLI::App *extract = app.add_subcommand("extract", "Extract events into a snapshot");
  extract->add_option("--definitions", s.definitions)->required();
  extract->add_option("--corpus", s.corpus)->required();
  extract->add_option("--snapshot", s.snapshot, "Snapshot to write")->required();
  extract->add_option("--out", s.out, "Summary path (default stdout)");
  extract->add_option("--granularity", s.granularity_flag, "Seconds per tick");
  extract->add_option("--config", s.config, "JSON file with settings");

  CLI::App *mine = app.add_subcommand("mine", "Mine a snapshot");
  std::string save;
  mine->add_option("--snapshot", s.snapshot, "Snapshot to mine")->required();
  mine->add_option("--out", s.out, "Report path (default stdout)");
  mine->add_option("--save", save,
                   "Where to write the mined snapshot (default --snapshot)");
  mining_flags(mine);

  CLI::App *query = app.add_subcommand("query", "Evaluate a query function");
  QueryFlags q;
  query->add_option("--snapshot", s.snapshot)->required();
  query->add_option("function", q.function)->required();
  query->add_option("args", q.args, "Thing ids or names, times as t or a..b");
  query->add_option("--role", q.role);
  query->add_option("--time", q.time);
  query->add_option("--order", q.order);
  query->add_option("--attenuation", q.attenuation,
                    "Weight factor per extra Is hop");

  CLI::App *run = app.add_subcommand("run", "Extract and mine in one go");
  run->add_option("--definitions", s.definitions)->required();
  run->add_option("--corpus", s.corpus)->required();
  run->add_option("--snapshot", s.snapshot, "Also write the mined snapshot");
  run->add_option("--out", s.out, "Report path (default stdout)");
  run->add_option("--granularity", s.granularity_flag, "Seconds per tick");
  mining_flags(run);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }

  try {
    if (extract->parsed()) {
      ApplyConfig(&s);
      json summary;
      Graph graph = Extract(s, &summary);
      WriteFileAtomic(s.snapshot, SaveJson(graph));
      Emit(s.out, summary.dump(), out);
    } else if (mine->parsed()) {
      ApplyConfig(&s);
      Graph graph = LoadSnapshot(s.snapshot);
      const std::string report = Mine(&graph, s, err);
      Emit(s.out, report, out);
      WriteFileAtomic(save.empty() ? s.snapshot : save, SaveJson(graph));
    } else if (query->parsed()) {
      const Graph graph = LoadSnapshot(s.snapshot);
      out << Query(graph, q, err) << "\n";
    } else if (run->parsed()) {
      ApplyConfig(&s);
      json summary;
      Graph graph = Extract(s, &summary);
      err << "extracted " << summary["events"] << " events\n";
      const std::string report = Mine(&graph, s, err);
      if (!s.snapshot.empty()) WriteFileAtomic(s.snapshot, SaveJson(graph));
      Emit(s.out, report, out);
    }
  } catch (const IoError &e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const MiningError &e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const DefinitionError &e) {
    err << "error: " << s.definitions << ": " << e.what() << "\n";
    return kDomainError;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kOk;
}

}  // namespace scenarist::cli

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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "corpora.h"
#include "json.hpp"
#include "scenarist/extract.h"
#include "scenarist/queries.h"

namespace scenarist::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(const std::vector<std::string> &args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = Run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("scenarist_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string &name, const std::string &contents) {
    const std::string path = (dir_ / name).string();
    std::ofstream(path) << contents;
    return path;
  }
  std::string Path(const std::string &name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const char kSanctions[] =
    "There name sanctions patterns \"{obama trump} {forced suggested} "
    "$organization to {impose implement apply} sanctions against $target\", "
    "has organization, target.\n";

TEST(ParseTimestampTest, Forms) {
  EXPECT_EQ(ParseTimestamp("42", 1), 42);
  EXPECT_EQ(ParseTimestamp("-3", 1), -3);
  EXPECT_EQ(ParseTimestamp("1970-01-02", 1), 86400);
  EXPECT_EQ(ParseTimestamp("1970-01-02", 3600), 24);
  EXPECT_EQ(ParseTimestamp("1970-01-01T01:00:00+01:00", 1), 0);
  EXPECT_EQ(ParseTimestamp("1970-01-01T00:00:59Z", 60), 0);
  EXPECT_EQ(ParseTimestamp("1969-12-31T23:59:59Z", 60), -1);
  EXPECT_EQ(ParseTimestamp("2020-02-29 12:30", 1), 1582979400);
  EXPECT_THROW(ParseTimestamp("2021-02-29", 1), UsageError);
  EXPECT_THROW(ParseTimestamp("yesterday", 1), UsageError);
  EXPECT_THROW(ParseTimestamp("1", 0), UsageError);
}

TEST(ReadCorpusTest, LinesAndErrors) {
  std::istringstream good(
      "{\"time\": 5, \"text\": \"a\", \"source\": \"s\", \"extra\": 1}\n"
      "\n"
      "{\"time\": \"1970-01-01T00:01:00Z\", \"text\": \"b\"}\n");
  const auto docs = ReadCorpus(good, 60);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0].source, "s");
  EXPECT_EQ(docs[1].time, 1);
  for (const char *bad : {"{\"time\": 1}", "{\"time\": 1, \"text\": \"a\"",
                          "[1]", "{\"text\": \"a\"}",
                          "{\"time\": 1.5, \"text\": \"a\"}"}) {
    std::istringstream in(std::string("{\"time\": 1, \"text\": \"ok\"}\n") + bad + "\n");
    try {
      ReadCorpus(in, 1);
      ADD_FAILURE() << bad;
    } catch (const UsageError &e) {
      EXPECT_NE(std::string(e.what()).find("corpus line 2"), std::string::npos) << e.what();
    }
  }
}

TEST_F(CliTest, ExtractSanctions) {
  const auto defs = Write("defs.txt", kSanctions);
  const auto corpus = Write(
      "corpus.jsonl",
      "{\"time\": 100, \"text\": \"Obama forced the EU to impose sanctions "
      "against Russia\", \"source\": \"news\"}\n");
  const auto r = Invoke({"extract", "--definitions", defs, "--corpus", corpus,
                         "--snapshot", Path("g.json")});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json summary = json::parse(r.out);
  EXPECT_EQ(summary["documents"], 1);
  EXPECT_EQ(summary["events"], 1);
  EXPECT_EQ(summary["per_definition"]["sanctions"], 1);
  const auto q = Invoke({"query", "--snapshot", Path("g.json"), "actors_of_role", "target"});
  ASSERT_EQ(q.code, kOk) << q.err;
  const json actors = json::parse(q.out);
  ASSERT_EQ(actors.size(), 1u);
  EXPECT_EQ(actors[0]["name"], "russia");
  EXPECT_EQ(actors[0]["kind"], "actor");
  EXPECT_EQ(actors[0]["weight"], 1.0);
}

TEST_F(CliTest, ExtractEmptyCorpus) {
  const auto r = Invoke({"extract", "--definitions", Write("d.txt", kSanctions),
                         "--corpus", Write("c.jsonl", ""), "--snapshot",
                         Path("g.json"), "--out", Path("summary.json")});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(json::parse(ReadFile(Path("summary.json")))["events"], 0);
  EXPECT_TRUE(fs::exists(Path("g.json")));
}

TEST_F(CliTest, ExtractErrors) {
  const auto defs = Write("d.txt", kSanctions);
  const auto bad = Write("bad.jsonl", "{\"time\": 1, \"text\": \"x\"}\nnot json\n");
  auto r = Invoke({"extract", "--definitions", defs, "--corpus", bad,
                   "--snapshot", Path("g.json")});
  EXPECT_EQ(r.code, kDomainError);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_FALSE(fs::exists(Path("g.json")));

  r = Invoke({"extract", "--definitions", Write("bad.txt", "There name x patterns \"{a\"."),
              "--corpus", Write("c.jsonl", ""), "--snapshot", Path("g.json")});
  EXPECT_EQ(r.code, kDomainError);
  EXPECT_NE(r.err.find("bad.txt"), std::string::npos) << r.err;

  r = Invoke({"extract", "--definitions", Path("missing.txt"), "--corpus", bad,
              "--snapshot", Path("g.json")});
  EXPECT_EQ(r.code, kIoError);
  r = Invoke({"extract", "--definitions", defs, "--corpus", Write("c.jsonl", ""),
              "--snapshot", Path("no/such/dir/g.json")});
  EXPECT_EQ(r.code, kIoError);
  EXPECT_EQ(Invoke({"extract"}).code, kDomainError);
  EXPECT_EQ(Invoke({"bogus"}).code, kDomainError);
}

TEST_F(CliTest, MineCrosswalkIsDeterministic) {
  const auto corpus = testing::CrosswalkCorpus(3, 100, nullptr);
  const auto defs = Write("d.txt", corpus.definitions);
  const auto lines = Write("c.jsonl", corpus.jsonl);
  ASSERT_EQ(Invoke({"extract", "--definitions", defs, "--corpus", lines,
                    "--snapshot", Path("g.json")}).code, kOk);
  const auto a = Invoke({"mine", "--snapshot", Path("g.json"), "--save", Path("a.json")});
  const auto b = Invoke({"mine", "--snapshot", Path("g.json"), "--save", Path("b.json")});
  ASSERT_EQ(a.code, kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(ReadFile(Path("a.json")), ReadFile(Path("b.json")));
  const json report = json::parse(a.out);
  EXPECT_EQ(report["forks"].size(), 1u);
  EXPECT_GE(report["triggers"].size(), 1u);
  // Mining the mined snapshot again changes nothing.
  const auto again = Invoke({"mine", "--snapshot", Path("a.json")});
  EXPECT_EQ(again.out, a.out);
  EXPECT_NE(again.err.find("mined 0 new nodes"), std::string::npos) << again.err;
  EXPECT_EQ(ReadFile(Path("a.json")), ReadFile(Path("b.json")));

  const auto run = Invoke({"run", "--definitions", defs, "--corpus", lines});
  ASSERT_EQ(run.code, kOk) << run.err;
  EXPECT_EQ(run.out, a.out);
}

TEST_F(CliTest, MineFlagsAndConfig) {
  const auto corpus = testing::CrosswalkCorpus(3, 40, nullptr);
  const auto defs = Write("d.txt", corpus.definitions);
  const auto lines = Write("c.jsonl", corpus.jsonl);
  // A huge support threshold leaves no scenarios.
  auto r = Invoke({"run", "--definitions", defs, "--corpus", lines, "--min-support", "1000"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(json::parse(r.out)["scenarios"].empty());
  r = Invoke({"run", "--definitions", defs, "--corpus", lines, "--config",
              Write("cfg.json", "{\"min_support\": 1000}")});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(json::parse(r.out)["scenarios"].empty());
  r = Invoke({"run", "--definitions", defs, "--corpus", lines, "--config",
              Write("bad.json", "{\"min_suport\": 2}")});
  EXPECT_EQ(r.code, kDomainError);
  r = Invoke({"run", "--definitions", defs, "--corpus", lines, "--fork-epsilon", "2"});
  EXPECT_EQ(r.code, kDomainError);
  EXPECT_NE(r.err.find("fork_epsilon"), std::string::npos) << r.err;
}

TEST_F(CliTest, MineEmptySnapshot) {
  Graph empty;
  Write("g.json", SaveJson(empty));
  const auto r = Invoke({"mine", "--snapshot", Path("g.json")});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json report = json::parse(r.out);
  EXPECT_TRUE(report["scenarios"].empty());
  EXPECT_TRUE(report["forks"].empty());
  EXPECT_EQ(Invoke({"mine", "--snapshot", Path("none.json")}).code, kIoError);
  Write("broken.json", "{\"things\": [");
  EXPECT_EQ(Invoke({"mine", "--snapshot", Path("broken.json")}).code, kDomainError);
}

TEST_F(CliTest, QueryStoplight) {
  Graph g;
  EventRecorder recorder(&g);
  const char *colors[] = {"red", "green", "yellow", "red"};
  for (int i = 0; i < 4; ++i) {
    recorder.RecordEvent("light", {{"light color", colors[i]}},
                         TimeSpec::Point(i + 1), "", "");
  }
  Write("g.json", SaveJson(g));
  auto r = Invoke({"query", "--snapshot", Path("g.json"), "actors_of_role", "light color"});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::set<std::string> names;
  for (const auto &m : json::parse(r.out)) names.insert(m["name"]);
  EXPECT_EQ(names, (std::set<std::string>{"red", "yellow", "green"}));

  r = Invoke({"query", "--snapshot", Path("g.json"), "timespan_of", "red"});
  EXPECT_EQ(json::parse(r.out), json::parse("[[1,1],[4,4]]"));
  r = Invoke({"query", "--snapshot", Path("g.json"), "events_at", "2..3"});
  EXPECT_EQ(json::parse(r.out).size(), 2u);
  r = Invoke({"query", "--snapshot", Path("g.json"), "events_of_actor", "red", "--time", "3..9"});
  EXPECT_EQ(json::parse(r.out).size(), 1u);
  r = Invoke({"query", "--snapshot", Path("g.json"), "timespan_of", "nobody"});
  EXPECT_EQ(r.out, "[]\n");

  r = Invoke({"query", "--snapshot", Path("g.json"), "actors_of_everything", "x"});
  EXPECT_EQ(r.code, kDomainError);
  EXPECT_NE(r.err.find("actors_of_role"), std::string::npos);
  EXPECT_EQ(Invoke({"query", "--snapshot", Path("g.json"), "actors_of_role", "999"}).code,
            kDomainError);
  EXPECT_EQ(Invoke({"query", "--snapshot", Path("g.json"), "actors_of_role", "red", "--order", "1"}).code,
            kDomainError);
  EXPECT_EQ(Invoke({"query", "--snapshot", Path("g.json"), "events_at", "5..2"}).code,
            kDomainError);
}

TEST_F(CliTest, QueryEmptySnapshot) {
  Graph empty;
  Write("g.json", SaveJson(empty));
  const auto r = Invoke({"query", "--snapshot", Path("g.json"), "actors_of_role", "anything"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "[]\n");
}

// Every inventory function through the command line equals the library.
TEST_F(CliTest, QueryParityWithLibrary) {
  const auto corpus = testing::CrosswalkCorpus(4, 30, nullptr);
  ASSERT_EQ(Invoke({"run", "--definitions", Write("d.txt", corpus.definitions),
                    "--corpus", Write("c.jsonl", corpus.jsonl), "--snapshot",
                    Path("g.json")}).code, kOk);
  const Graph g = LoadJson(ReadFile(Path("g.json")));
  std::map<ThingKind, std::vector<ThingId>> by_kind;
  for (const ThingNode &n : g.things()) {
    if (by_kind[n.kind].size() < 4) by_kind[n.kind].push_back(n.id);
  }
  int compared = 0;
  for (const QueryFunction &f : QueryInventory()) {
    for (size_t pick = 0; pick < 4; ++pick) {
      std::vector<std::string> args = {"query", "--snapshot", Path("g.json"), f.name};
      QueryArgs library;
      bool usable = true;
      for (const QueryParam &p : f.params) {
        if (p.type == QueryParam::Type::kTime) {
          args.push_back("0.." + std::to_string(40 * pick + 25));
          library.times.push_back(TimeSpec::Range(0, 40 * pick + 25));
        } else if (p.optional) {
          library.things.push_back(std::nullopt);
        } else {
          const auto &ids = by_kind[p.kind];
          if (pick >= ids.size()) {
            usable = false;
            break;
          }
          args.push_back(std::to_string(ids[pick].value));
          library.things.push_back(ids[pick]);
        }
      }
      if (!usable) continue;
      if (f.uses_role) {
        args.insert(args.end(), {"--role", "pedestrian"});
        library.scope.role = "pedestrian";
      }
      if (f.uses_order && pick % 2 == 1) {
        args.insert(args.end(), {"--order", "1"});
        library.scope.order = 1;
      }
      const auto r = Invoke(args);
      ASSERT_EQ(r.code, kOk) << f.name << ": " << r.err;
      std::map<int64_t, double> got;
      for (const auto &m : json::parse(r.out)) got[m["id"]] = m["weight"];
      std::map<int64_t, double> expected;
      for (const auto &m : f.run(g, library)) expected[m.id.value] = m.weight;
      EXPECT_EQ(got, expected) << f.name << " pick " << pick;
      ++compared;
    }
  }
  EXPECT_GE(compared, 24 * 3);
}

}  // namespace
}  // namespace scenarist::cli

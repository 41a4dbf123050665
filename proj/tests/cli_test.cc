// Copyright 2026 The gamebush Authors.
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gamebush/cli.h"
#include "gamebush/error.h"
#include "gamebush/game_bundle.h"
#include "gamebush/payoff_model.h"
#include "gamebush/strategies.h"
#include "gamebush/subgames.h"
#include "gamebush/sweep.h"
#include "json.hpp"

namespace gamebush {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string Data(const std::string& name) {
  return std::string(GB_DATA_DIR) + "/" + name;
}

// A fresh scratch directory per call.
fs::path Scratch(const std::string& tag) {
  static int counter = 0;
  fs::path p = fs::temp_directory_path() /
               ("gbush_cli_" + tag + "_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void Dump(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
  json Json() const { return json::parse(out); }
  json Error() const { return json::parse(err); }
};

Outcome RunCli(const cli::RunConfig& config) {
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::Run(config, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

cli::RunConfig Verb(const std::string& verb, const std::string& input = "") {
  cli::RunConfig c;
  c.verb = verb;
  c.input = input;
  return c;
}

// The subgame of Example 1 played by Two and Three, with roots X and Y.
std::string WriteEx1Subgame(const fs::path& dir) {
  GameBundle full = LoadBundle(Data("ex1.gb.json"));
  const GameBush& bush = full.bush;
  GameBundle sub = Restrict(full, Closure(bush, {bush.RequireIndex("X"),
                                                 bush.RequireIndex("Y")}));
  fs::path p = dir / "ex1_sub.gb.json";
  Dump(p, BundleToJson(sub).dump(2));
  return p.string();
}

TEST_CASE("config validation") {
  cli::RunConfig c = Verb("validate", Data("ex2.gb.json"));
  CHECK_NOTHROW(cli::CheckRunConfig(c));
  auto bad = [&](auto edit) {
    cli::RunConfig copy = c;
    edit(copy);
    CHECK_THROWS_AS(cli::CheckRunConfig(copy), ValidationError);
  };
  bad([](cli::RunConfig& x) { x.tolerance = 0.0; });
  bad([](cli::RunConfig& x) { x.tolerance = -1.0; });
  bad([](cli::RunConfig& x) { x.mesh = 1; });
  bad([](cli::RunConfig& x) { x.epsilon = 0.0; });
  bad([](cli::RunConfig& x) { x.bound_b = -2.0; });
  bad([](cli::RunConfig& x) { x.support_cap = 0; });
  bad([](cli::RunConfig& x) { x.format = "xml"; });
  CHECK_THROWS(cli::CheckRunConfig([&] {
    cli::RunConfig x = c;
    x.selector = "sideways";
    return x;
  }()));

  cli::RunConfig r = c;
  r.epsilon = 0.1;
  r.bound_b = 5.0;
  r.support_cap = 8;
  r.seed = 3;
  SolverConfig s = cli::MakeSolverConfig(r);
  REQUIRE(s.regularization.has_value());
  CHECK(s.regularization->epsilon == 0.1);
  CHECK(s.regularization->bound_b == 5.0);
  CHECK(s.support_cap == 8);
  CHECK(s.seed == 3);
  CHECK_FALSE(cli::MakeSolverConfig(c).regularization.has_value());
}

TEST_CASE("validate") {
  Outcome ok = RunCli(Verb("validate", Data("ex2.gb.json")));
  CHECK(ok.code == 0);
  CHECK(ok.err.empty());
  json j = ok.Json();
  CHECK(j["valid"] == true);
  CHECK(j["players"] == json{"One", "Two"});
  CHECK(j["roots"] == json{"o"});
  CHECK(j["perfect_recall"] == true);

  fs::path dir = Scratch("validate");
  json broken = json::parse(Slurp(Data("ex2.gb.json")));
  broken["arrows"].push_back({"X", "Ya"});
  Dump(dir / "broken.json", broken.dump());
  Outcome bad = RunCli(Verb("validate", (dir / "broken.json").string()));
  CHECK(bad.code == 1);
  CHECK(bad.Json()["valid"] == false);

  Dump(dir / "garbage.json", "{ not json");
  Outcome parse = RunCli(Verb("validate", (dir / "garbage.json").string()));
  CHECK(parse.code == 1);
  CHECK(parse.out.empty());
  CHECK(parse.Error()["error"]["kind"] == "parse");
  fs::remove_all(dir);
}

TEST_CASE("errors go to the error stream as JSON") {
  Outcome missing = RunCli(Verb("solve"));
  CHECK(missing.code == 1);
  CHECK(missing.Error()["error"]["kind"] == "parse");
  CHECK(missing.Error()["error"]["message"].is_string());

  Outcome verb = RunCli(Verb("dance", Data("ex2.gb.json")));
  CHECK(verb.code == 1);
  CHECK(verb.Error()["error"]["kind"] == "validation");

  cli::RunConfig mesh = Verb("sweep", Data("ex2.gb.json"));
  mesh.mesh = 1;
  CHECK(RunCli(mesh).Error()["error"]["kind"] == "validation");

  cli::RunConfig q = Verb("solve", Data("ex2.gb.json"));
  q.q = {0.5, 0.5};
  Outcome wrong_q = RunCli(q);
  CHECK(wrong_q.code == 1);
  CHECK(wrong_q.Error()["error"]["kind"] == "validation");

  cli::RunConfig ex = Verb("example");
  ex.example = "ex9";
  CHECK(RunCli(ex).code == 1);
}

TEST_CASE("solve reports certified equilibria") {
  Outcome o = RunCli(Verb("solve", Data("ex2.gb.json")));
  REQUIRE(o.code == 0);
  json j = o.Json();
  CHECK(j["converged"] == true);
  CHECK(j["q"] == json{1.0});
  REQUIRE(j["equilibria"].size() >= 2);

  GameBundle bundle = LoadBundle(Data("ex2.gb.json"));
  StrategyTables tables(bundle.bush);
  const std::vector<double> q = {1.0};
  for (const json& eq : j["equilibria"]) {
    CHECK(ReverifyJson(bundle, tables, q, eq, SolverConfig{}).valid());
  }
}

TEST_CASE("solve without a certified point exits with 2") {
  fs::path dir = Scratch("noplan");
  GameBush bush;
  bush.AddPlayer("One");
  for (const char* id : {"o", "a", "b"}) bush.AddVertex(id);
  bush.AddArrow("o", "a");
  bush.AddArrow("o", "b");
  bush.AddInfoSet(0, "root", {"x", "y"}, {{"o", {"a", "b"}}});
  bush.SetRootPartition(0, {{"o"}});
  bush.SetTerminalPartition(0, {{"a", "b"}});
  bush.Finalize();
  GameBundle empty = MakeBundle(bush, {{{1, 2}, PayoffModel::Nearest(2, 1, {}, 0.1)}});
  Dump(dir / "empty.gb.json", BundleToJson(empty).dump());

  cli::RunConfig c = Verb("solve", (dir / "empty.gb.json").string());
  c.support_cap = 1;  // no enumeration, so nothing vouches for the empty set
  c.out_dir = (dir / "out").string();
  Outcome o = RunCli(c);
  CHECK(o.code == 2);
  CHECK(o.Json()["converged"] == false);
  CHECK(o.Error()["error"]["kind"] == "non-convergence");
  // Partial results still land on disk.
  CHECK(fs::exists(dir / "out" / "solve.json"));
  fs::remove_all(dir);
}

TEST_CASE("sweep writes CSV and JSON") {
  fs::path dir = Scratch("sweep");
  cli::RunConfig c = Verb("sweep", WriteEx1Subgame(dir));
  c.mesh = 4;
  c.format = "csv";
  c.out_dir = (dir / "out").string();
  Outcome o = RunCli(c);
  REQUIRE(o.code == 0);
  std::istringstream lines(o.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "q_X,q_Y,player,equilibrium,payoff,residual");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) {
    CHECK(std::count(line.begin(), line.end(), ',') == 5);
    ++rows;
  }
  CHECK(rows > 0);
  CHECK(Slurp(dir / "out" / "sweep.csv") == o.out);

  // Every row of the JSON file re-verifies at its own q.
  json doc = json::parse(Slurp(dir / "out" / "sweep.json"));
  CHECK(doc["mesh"] == 4);
  CHECK(doc["rows"].size() == 5);
  GameBundle bundle = LoadBundle(c.input);
  StrategyTables tables(bundle.bush);
  for (const json& row : doc["rows"]) {
    std::vector<double> q = row["q"].get<std::vector<double>>();
    CHECK(std::abs(q[0] + q[1] - 1.0) < 1e-15);
    for (const json& eq : row["equilibria"]) {
      CHECK(ReverifyJson(bundle, tables, q, eq, SolverConfig{}).valid());
    }
  }
  fs::remove_all(dir);
}

TEST_CASE("reports are byte-identical across runs") {
  fs::path dir = Scratch("determinism");
  const std::string input = WriteEx1Subgame(dir);
  for (const char* verb : {"validate", "subgames", "sweep", "perfect"}) {
    cli::RunConfig c = Verb(verb, input);
    c.mesh = 4;
    c.seed = 7;
    Outcome a = RunCli(c), b = RunCli(c);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
  cli::RunConfig ex = Verb("example");
  ex.example = "ex2";
  ex.mesh = 4;
  CHECK(RunCli(ex).out == RunCli(ex).out);
  fs::remove_all(dir);
}

TEST_CASE("subgames and perfect verbs") {
  Outcome sg = RunCli(Verb("subgames", Data("ex1.gb.json")));
  REQUIRE(sg.code == 0);
  json j = sg.Json();
  CHECK(j["perfect_recall"] == true);
  CHECK(j["solvable"].is_array());

  cli::RunConfig p = Verb("perfect", Data("ex2.gb.json"));
  p.mesh = 4;
  Outcome o = RunCli(p);
  CHECK(o.code == 0);
  CHECK(o.Json().is_object());
}

TEST_CASE("span verb") {
  Outcome id = RunCli(Verb("span", Data("span_identity.json")));
  REQUIRE(id.code == 0);
  CHECK(id.Json()["spanning"] == true);
  CHECK(id.Json()["witness"].size() == 2);
  Outcome gap = RunCli(Verb("span", Data("span_gap.json")));
  REQUIRE(gap.code == 0);
  CHECK(gap.Json()["spanning"] == false);
  CHECK(gap.Json()["witness"].empty());
  CHECK(RunCli(Verb("span", Data("no_such.json"))).code == 1);
}

TEST_CASE("example reports") {
  cli::RunConfig c = Verb("example");
  c.mesh = 8;
  SUBCASE("ex1 at s = 0.1") {
    c.example = "ex1";
    c.params["s"] = 0.1;
    json j = RunCli(c).Json();
    CHECK(j["s"] == 0.1);
    CHECK(j["commitment"]["closed_form_p"].get<double>() ==
          doctest::Approx(0.51189).epsilon(1e-4));
    CHECK(j["commitment"]["error_p"].get<double>() <= 1e-6);
    CHECK(j["subgame_sweep"]["max_residual"].get<double>() <= 1e-9);
    for (const json& eq : j["factor_myopic"]) {
      const double p = eq["p"].get<double>();
      CHECK((p < 1e-9 || p > 1 - 1e-9));
      CHECK(std::abs(eq["payoff"].get<double>()) <= 1e-9);
    }
    CHECK(j["myopic_gap"].get<double>() > 0.0);
    for (const json& eq : j["full_game"]) {
      CHECK(std::abs(eq["payoff_one"].get<double>()) <= 1e-6);
    }
  }
  SUBCASE("ex2") {
    c.example = "ex2";
    Outcome o = RunCli(c);
    CHECK(o.code == 0);
    json j = o.Json();
    CHECK(j["example"] == "ex2");
    CHECK(j["equilibria"].size() >= 2);
    CHECK(j["retained"].size() == 1);
  }
  SUBCASE("ex3") {
    c.example = "ex3";
    json j = RunCli(c).Json();
    CHECK(j["example"] == "ex3");
    CHECK(j["same_normal_form_as_ex2"] == true);
  }
}

}  // namespace
}  // namespace gamebush

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

#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "gamebush/error.h"
#include "gamebush/game_bundle.h"
#include "gamebush/strategies.h"
#include "gamebush/subgames.h"
#include "oracles.h"

namespace gamebush {
namespace {

std::string Data(const std::string& name) {
  return std::string(GB_DATA_DIR) + "/" + name;
}

MixedProfile RandomProfile(std::mt19937_64& rng, const StrategyTables& tables,
                           double zero_prob = 0.2) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  MixedProfile p;
  for (int n = 0; n < tables.num_players(); ++n) {
    std::vector<double> s(tables.num_strategies(n));
    double total = 0.0;
    for (double& x : s) {
      x = unit(rng) < zero_prob ? 0.0 : unit(rng);
      total += x;
    }
    if (total == 0.0) {
      s[0] = total = 1.0;
    }
    for (double& x : s) x /= total;
    p.sigma.push_back(s);
  }
  return p;
}

// Terminal probabilities by walking each path with behaviour probabilities.
std::vector<double> PathReach(const GameBush& bush, const std::vector<double>& q,
                              const BehaviourProfile& b) {
  std::vector<double> out;
  for (int t : bush.terminals()) {
    std::vector<int> path = bush.PathTo(t);
    double p = q[bush.root_position(path[0])];
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      int v = path[i], next = path[i + 1];
      if (const NatureNode* nat = bush.nature(v)) {
        for (std::size_t k = 0; k < nat->children.size(); ++k) {
          if (nat->children[k] == next) p *= nat->probabilities[k].value;
        }
        continue;
      }
      const InfoSet& set = bush.info_sets()[bush.info_set_of(v)];
      const auto& kids = set.moves[bush.info_slot(v)];
      for (std::size_t a = 0; a < kids.size(); ++a) {
        if (kids[a] == next) p *= b.probs[bush.info_set_of(v)][a];
      }
    }
    out.push_back(p);
  }
  return out;
}

std::vector<std::vector<double>> QGrid(int roots) {
  if (roots == 1) return {{1.0}};
  std::vector<std::vector<double>> out;
  for (int i = 0; i <= 4; ++i) {
    std::vector<double> q(roots, 0.0);
    q[0] = i / 4.0;
    q[1] = 1.0 - q[0];
    out.push_back(q);
  }
  std::vector<double> flat(roots, 1.0 / roots);
  out.push_back(flat);
  return out;
}

GameBush Sequential() {
  GameBush bush;
  bush.AddPlayer("One");
  bush.AddPlayer("Idle");
  for (const char* id : {"o", "a", "b", "aa", "ab", "ba", "bb"}) bush.AddVertex(id);
  bush.AddArrow("o", "a");
  bush.AddArrow("o", "b");
  bush.AddArrow("a", "aa");
  bush.AddArrow("a", "ab");
  bush.AddArrow("b", "ba");
  bush.AddArrow("b", "bb");
  bush.AddInfoSet(0, "root", {"x", "y"}, {{"o", {"a", "b"}}});
  bush.AddInfoSet(0, "left", {"u", "v"}, {{"a", {"aa", "ab"}}});
  bush.AddInfoSet(0, "right", {"u", "v"}, {{"b", {"ba", "bb"}}});
  for (int n = 0; n < 2; ++n) {
    bush.SetRootPartition(n, {{"o"}});
    bush.SetTerminalPartition(n, {{"aa"}, {"ab"}, {"ba"}, {"bb"}});
  }
  bush.Finalize();
  return bush;
}

TEST_CASE("strategy counts") {
  GameBundle ex1 = LoadBundle(Data("ex1.gb.json"));
  StrategyTables t1(ex1.bush);
  CHECK(t1.num_strategies(0) == 2);
  CHECK(t1.num_strategies(1) == 2);
  CHECK(t1.num_strategies(2) == 2);
  CHECK(t1.Label(1, 0) == "L");

  GameBush seq = Sequential();
  StrategyTables ts(seq);
  CHECK(ts.num_strategies(0) == 8);
  CHECK(ts.num_strategies(1) == 1);
  CHECK(ts.Label(1, 0) == "-");
  CHECK(ts.FindLabel(0, "y.v.u") >= 0);
  CHECK_THROWS_AS(StrategyTables(seq, 4), SizeGuardError);
}

TEST_CASE("reach probabilities on the fixtures") {
  GameBundle ex2 = LoadBundle(Data("ex2.gb.json"));
  StrategyTables t2(ex2.bush);
  std::vector<std::int64_t> pa = {t2.FindLabel(0, "P"), t2.FindLabel(1, "a")};
  std::vector<double> q = {1.0};
  ReachReport r = Reach(ex2, t2, q, t2.Pure(pa));
  CHECK(r.vertex[ex2.bush.RequireIndex("X")] == 1.0);
  CHECK(r.vertex[ex2.bush.RequireIndex("Ya")] == 0.0);

  GameBundle ex1 = LoadBundle(Data("ex1.gb.json"));
  StrategyTables t1(ex1.bush);
  MixedProfile half = t1.Uniform();
  ReachReport r1 = Reach(ex1, t1, q, half);
  CHECK(r1.vertex[ex1.bush.RequireIndex("XRl")] == doctest::Approx(0.125));
  double total = std::accumulate(r1.terminal.begin(), r1.terminal.end(), 0.0);
  CHECK(std::abs(total - 1.0) <= 1e-12);
}

TEST_CASE("terminal probabilities sum to one") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    GameBundle b = testing::RandomBundle(rng);
    StrategyTables tables(b.bush);
    for (const auto& q : QGrid(static_cast<int>(b.bush.roots().size()))) {
      ReachReport r = Reach(b, tables, q, RandomProfile(rng, tables));
      double total = std::accumulate(r.terminal.begin(), r.terminal.end(), 0.0);
      CHECK(std::abs(total - 1.0) <= 1e-12);
      for (std::size_t c = 0; c < r.class_prob.size(); ++c) {
        if (r.class_prob[c] <= 0.0) continue;
        double s = std::accumulate(r.conditional[c].begin(),
                                   r.conditional[c].end(), 0.0);
        CHECK(std::abs(s - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("reach is affine in each player's mixed strategy") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    GameBundle b = testing::RandomBundle(rng);
    StrategyTables tables(b.bush);
    std::vector<double> q = QGrid(static_cast<int>(b.bush.roots().size())).back();
    MixedProfile base = RandomProfile(rng, tables);
    for (int n = 0; n < tables.num_players(); ++n) {
      MixedProfile other = RandomProfile(rng, tables);
      const double a = 0.3;
      MixedProfile blend = base;
      for (std::size_t s = 0; s < blend.sigma[n].size(); ++s) {
        blend.sigma[n][s] = a * base.sigma[n][s] + (1 - a) * other.sigma[n][s];
      }
      MixedProfile swapped = base;
      swapped.sigma[n] = other.sigma[n];
      ReachReport r0 = Reach(b, tables, q, base);
      ReachReport r1 = Reach(b, tables, q, swapped);
      ReachReport rb = Reach(b, tables, q, blend);
      for (std::size_t t = 0; t < rb.terminal.size(); ++t) {
        CHECK(rb.terminal[t] ==
              doctest::Approx(a * r0.terminal[t] + (1 - a) * r1.terminal[t])
                  .epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("behaviour strategies from mixed ones") {
  GameBundle ex1 = LoadBundle(Data("ex1.gb.json"));
  StrategyTables t1(ex1.bush);
  KuhnResult k = MixedToBehaviour(t1, t1.Uniform());
  CHECK_FALSE(k.recall_warning);
  for (const auto& probs : k.behaviour.probs) {
    CHECK(probs == std::vector<double>{0.5, 0.5});
  }
  MixedProfile alpha = t1.Uniform();
  alpha.sigma[1] = {0.3, 0.7};
  k = MixedToBehaviour(t1, alpha);
  CHECK(k.behaviour.probs[ex1.bush.info_set_of(ex1.bush.RequireIndex("X"))][0] ==
        doctest::Approx(0.3));

  GameBush seq = Sequential();
  GameBundle sb = MakeBundle(seq, {{{3}, PayoffModel::Constant(1, 2, {0, 0})},
                                   {{4}, PayoffModel::Constant(1, 2, {0, 0})},
                                   {{5}, PayoffModel::Constant(1, 2, {0, 0})},
                                   {{6}, PayoffModel::Constant(1, 2, {0, 0})}});
  StrategyTables ts(sb.bush);
  std::vector<std::int64_t> pure = {ts.FindLabel(0, "x.v.u"), 0};
  k = MixedToBehaviour(ts, ts.Pure(pure));
  for (const auto& probs : k.behaviour.probs) {
    CHECK((probs == std::vector<double>{1.0, 0.0} ||
           probs == std::vector<double>{0.0, 1.0}));
  }
}

TEST_CASE("Kuhn round trip preserves reach on perfect recall bushes") {
  std::vector<GameBundle> bundles;
  for (const char* name : {"ex1.gb.json", "ex2.gb.json", "ex3.gb.json"}) {
    bundles.push_back(LoadBundle(Data(name)));
  }
  std::mt19937_64 rng(2026);
  while (bundles.size() < 23) {
    GameBundle b = testing::RandomBundle(rng);
    if (HasPerfectRecall(b.bush).ok) bundles.push_back(std::move(b));
  }
  double worst = 0.0;
  for (const GameBundle& b : bundles) {
    StrategyTables tables(b.bush);
    for (const auto& q : QGrid(static_cast<int>(b.bush.roots().size()))) {
      for (int i = 0; i < 100; ++i) {
        MixedProfile sigma = RandomProfile(rng, tables);
        KuhnResult k = MixedToBehaviour(tables, sigma);
        CHECK_FALSE(k.recall_warning);
        ReachReport mixed = Reach(b, tables, q, sigma);
        ReachReport back =
            Reach(b, tables, q, BehaviourToMixed(tables, k.behaviour));
        std::vector<double> walk = PathReach(b.bush, q, k.behaviour);
        for (std::size_t t = 0; t < walk.size(); ++t) {
          worst = std::max(worst, std::abs(mixed.terminal[t] - back.terminal[t]));
          worst = std::max(worst, std::abs(mixed.terminal[t] - walk[t]));
        }
      }
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("plans and action values on Example 2") {
  GameBundle ex2 = LoadBundle(Data("ex2.gb.json"));
  StrategyTables t(ex2.bush);
  std::vector<double> q = {1.0};
  const std::int64_t P = t.FindLabel(0, "P"), A = t.FindLabel(0, "A");
  const std::int64_t a = t.FindLabel(1, "a"), p = t.FindLabel(1, "p");

  std::vector<std::int64_t> pa = {P, a};
  Plan plan = MakePlan(ex2, t, q, t.Pure(pa));
  auto y = [&](const char* id, int n) {
    return plan.payoff(ex2.bush.terminal_position(ex2.bush.RequireIndex(id)), n, 2);
  };
  CHECK(y("X", 0) == 1);
  CHECK(y("X", 1) == 2);
  CHECK(y("Ya", 0) == 0);
  CHECK(y("Yp", 0) == 2);
  CHECK(y("Yp", 1) == 1);
  for (double r : PlanResiduals(ex2, plan)) CHECK(r <= 1e-12);
  std::vector<double> f1 = ActionValues(ex2, t, plan, 0);
  std::vector<double> f2 = ActionValues(ex2, t, plan, 1);
  CHECK(f1[P] == 1);
  CHECK(f1[A] == 0);
  CHECK(f2[a] == 2);
  CHECK(f2[p] == 2);

  std::vector<std::int64_t> ap = {A, p};
  plan = MakePlan(ex2, t, q, t.Pure(ap));
  f1 = ActionValues(ex2, t, plan, 0);
  f2 = ActionValues(ex2, t, plan, 1);
  CHECK(f1[A] == 2);
  CHECK(f1[P] == 1);
  CHECK(f2[p] == 1);
  CHECK(f2[a] == 0);
}

TEST_CASE("constant continuations make y the payoff table") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    GameBundle b = testing::RandomBundle(rng);
    StrategyTables tables(b.bush);
    std::vector<double> q = QGrid(static_cast<int>(b.bush.roots().size())).back();
    Plan plan = MakePlan(b, tables, q, RandomProfile(rng, tables));
    const int np = b.bush.num_players();
    for (int t : b.bush.terminals()) {
      int block = b.meet.index[t];
      const Block& cls = b.meet.blocks[block];
      int slot = static_cast<int>(std::find(cls.begin(), cls.end(), t) - cls.begin());
      for (int n = 0; n < np; ++n) {
        CHECK(plan.payoff(b.bush.terminal_position(t), n, np) ==
              b.model(block).constant()[slot * np + n]);
      }
    }
  }
}

TEST_CASE("action values average back to expected payoffs") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    GameBundle b = testing::RandomBundle(rng);
    StrategyTables tables(b.bush);
    std::vector<double> q = QGrid(static_cast<int>(b.bush.roots().size())).back();
    MixedProfile sigma = RandomProfile(rng, tables);
    Plan plan = MakePlan(b, tables, q, sigma);
    std::vector<double> expected = ExpectedPayoffs(b, plan);
    for (int n = 0; n < b.bush.num_players(); ++n) {
      std::vector<double> f = ActionValues(b, tables, plan, n);
      double avg = 0.0;
      for (std::size_t s = 0; s < f.size(); ++s) avg += sigma.sigma[n][s] * f[s];
      CHECK(avg == doctest::Approx(expected[n]).epsilon(1e-10));
      if (tables.space(n).sets.empty()) {
        CHECK(f[0] == doctest::Approx(expected[n]).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("empty sampled continuation means no plan") {
  GameBush bush;
  bush.AddPlayer("One");
  for (const char* id : {"o", "a", "b"}) bush.AddVertex(id);
  bush.AddArrow("o", "a");
  bush.AddArrow("o", "b");
  bush.AddInfoSet(0, "root", {"x", "y"}, {{"o", {"a", "b"}}});
  bush.SetRootPartition(0, {{"o"}});
  bush.SetTerminalPartition(0, {{"a", "b"}});
  bush.Finalize();
  NearestSample corner;
  corner.w = {1.0, 0.0};
  corner.candidates.push_back({{1.0, 0.0}, -1});
  GameBundle b = MakeBundle(bush, {{{1, 2}, PayoffModel::Nearest(2, 1, {corner}, 0.1)}});
  StrategyTables t(b.bush);
  std::vector<double> q = {1.0};
  CHECK_THROWS_AS(MakePlan(b, t, q, t.Uniform()), NoPlanError);
  std::vector<std::int64_t> x = {t.FindLabel(0, "x")};
  CHECK_NOTHROW(MakePlan(b, t, q, t.Pure(x)));
}

TEST_CASE("profile json round trip") {
  GameBundle ex1 = LoadBundle(Data("ex1.gb.json"));
  StrategyTables t(ex1.bush);
  std::mt19937_64 rng(1);
  MixedProfile sigma = RandomProfile(rng, t, 0.0);
  MixedProfile back = ParseProfile(t, ProfileToJson(t, sigma));
  for (int n = 0; n < t.num_players(); ++n) {
    for (std::size_t s = 0; s < sigma.sigma[n].size(); ++s) {
      CHECK(back.sigma[n][s] == doctest::Approx(sigma.sigma[n][s]).epsilon(1e-15));
    }
  }
}

}  // namespace
}  // namespace gamebush

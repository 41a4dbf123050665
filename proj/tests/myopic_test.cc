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

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gamebush/error.h"
#include "gamebush/game_bundle.h"
#include "gamebush/myopic.h"
#include "gamebush/simplex.h"
#include "gamebush/strategies.h"
#include "gamebush/subgames.h"
#include "gamebush/sweep.h"
#include "json.hpp"
#include "oracles.h"

namespace gamebush {
namespace {

std::string Data(const std::string& name) {
  return std::string(GB_DATA_DIR) + "/" + name;
}

// Projection onto the simplex by bisection on the shift.
std::vector<double> ProjectByBisection(const std::vector<double>& v) {
  double lo = *std::min_element(v.begin(), v.end()) - 1.0;
  double hi = *std::max_element(v.begin(), v.end());
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double s = 0.0;
    for (double x : v) s += std::max(x - mid, 0.0);
    (s > 1.0 ? lo : hi) = mid;
  }
  std::vector<double> out;
  for (double x : v) out.push_back(std::max(x - 0.5 * (lo + hi), 0.0));
  return out;
}

double Distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

std::vector<double> RandomPoint(std::mt19937_64& rng, int n, double zero_prob) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x(n);
  double total = 0.0;
  for (double& w : x) {
    w = unit(rng) < zero_prob ? 0.0 : unit(rng);
    total += w;
  }
  if (total == 0.0) {
    x[0] = total = 1.0;
  }
  for (double& w : x) w /= total;
  return x;
}

TEST_CASE("simplex projection") {
  CHECK(SimplexProject(std::vector<double>{0.5, 0.5}) == std::vector<double>{0.5, 0.5});
  CHECK(SimplexProject(std::vector<double>{2.0, 0.0}) == std::vector<double>{1.0, 0.0});
  auto p = SimplexProject(std::vector<double>{0.6, 0.6});
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(0.5));

  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 2.0);
  for (int trial = 0; trial < 2000; ++trial) {
    int n = 1 + trial % 6;
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = g(rng);
      y[i] = g(rng);
    }
    auto px = SimplexProject(x);
    auto py = SimplexProject(y);
    CHECK(Distance(px, ProjectByBisection(x)) <= 1e-9);
    CHECK(Distance(px, py) <= Distance(x, y) + 1e-12);
    double sum = 0.0;
    for (double w : px) {
      CHECK(w >= 0.0);
      sum += w;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("Nash residual examples") {
  for (double c : {-3.0, 0.0, 2.5}) {
    CHECK(NashResidual({{0.5, 0.5}}, {{c, c}}) <= 1e-15);
  }
  CHECK(NashResidual({{1.0, 0.0}}, {{0.0, 1.0}}) > 0.5);
  CHECK(CertificateResidual({{1.0, 0.0}}, {{0.0, 1.0}}) == 1.0);
}

TEST_CASE("residual vanishes exactly on best-response supports") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int holds = 0, fails = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int factors = 1 + trial % 3;
    ProductPoint sigma, v;
    bool condition = true;
    for (int i = 0; i < factors; ++i) {
      int n = 1 + static_cast<int>(unit(rng) * 5);
      sigma.push_back(RandomPoint(rng, n, 0.4));
      std::vector<double> vals(n);
      for (double& x : vals) x = std::round(unit(rng) * 8.0) / 4.0 - 1.0;
      if (unit(rng) < 0.5) {
        // Force the condition: supported actions take the best value.
        double best = *std::max_element(vals.begin(), vals.end());
        for (int a = 0; a < n; ++a) {
          if (sigma.back()[a] > 0.0) vals[a] = best;
        }
      }
      double best = *std::max_element(vals.begin(), vals.end());
      for (int a = 0; a < n; ++a) {
        if (sigma.back()[a] > 0.0 && vals[a] < best) condition = false;
      }
      v.push_back(vals);
    }
    const double nash = NashResidual(sigma, v);
    const double cert = CertificateResidual(sigma, v);
    CHECK((nash <= 1e-10) == condition);
    CHECK((cert <= 0.0) == condition);
    (condition ? holds : fails)++;

    // Adding a constant within one factor changes nothing.
    ProductPoint shifted = v;
    for (auto& f : shifted) {
      double c = unit(rng) * 10.0 - 5.0;
      for (double& x : f) x += c;
    }
    CHECK(CertificateResidual(sigma, shifted) == doctest::Approx(cert).epsilon(1e-12));
    CHECK((NashResidual(sigma, shifted) <= 1e-10) == condition);
  }
  CHECK(holds > 1000);
  CHECK(fails > 1000);
}

TEST_CASE("lambda breakpoints") {
  for (double eps : {0.01, 0.125, 0.3}) {
    CHECK(Lambda(2 * eps, eps) == 1.0);
    CHECK(Lambda(eps, eps) == 0.0);
    CHECK(Lambda(1.5 * eps, eps) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(Lambda(0.0, eps) == 0.0);
    CHECK(Lambda(1.0, eps) == 1.0);
    const double d = eps * 1e-13;
    CHECK(std::abs(Lambda(eps + d, eps) - Lambda(eps, eps)) <= 1e-12);
    CHECK(std::abs(Lambda(2 * eps - d, eps) - Lambda(2 * eps, eps)) <= 1e-12);
    for (double t = 0.0; t < 3.0; t += 0.01) {
      double a = Lambda(t * eps, eps), b = Lambda((t + 0.01) * eps, eps);
      CHECK(b >= a);
      CHECK(b - a <= 0.01 + 1e-12);
    }
  }
}

TEST_CASE("regularized plans blend toward the bound") {
  GameBundle ex2 = LoadBundle(Data("ex2.gb.json"));
  StrategyTables t(ex2.bush);
  const int ya = ex2.bush.terminal_position(ex2.bush.RequireIndex("Ya"));
  RegularizationConfig reg{0.1, 5.0};
  std::vector<double> q = {1.0};
  for (auto [x, expected] : std::vector<std::pair<double, double>>{
           {0.2, 0.0}, {0.1, 5.0}, {0.15, 2.5}}) {
    MixedProfile sigma = t.Uniform();
    sigma.sigma[0][t.FindLabel(0, "A")] = x;
    sigma.sigma[0][t.FindLabel(0, "P")] = 1 - x;
    sigma.sigma[1] = {0.0, 0.0};
    sigma.sigma[1][t.FindLabel(1, "a")] = 1.0;
    Plan plan = RegularizedPlan(ex2, t, q, sigma, {}, reg);
    CHECK(plan.payoff(ya, 0, 2) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(plan.payoff(ya, 1, 2) == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK_THROWS_AS(RegularizedPlan(ex2, t, q, t.Uniform(), {}, {0.1, 1.5}),
                  PreconditionError);
}

TEST_CASE("certificates on Example 2") {
  GameBundle ex2 = LoadBundle(Data("ex2.gb.json"));
  StrategyTables t(ex2.bush);
  std::vector<double> q = {1.0};
  std::vector<std::int64_t> pa = {t.FindLabel(0, "P"), t.FindLabel(1, "a")};
  std::vector<std::int64_t> aa = {t.FindLabel(0, "A"), t.FindLabel(1, "a")};
  CHECK(VerifyMyopic(ex2, t, MakePlan(ex2, t, q, t.Pure(pa)), 1e-12).valid());
  MyopicCertificate bad = VerifyMyopic(ex2, t, MakePlan(ex2, t, q, t.Pure(aa)), 1e-12);
  CHECK_FALSE(bad.valid());
  CHECK(bad.values[1][t.FindLabel(1, "a")] == 0.0);
  CHECK(bad.values[1][t.FindLabel(1, "p")] == 1.0);
}

bool SameProfile(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& sx, const std::vector<double>& sy,
                 double tol) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i] - sx[i]) > tol) return false;
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (std::abs(y[i] - sy[i]) > tol) return false;
  }
  return true;
}

TEST_CASE("myopic equilibria of bimatrix games are the Nash equilibria") {
  std::mt19937_64 rng(50);
  std::vector<double> q = {1.0};
  for (int game = 0; game < 50; ++game) {
    int m = 2 + game % 3, n = 2 + (game / 3) % 3;
    testing::Matrix a = testing::RandomMatrix(rng, m, n);
    testing::Matrix b = testing::RandomMatrix(rng, m, n);
    auto oracle = testing::SupportEnumerationNash(a, b);
    GameBundle bundle = testing::BimatrixBundle(a, b);
    StrategyTables t(bundle.bush);
    SolveResult result = SolveMyopic(bundle, t, q, SolverConfig{});
    CAPTURE(game);
    CHECK(result.diagnostics.support_complete);
    for (const auto& eq : result.equilibria) {
      CHECK(eq.certificate.valid());
      bool found = false;
      for (const auto& o : oracle) {
        found = found || SameProfile(o.x, o.y, eq.sigma().sigma[0], eq.sigma().sigma[1], 1e-6);
      }
      CHECK(found);
    }
    for (const auto& o : oracle) {
      bool found = false;
      for (const auto& eq : result.equilibria) {
        found = found || SameProfile(o.x, o.y, eq.sigma().sigma[0], eq.sigma().sigma[1], 1e-6);
      }
      CHECK(found);
    }
  }
}

TEST_CASE("matching pennies") {
  testing::Matrix a = {{1, -1}, {-1, 1}};
  testing::Matrix b = {{-1, 1}, {1, -1}};
  GameBundle bundle = testing::BimatrixBundle(a, b);
  StrategyTables t(bundle.bush);
  std::vector<double> q = {1.0};
  SolveResult r = SolveMyopic(bundle, t, q, SolverConfig{});
  REQUIRE(r.equilibria.size() == 1);
  for (const auto& s : r.equilibria[0].sigma().sigma) {
    CHECK(s[0] == doctest::Approx(0.5).epsilon(1e-9));
  }
}

TEST_CASE("Example 1 factor game has only pure myopic equilibria") {
  for (double s : {0.01, 0.1, 0.5}) {
    GameBundle fac = LoadBundle(Data("ex1_factor.gb.json"), {{"s", s}});
    StrategyTables t(fac.bush);
    std::vector<double> q = {1.0};
    SolveResult r = SolveMyopic(fac, t, q, SolverConfig{});
    REQUIRE(r.equilibria.size() == 2);
    for (const auto& eq : r.equilibria) {
      double p = eq.sigma().sigma[0][t.FindLabel(0, "X")];
      CHECK((p == doctest::Approx(0.0) || p == doctest::Approx(1.0)));
      CHECK(eq.payoff[0] == doctest::Approx(0.0));
    }
    CommitmentResult c = CommittedOptimum(fac, t, q);
    const double p_star = (s - 1 + std::sqrt(1 + s + s * s)) / (3 * s);
    const double f_star =
        (1 + s) * (1 - p_star) * p_star * p_star + (1 - p_star) * (1 - p_star) * p_star;
    CHECK(std::abs(c.p - p_star) <= 1e-6);
    CHECK(std::abs(c.value - f_star) <= 1e-6);
    CHECK(c.value > 1e-3);
  }
}

TEST_CASE("Example 1 full game equilibria give Player One nothing") {
  GameBundle ex1 = LoadBundle(Data("ex1.gb.json"));
  StrategyTables t(ex1.bush);
  std::vector<double> q = {1.0};
  SolveResult r = SolveMyopic(ex1, t, q, SolverConfig{});
  REQUIRE_FALSE(r.equilibria.empty());
  bool xr = false, yl = false;
  for (const auto& eq : r.equilibria) {
    CHECK(eq.certificate.valid());
    CHECK(std::abs(eq.payoff[0]) <= 1e-6);
    const auto& s = eq.sigma().sigma;
    double x = s[0][t.FindLabel(0, "X")];
    double l = s[2][t.FindLabel(2, "l")];
    bool is_xr = std::abs(x - 1) <= 1e-9 && std::abs(l) <= 1e-9;
    bool is_yl = std::abs(x) <= 1e-9 && std::abs(l - 1) <= 1e-9;
    CHECK((is_xr || is_yl));
    xr = xr || is_xr;
    yl = yl || is_yl;
  }
  CHECK(xr);
  CHECK(yl);
}

GameBundle Ex1Subgame(double s = 0.1) {
  GameBundle ex1 = LoadBundle(Data("ex1.gb.json"), {{"s", s}});
  VertexSet post;
  for (int v = 0; v < ex1.bush.num_vertices(); ++v) {
    if (ex1.bush.id(v) != "o") post.push_back(v);
  }
  return Restrict(ex1, post);
}

TEST_CASE("Example 1 subgame solves to beta = alpha = 1 - p") {
  GameBundle sub = Ex1Subgame();
  StrategyTables t(sub.bush);
  const int x_pos = sub.bush.root_position(sub.bush.RequireIndex("X"));
  const std::int64_t L = t.FindLabel(1, "L"), l = t.FindLabel(2, "l");
  for (int k = 0; k <= 16; ++k) {
    const double p = k / 16.0;
    std::vector<double> q(2);
    q[x_pos] = p;
    q[1 - x_pos] = 1 - p;
    CAPTURE(p);

    MixedProfile sigma = t.Uniform();
    sigma.sigma[1][L] = 1 - p;
    sigma.sigma[1][1 - L] = p;
    sigma.sigma[2][l] = 1 - p;
    sigma.sigma[2][1 - l] = p;
    MyopicCertificate cert = VerifyMyopic(sub, t, MakePlan(sub, t, q, sigma), 1e-9);
    CHECK(cert.residual <= 1e-9);

    SolveResult r = SolveMyopic(sub, t, q, SolverConfig{});
    bool found = false;
    for (const auto& eq : r.equilibria) {
      CHECK(eq.certificate.residual <= 1e-9);
      const auto& s = eq.sigma().sigma;
      if (std::abs(s[1][L] - (1 - p)) <= 1e-9 && std::abs(s[2][l] - (1 - p)) <= 1e-9) {
        found = true;
        CHECK(eq.payoff[1] == doctest::Approx(1 + 8 * p - 8 * p * p).epsilon(1e-12));
      }
    }
    CHECK(found);
    if (k > 0 && k < 16) CHECK(r.equilibria.size() == 1);
  }
}

TEST_CASE("sweep rows survive serialization") {
  GameBundle sub = Ex1Subgame();
  StrategyTables t(sub.bush);
  SolverConfig config;
  SweepTable table = Sweep(sub, t, 8, config);
  CHECK(table.converged());
  CHECK(table.rows.size() == 9);
  nlohmann::json doc = nlohmann::json::parse(SweepToJson(sub, t, table).dump());
  int checked = 0;
  for (const auto& row : doc.at("rows")) {
    std::vector<double> q = row.at("q").get<std::vector<double>>();
    for (const auto& eq : row.at("equilibria")) {
      CHECK(ReverifyJson(sub, t, q, eq, config).valid());
      ++checked;
    }
  }
  CHECK(checked >= 9);

  std::istringstream csv(SweepToCsv(sub, table));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "q_X,q_Y,player,equilibrium,payoff,residual");
  std::size_t r = 0, e = 0;
  int n = 0;
  while (std::getline(csv, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 6);
    while (e >= table.rows[r].result.equilibria.size()) {
      ++r;
      e = 0;
    }
    CHECK(std::stod(cells[0]) == table.rows[r].q[0]);
    CHECK(std::stod(cells[4]) == table.rows[r].result.equilibria[e].payoff[n]);
    if (++n == 3) {
      n = 0;
      ++e;
    }
  }
  for (double x : {0.1, 1.0 / 3.0, 2.0 / 7.0, -1e-300, 12345.678}) {
    CHECK(std::stod(FormatNumber(x)) == x);
  }
}

TEST_CASE("sweep over a bundle without plans") {
  GameBush bush;
  bush.AddPlayer("One");
  for (const char* id : {"o", "a", "b"}) bush.AddVertex(id);
  bush.AddArrow("o", "a");
  bush.AddArrow("o", "b");
  bush.AddInfoSet(0, "root", {"x", "y"}, {{"o", {"a", "b"}}});
  bush.SetRootPartition(0, {{"o"}});
  bush.SetTerminalPartition(0, {{"a", "b"}});
  bush.Finalize();
  NearestSample far;
  far.w = {1.0, 0.0};
  far.candidates.push_back({{1.0, 0.0}, -1});
  GameBundle b = MakeBundle(bush, {{{1, 2}, PayoffModel::Nearest(2, 1, {far}, 1e-9)}});
  // Only the pure strategy x reaches the one sampled point.
  StrategyTables t(b.bush);
  SolveResult r = SolveMyopic(b, t, std::vector<double>{1.0}, SolverConfig{});
  for (const auto& eq : r.equilibria) {
    CHECK(eq.sigma().sigma[0][t.FindLabel(0, "x")] == 1.0);
  }

  GameBundle empty = MakeBundle(bush, {{{1, 2}, PayoffModel::Nearest(2, 1, {}, 0.1)}});
  StrategyTables te(empty.bush);
  SweepTable table = Sweep(empty, te, 4, SolverConfig{});
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0].result.equilibria.empty());
  CHECK(table.rows[0].result.diagnostics.no_plan > 0);
}

TEST_CASE("solver output is deterministic") {
  GameBundle ex1 = LoadBundle(Data("ex1.gb.json"));
  StrategyTables t(ex1.bush);
  std::vector<double> q = {1.0};
  SolverConfig config;
  config.seed = 5;
  SolveResult a = SolveMyopic(ex1, t, q, config);
  SolveResult b = SolveMyopic(ex1, t, q, config);
  REQUIRE(a.equilibria.size() == b.equilibria.size());
  for (std::size_t i = 0; i < a.equilibria.size(); ++i) {
    CHECK(EquilibriumToJson(ex1, t, a.equilibria[i]).dump() ==
          EquilibriumToJson(ex1, t, b.equilibria[i]).dump());
  }
}

}  // namespace
}  // namespace gamebush

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

#ifndef GAMEBUSH_MYOPIC_H_
#define GAMEBUSH_MYOPIC_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gamebush/game_bundle.h"
#include "gamebush/simplex.h"
#include "gamebush/strategies.h"

namespace gamebush {

struct RegularizationConfig {
  double epsilon = 0.01;
  // r_B has every entry equal to bound_b; 0 means PayoffBound() + 1.
  double bound_b = 0.0;
};

// 1 above 2 epsilon, 0 below epsilon, linear in between.
double Lambda(double reach, double epsilon);

// Plan for F_eps: each class block is lambda F_C + (1 - lambda) r_B.
Plan RegularizedPlan(const GameBundle& bundle, const StrategyTables& tables,
                     std::span<const double> q, const MixedProfile& sigma,
                     const Selector& selector, const RegularizationConfig& reg);

struct MyopicCertificate {
  MixedProfile sigma;
  ProductPoint values;  // f^n(s) per player
  double residual = 0.0;
  double tolerance = 0.0;

  bool valid() const { return residual <= tolerance; }
};

MyopicCertificate VerifyMyopic(const GameBundle& bundle,
                               const StrategyTables& tables, const Plan& plan,
                               double tolerance);

struct SolverConfig {
  double tolerance = 1e-9;
  std::int64_t support_cap = 64;
  // A lopsided game (2 x 18, say) passes support_cap yet has ~10^6 support
  // pairs; past this many systems the solver iterates instead.
  std::int64_t support_system_cap = std::int64_t{1} << 14;
  int support_starts = 3;
  double eta = 0.25;
  int max_iterations = 100000;
  double step_tolerance = 1e-11;
  int multistarts = 32;
  double dedupe = 1e-6;
  int branch_cap = 16;
  std::uint64_t seed = 0;
  Selector selector;
  bool detect_families = true;
  // Drop iteration results lying between two support-system equilibria.
  bool prune_segments = true;
  // Skip fixed-point starts when all continuations are constant and the
  // supports were enumerated.
  bool skip_iteration_when_linear = true;
  std::optional<RegularizationConfig> regularization;
};

// sigma + delta (e_to - e_from) for player `player` stays certified.
struct FreeDirection {
  int player = -1;
  std::int64_t from = 0;
  std::int64_t to = 0;
};

struct Equilibrium {
  Plan plan;
  MyopicCertificate certificate;
  std::vector<double> payoff;  // r^n = max_s f^n(s)
  std::vector<FreeDirection> family;
  std::string source;  // "support" or "iteration"

  const MixedProfile& sigma() const { return plan.sigma; }
};

struct SolveDiagnostics {
  int branches = 0;
  int support_systems = 0;
  int support_solutions = 0;
  bool support_complete = false;
  int starts = 0;
  int converged_starts = 0;
  std::int64_t iterations = 0;
  int no_plan = 0;
  int pruned = 0;
  std::vector<std::string> notes;
};

struct SolveResult {
  std::vector<Equilibrium> equilibria;
  SolveDiagnostics diagnostics;

  // False when nothing was certified and no complete method ran.
  bool converged() const {
    return !equilibria.empty() || diagnostics.support_complete;
  }
};

SolveResult SolveMyopic(const GameBundle& bundle, const StrategyTables& tables,
                        std::span<const double> q, const SolverConfig& config);

// Plan builder used by the solver for a fixed selector (regularized or not).
std::function<Plan(const MixedProfile&)> PlanBuilder(
    const GameBundle& bundle, const StrategyTables& tables,
    std::span<const double> q, const SolverConfig& config,
    const Selector& selector);

// Best mixed commitment of the only player with moves, when that player has
// exactly two pure strategies: maximizes F(p), the player's expected payoff
// with the plan recomputed at (p, 1 - p).
struct CommitmentResult {
  int player = -1;
  double p = 0.0;  // weight of the first pure strategy
  double value = 0.0;
};

CommitmentResult CommittedOptimum(const GameBundle& bundle,
                                  const StrategyTables& tables,
                                  std::span<const double> q,
                                  const Selector& selector = {});

// Deterministic quasi-random interior point of the product of simplices.
MixedProfile HaltonProfile(const StrategyTables& tables, std::uint64_t index);

}  // namespace gamebush

#endif  // GAMEBUSH_MYOPIC_H_

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

#ifndef GAMEBUSH_PERFECT_H_
#define GAMEBUSH_PERFECT_H_

#include <optional>
#include <string>
#include <vector>

#include "gamebush/game_bundle.h"
#include "gamebush/myopic.h"
#include "gamebush/strategies.h"
#include "gamebush/subgames.h"
#include "json.hpp"

namespace gamebush {

enum class Verdict { kTrue, kFalse, kUnresolved };
const char* VerdictName(Verdict v);

struct SPerfectResult {
  Verdict verdict = Verdict::kUnresolved;
  bool reached = false;
  // Distribution on the roots of S (in the restricted bush's root order)
  // that certifies the verdict, when one was found.
  std::vector<double> q_prime;
  double residual = 0.0;  // best certificate residual seen
  std::string method;     // "conditional", "single-root", "interval", "grid"
};

// Restricts sigma (through behaviour strategies) and the plan to Gamma|_S and
// checks the myopic condition there, at the conditional on R' when S is
// reached, otherwise for some q' on R'.
SPerfectResult IsSPerfect(const GameBundle& bundle,
                          const StrategyTables& tables, const VertexSet& s,
                          const Plan& plan, double tolerance, int mesh = 16,
                          const Selector& selector = {});

// sigma restricted to the information sets of `sub` (matched by player and
// set name) via behaviour strategies.
MixedProfile RestrictProfile(const StrategyTables& tables,
                             const MixedProfile& sigma,
                             const StrategyTables& sub_tables);

struct ComposeResult {
  MixedProfile sigma;
  Plan plan;
  MyopicCertificate certificate;  // at tolerance 2 tau
  double plan_residual = 0.0;     // max distance of y from F_C
};

// Glues an m-equilibrium of the factor Gamma/S with one of Gamma|_S.
ComposeResult Compose(const GameBundle& bundle, const VertexSet& s,
                      const GameBundle& factor, const Plan& factor_plan,
                      const GameBundle& sub, const Plan& sub_plan,
                      double tau);

// Expected payoff of every player from each root of the bundle's bush under
// the plan's profile and frozen payoff table; rows by root position.
std::vector<std::vector<double>> PerRootPayoffs(const GameBundle& bundle,
                                                const StrategyTables& tables,
                                                const Plan& plan);

struct PerfectEquilibrium {
  Equilibrium eq;
  std::vector<std::pair<VertexSet, SPerfectResult>> checks;
  bool unresolved = false;
};

struct PerfectRow {
  std::vector<double> q;
  std::vector<PerfectEquilibrium> equilibria;
  std::vector<std::string> notes;
};

struct PerfectResult {
  // Vertex ids of the subgame sets cut at, outermost bundle first.
  std::vector<std::vector<std::string>> cuts;
  std::vector<PerfectRow> rows;
};

// Every nondegenerate proper subgame set used by the solvers.
std::vector<VertexSet> ProperSubgameSets(const GameBush& bush);

// Keeps the equilibria that are S-perfect for every proper subgame set
// (unresolved checks keep the equilibrium and mark it).
std::vector<PerfectEquilibrium> FilterPerfect(
    const GameBundle& bundle, const StrategyTables& tables,
    std::vector<Equilibrium> equilibria, const SolverConfig& config,
    int mesh = 16);

// Innermost-first solve: subgames are solved on grids of their root
// distributions, packaged as continuation samples of the factor game, and the
// results composed and filtered. `qs` defaults to the mesh grid on Delta(R).
PerfectResult SolveBundlePerfect(
    const GameBundle& bundle, const SolverConfig& config, int mesh = 16,
    std::optional<std::vector<std::vector<double>>> qs = std::nullopt);

nlohmann::json PerfectToJson(const GameBundle& bundle,
                             const StrategyTables& tables,
                             const PerfectResult& result);

}  // namespace gamebush

#endif  // GAMEBUSH_PERFECT_H_

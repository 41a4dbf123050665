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

#ifndef GAMEBUSH_SWEEP_H_
#define GAMEBUSH_SWEEP_H_

#include <string>
#include <vector>

#include "gamebush/game_bundle.h"
#include "gamebush/myopic.h"
#include "gamebush/strategies.h"
#include "json.hpp"

namespace gamebush {

// Integer points c >= 0 with sum k, first coordinate ascending.
std::vector<std::vector<int>> BarycentricGrid(int dim, int k);

struct SweepRow {
  std::vector<int> grid;
  std::vector<double> q;
  SolveResult result;
};

struct SweepTable {
  int mesh = 16;  // h = 1 / mesh
  std::vector<SweepRow> rows;

  bool converged() const;
};

SweepTable Sweep(const GameBundle& bundle, const StrategyTables& tables,
                 int mesh, const SolverConfig& config);

// 17 significant digits.
std::string FormatNumber(double x);

std::string SweepToCsv(const GameBundle& bundle, const SweepTable& table);
nlohmann::json SweepToJson(const GameBundle& bundle,
                           const StrategyTables& tables,
                           const SweepTable& table);

nlohmann::json EquilibriumToJson(const GameBundle& bundle,
                                 const StrategyTables& tables,
                                 const Equilibrium& eq);
nlohmann::json DiagnosticsToJson(const SolveDiagnostics& diag);

// Rebuilds the plan of a serialized equilibrium at q and re-runs
// verify_myopic. The stored plan must match the rebuilt one.
MyopicCertificate ReverifyJson(const GameBundle& bundle,
                               const StrategyTables& tables,
                               std::span<const double> q,
                               const nlohmann::json& eq,
                               const SolverConfig& config);

}  // namespace gamebush

#endif  // GAMEBUSH_SWEEP_H_

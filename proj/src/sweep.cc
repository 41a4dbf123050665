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

#include "gamebush/sweep.h"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "gamebush/error.h"
#include "gamebush/parallel.h"

namespace gamebush {

using nlohmann::json;

std::vector<std::vector<int>> BarycentricGrid(int dim, int k) {
  std::vector<std::vector<int>> out;
  if (dim <= 0) return out;
  std::vector<int> c(dim, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == dim - 1) {
      c[i] = left;
      out.push_back(c);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      c[i] = x;
      rec(i + 1, left - x);
    }
  };
  rec(0, k);
  return out;
}

bool SweepTable::converged() const {
  for (const SweepRow& row : rows) {
    if (!row.result.converged()) return false;
  }
  return true;
}

SweepTable Sweep(const GameBundle& bundle, const StrategyTables& tables,
                 int mesh, const SolverConfig& config) {
  if (mesh < 1) throw PreconditionError("mesh must be 1/k with k >= 1");
  SweepTable table;
  table.mesh = mesh;
  const int dim = static_cast<int>(bundle.bush.roots().size());
  for (auto& c : BarycentricGrid(dim, mesh)) {
    SweepRow row;
    for (int x : c) row.q.push_back(static_cast<double>(x) / mesh);
    row.grid = std::move(c);
    table.rows.push_back(std::move(row));
  }
  ParallelFor(table.rows.size(), [&](std::size_t i) {
    table.rows[i].result =
        SolveMyopic(bundle, tables, table.rows[i].q, config);
  });
  return table;
}

std::string FormatNumber(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string SweepToCsv(const GameBundle& bundle, const SweepTable& table) {
  const GameBush& bush = bundle.bush;
  std::ostringstream os;
  for (int r : bush.roots()) os << "q_" << bush.id(r) << ',';
  os << "player,equilibrium,payoff,residual\n";
  for (const SweepRow& row : table.rows) {
    for (std::size_t e = 0; e < row.result.equilibria.size(); ++e) {
      const Equilibrium& eq = row.result.equilibria[e];
      for (int n = 0; n < bush.num_players(); ++n) {
        for (double x : row.q) os << FormatNumber(x) << ',';
        os << bush.player_name(n) << ',' << e << ','
           << FormatNumber(eq.payoff[n]) << ','
           << FormatNumber(eq.certificate.residual) << '\n';
      }
    }
  }
  return os.str();
}

json DiagnosticsToJson(const SolveDiagnostics& d) {
  return {{"branches", d.branches},
          {"support_systems", d.support_systems},
          {"support_solutions", d.support_solutions},
          {"support_complete", d.support_complete},
          {"starts", d.starts},
          {"converged_starts", d.converged_starts},
          {"iterations", d.iterations},
          {"no_plan", d.no_plan},
          {"pruned", d.pruned},
          {"notes", d.notes}};
}

json EquilibriumToJson(const GameBundle& bundle, const StrategyTables& tables,
                       const Equilibrium& eq) {
  const GameBush& bush = bundle.bush;
  const int np = bush.num_players();
  json out;
  out["profile"] = ProfileToJson(tables, eq.sigma());
  out["payoff"] = eq.payoff;
  out["residual"] = eq.certificate.residual;
  json values = json::object();
  for (int n = 0; n < np; ++n) {
    json v = json::object();
    for (std::int64_t s = 0; s < tables.num_strategies(n); ++s) {
      v[tables.Label(n, s)] = eq.certificate.values[n][s];
    }
    values[bush.player_name(n)] = v;
  }
  out["values"] = values;
  json plan = json::object();
  for (std::size_t t = 0; t < bush.terminals().size(); ++t) {
    plan[bush.id(bush.terminals()[t])] = std::vector<double>(
        eq.plan.y.begin() + t * np, eq.plan.y.begin() + (t + 1) * np);
  }
  out["plan"] = plan;
  out["branch"] = eq.plan.branch;
  out["source"] = eq.source;
  json family = json::array();
  for (const FreeDirection& d : eq.family) {
    family.push_back({{"player", bush.player_name(d.player)},
                      {"from", tables.Label(d.player, d.from)},
                      {"to", tables.Label(d.player, d.to)}});
  }
  out["family"] = family;
  return out;
}

json SweepToJson(const GameBundle& bundle, const StrategyTables& tables,
                 const SweepTable& table) {
  json doc;
  doc["mesh"] = table.mesh;
  doc["roots"] = bundle.bush.Ids(bundle.bush.roots());
  doc["rows"] = json::array();
  for (const SweepRow& row : table.rows) {
    json eqs = json::array();
    for (const Equilibrium& eq : row.result.equilibria) {
      eqs.push_back(EquilibriumToJson(bundle, tables, eq));
    }
    doc["rows"].push_back({{"grid", row.grid},
                           {"q", row.q},
                           {"equilibria", eqs},
                           {"diagnostics", DiagnosticsToJson(row.result.diagnostics)}});
  }
  return doc;
}

MyopicCertificate ReverifyJson(const GameBundle& bundle,
                               const StrategyTables& tables,
                               std::span<const double> q, const json& eq,
                               const SolverConfig& config) {
  MixedProfile sigma = ParseProfile(tables, eq.at("profile"));
  Selector selector = config.selector;
  if (eq.contains("branch")) {
    selector.rule = Selector::Rule::kExplicit;
    selector.branch = eq.at("branch").get<std::vector<int>>();
  }
  Plan plan = PlanBuilder(bundle, tables, q, config, selector)(sigma);
  const GameBush& bush = bundle.bush;
  const int np = bush.num_players();
  if (eq.contains("plan")) {
    for (std::size_t t = 0; t < bush.terminals().size(); ++t) {
      auto stored = eq.at("plan").at(bush.id(bush.terminals()[t]))
                        .get<std::vector<double>>();
      for (int n = 0; n < np; ++n) {
        if (std::abs(stored[n] - plan.y[t * np + n]) > 1e-9) {
          throw MismatchError("stored plan differs from the rebuilt plan at " +
                              bush.id(bush.terminals()[t]));
        }
      }
    }
  }
  return VerifyMyopic(bundle, tables, plan, config.tolerance);
}

}  // namespace gamebush

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

#include "gamebush/cli.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include "gamebush/error.h"
#include "gamebush/game_bundle.h"
#include "gamebush/perfect.h"
#include "gamebush/spanning.h"
#include "gamebush/strategies.h"
#include "gamebush/subgames.h"
#include "gamebush/sweep.h"

namespace gamebush::cli {
namespace {

using json = nlohmann::json;

GameBundle LoadInput(const RunConfig& config) {
  if (config.input.empty()) throw ParseError("--input is required");
  return LoadBundle(config.input, config.params);
}

std::vector<double> RootDistribution(const GameBundle& bundle,
                                     const std::vector<double>& q) {
  const std::size_t k = bundle.bush.roots().size();
  if (q.empty()) {
    if (k == 1) return {1.0};
    throw ValidationError("--q is required: the bush has " + std::to_string(k) +
                          " roots");
  }
  if (q.size() != k) {
    throw ValidationError("--q lists " + std::to_string(q.size()) +
                          " weights for " + std::to_string(k) + " roots");
  }
  double sum = 0.0;
  for (double x : q) {
    if (x < 0.0) throw ValidationError("--q has a negative weight");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("--q must sum to 1");
  return q;
}

void WriteFile(const std::string& dir, const std::string& name,
               const std::string& content) {
  std::filesystem::create_directories(dir);
  std::ofstream out(std::filesystem::path(dir) / name);
  if (!out) throw ParseError("cannot write " + name + " in " + dir);
  out << content;
}

// Dominant pure strategy per player, joined by commas.
std::string Summary(const StrategyTables& tables, const MixedProfile& sigma) {
  std::string out;
  for (int n = 0; n < tables.num_players(); ++n) {
    if (tables.num_strategies(n) <= 1) continue;
    const auto& s = sigma.sigma[n];
    auto best = std::max_element(s.begin(), s.end()) - s.begin();
    if (!out.empty()) out += ",";
    out += tables.Label(n, best);
  }
  return out;
}

double Weight(const StrategyTables& tables, const MixedProfile& sigma, int n,
              const std::string& label) {
  std::int64_t s = tables.FindLabel(n, label);
  return s < 0 ? 0.0 : sigma.sigma[n][s];
}

MixedProfile TwoByTwo(const StrategyTables& tables,
                      const std::vector<std::pair<std::string, double>>& first) {
  MixedProfile sigma = tables.Uniform();
  for (int n = 0; n < tables.num_players(); ++n) {
    if (tables.num_strategies(n) <= 1) continue;
    const auto& [label, w] = first[n];
    std::int64_t s = tables.FindLabel(n, label);
    std::fill(sigma.sigma[n].begin(), sigma.sigma[n].end(), 0.0);
    sigma.sigma[n][s] = w;
    sigma.sigma[n][1 - s] = 1.0 - w;
  }
  return sigma;
}

std::vector<std::vector<double>> Grid1(int mesh) {
  std::vector<std::vector<double>> qs;
  for (int i = 0; i <= mesh; ++i) {
    double p = static_cast<double>(i) / mesh;
    qs.push_back({p, 1.0 - p});
  }
  return qs;
}

// Expected payoffs of every pure profile of a one-shot two-player bundle.
json NormalForm(const GameBundle& bundle, const StrategyTables& tables) {
  json out = json::object();
  const std::vector<double> q(bundle.bush.roots().size(),
                              1.0 / bundle.bush.roots().size());
  for (std::int64_t a = 0; a < tables.num_strategies(0); ++a) {
    for (std::int64_t b = 0; b < tables.num_strategies(1); ++b) {
      std::vector<std::int64_t> choice = {a, b};
      Plan plan = MakePlan(bundle, tables, q, tables.Pure(choice));
      out[tables.Label(0, a) + "," + tables.Label(1, b)] =
          ExpectedPayoffs(bundle, plan);
    }
  }
  return out;
}

json PerfectExample(const std::string& path, int mesh,
                    const SolverConfig& solver) {
  GameBundle bundle = LoadBundle(path);
  StrategyTables tables(bundle.bush);
  const std::vector<double> q = {1.0};
  SolveResult raw = SolveMyopic(bundle, tables, q, solver);
  std::vector<PerfectEquilibrium> kept =
      FilterPerfect(bundle, tables, raw.equilibria, solver, mesh);
  json report;
  report["equilibria"] = json::array();
  report["retained"] = json::array();
  for (const Equilibrium& eq : raw.equilibria) {
    json e = EquilibriumToJson(bundle, tables, eq);
    std::string summary = Summary(tables, eq.sigma());
    e["summary"] = summary;
    bool retained = false;
    for (const PerfectEquilibrium& pe : kept) {
      if (pe.eq.sigma().sigma == eq.sigma().sigma) {
        retained = true;
        e["unresolved"] = pe.unresolved;
      }
    }
    e["retained"] = retained;
    report["equilibria"].push_back(e);
    if (retained) report["retained"].push_back(summary);
  }
  // Per-check verdicts for every raw equilibrium, retained or not.
  report["checks"] = json::array();
  for (const Equilibrium& eq : raw.equilibria) {
    json c;
    c["summary"] = Summary(tables, eq.sigma());
    c["subgames"] = json::array();
    for (const VertexSet& s : ProperSubgameSets(bundle.bush)) {
      SPerfectResult r = IsSPerfect(bundle, tables, s, eq.plan,
                                    solver.tolerance, mesh, solver.selector);
      c["subgames"].push_back({{"vertices", bundle.bush.Ids(s)},
                               {"verdict", VerdictName(r.verdict)},
                               {"reached", r.reached},
                               {"method", r.method},
                               {"q_prime", r.q_prime},
                               {"residual", r.residual}});
    }
    report["checks"].push_back(c);
  }
  report["normal_form"] = NormalForm(bundle, tables);
  return report;
}

}  // namespace

std::string DefaultDataDir() {
  if (const char* env = std::getenv("GB_DATA_DIR")) return env;
  return GB_DATA_DIR;
}

void CheckRunConfig(const RunConfig& config) {
  if (!(config.tolerance > 0.0)) throw ValidationError("--tol must be positive");
  if (config.mesh < 2) throw ValidationError("--mesh must be an integer k >= 2 (h = 1/k)");
  if (config.epsilon && !(*config.epsilon > 0.0)) {
    throw ValidationError("--epsilon must be positive");
  }
  if (config.bound_b && !(*config.bound_b > 0.0)) {
    throw ValidationError("--bound-B must be positive");
  }
  if (config.support_cap < 1) throw ValidationError("--support-cap must be positive");
  if (config.format != "json" && config.format != "csv") {
    throw ValidationError("--format must be csv or json");
  }
  Selector::Parse(config.selector);
}

SolverConfig MakeSolverConfig(const RunConfig& config) {
  SolverConfig s;
  s.tolerance = config.tolerance;
  s.support_cap = config.support_cap;
  s.selector = Selector::Parse(config.selector);
  s.seed = config.seed;
  if (config.epsilon || config.bound_b) {
    RegularizationConfig r;
    if (config.epsilon) r.epsilon = *config.epsilon;
    if (config.bound_b) r.bound_b = *config.bound_b;
    s.regularization = r;
  }
  return s;
}

Report CmdValidate(const RunConfig& config) {
  Report rep;
  try {
    GameBundle bundle = LoadInput(config);
    const GameBush& bush = bundle.bush;
    json& j = rep.json;
    j["valid"] = true;
    j["players"] = json::array();
    for (int n = 0; n < bush.num_players(); ++n) j["players"].push_back(bush.player_name(n));
    j["vertices"] = bush.num_vertices();
    j["roots"] = bush.Ids(bush.roots());
    j["terminals"] = bush.Ids(bush.terminals());
    j["meet"] = json::array();
    for (const Block& b : bundle.meet.blocks) j["meet"].push_back(bush.Ids(b));
    RecallReport recall = HasPerfectRecall(bush);
    j["perfect_recall"] = recall.ok;
    if (!recall.ok) j["recall_detail"] = recall.detail;
  } catch (const ValidationError& e) {
    rep.exit_code = 1;
    rep.json = {{"valid", false}, {"kind", e.kind()}, {"violations", e.what()}};
  } catch (const UnknownClassError& e) {
    rep.exit_code = 1;
    rep.json = {{"valid", false}, {"kind", e.kind()}, {"violations", e.what()}};
  }
  return rep;
}

Report CmdSubgames(const RunConfig& config) {
  GameBundle bundle = LoadInput(config);
  Report rep;
  SubgameFamily family = EnumerateSubgameSets(bundle.bush);
  rep.json = FamilyToJson(bundle.bush, family);
  RecallReport recall = HasPerfectRecall(bundle.bush);
  rep.json["perfect_recall"] = recall.ok;
  auto chain = IsSolvable(bundle.bush);
  if (chain) {
    json c = json::array();
    for (const VertexSet& s : *chain) c.push_back(bundle.bush.Ids(s));
    rep.json["solvable"] = c;
  } else {
    rep.json["solvable"] = nullptr;
  }
  return rep;
}

Report CmdSolve(const RunConfig& config) {
  GameBundle bundle = LoadInput(config);
  StrategyTables tables(bundle.bush);
  std::vector<double> q = RootDistribution(bundle, config.q);
  SolveResult result = SolveMyopic(bundle, tables, q, MakeSolverConfig(config));
  Report rep;
  rep.json["q"] = q;
  rep.json["equilibria"] = json::array();
  for (const Equilibrium& eq : result.equilibria) {
    rep.json["equilibria"].push_back(EquilibriumToJson(bundle, tables, eq));
  }
  rep.json["diagnostics"] = DiagnosticsToJson(result.diagnostics);
  rep.json["converged"] = result.converged();
  if (!result.converged()) rep.exit_code = 2;
  return rep;
}

Report CmdSweep(const RunConfig& config) {
  GameBundle bundle = LoadInput(config);
  StrategyTables tables(bundle.bush);
  SweepTable table = Sweep(bundle, tables, config.mesh, MakeSolverConfig(config));
  Report rep;
  rep.json = SweepToJson(bundle, tables, table);
  std::string csv = SweepToCsv(bundle, table);
  if (!config.out_dir.empty()) {
    WriteFile(config.out_dir, "sweep.csv", csv);
    WriteFile(config.out_dir, "sweep.json", rep.json.dump(2) + "\n");
  }
  if (config.format == "csv") rep.text = csv;
  if (!table.converged()) rep.exit_code = 2;
  return rep;
}

Report CmdPerfect(const RunConfig& config) {
  GameBundle bundle = LoadInput(config);
  StrategyTables tables(bundle.bush);
  std::optional<std::vector<std::vector<double>>> qs;
  if (!config.q.empty()) qs = std::vector<std::vector<double>>{RootDistribution(bundle, config.q)};
  PerfectResult result =
      SolveBundlePerfect(bundle, MakeSolverConfig(config), config.mesh, qs);
  Report rep;
  rep.json = PerfectToJson(bundle, tables, result);
  return rep;
}

Report CmdSpan(const RunConfig& config) {
  if (config.input.empty()) throw ParseError("--input is required");
  SpanInput input = LoadSpanInput(config.input);
  SpanResult result = HasSpanning(input.correspondence, input.pair);
  Report rep;
  rep.json = SpanToJson(input, result);
  return rep;
}

json Example1Report(const std::string& data_dir, const ParameterMap& params,
                    int mesh, const SolverConfig& solver) {
  GameBundle full = LoadBundle(data_dir + "/ex1.gb.json", params);
  GameBundle factor = LoadBundle(data_dir + "/ex1_factor.gb.json", params);
  const double s = full.parameters.at("s");
  json report;
  report["example"] = "ex1";
  report["s"] = s;

  // Player One committing to a mixed choice.
  StrategyTables factor_tables(factor.bush);
  const std::vector<double> one = {1.0};
  CommitmentResult commit = CommittedOptimum(factor, factor_tables, one);
  const double p_star = (s - 1.0 + std::sqrt(1.0 + s + s * s)) / (3.0 * s);
  auto f = [s](double p) {
    return (1.0 + s) * (1.0 - p) * p * p + (1.0 - p) * (1.0 - p) * p;
  };
  report["commitment"] = {{"p", commit.p},
                          {"value", commit.value},
                          {"closed_form_p", p_star},
                          {"closed_form_value", f(p_star)},
                          {"error_p", std::abs(commit.p - p_star)},
                          {"error_value", std::abs(commit.value - f(p_star))}};

  // Myopic equilibria of the same one-player game.
  SolveResult factor_eq = SolveMyopic(factor, factor_tables, one, solver);
  report["factor_myopic"] = json::array();
  double best_myopic = -std::numeric_limits<double>::infinity();
  for (const Equilibrium& eq : factor_eq.equilibria) {
    double p = Weight(factor_tables, eq.sigma(), 0, "X");
    report["factor_myopic"].push_back({{"p", p},
                                       {"payoff", eq.payoff[0]},
                                       {"residual", eq.certificate.residual}});
    best_myopic = std::max(best_myopic, eq.payoff[0]);
  }
  report["myopic_gap"] = f(p_star) - best_myopic;

  // The game between Two and Three as a family of subgames in p.
  const GameBush& bush = full.bush;
  VertexSet seed = {bush.RequireIndex("X"), bush.RequireIndex("Y")};
  GameBundle sub = Restrict(full, Closure(bush, seed));
  StrategyTables sub_tables(sub.bush);
  const int x_pos = sub.bush.root_position(sub.bush.RequireIndex("X"));
  json rows = json::array();
  double max_residual = 0.0, max_deviation = 0.0;
  for (const auto& qx : Grid1(mesh)) {
    std::vector<double> q(2);
    q[x_pos] = qx[0];
    q[1 - x_pos] = qx[1];
    const double p = qx[0];
    MixedProfile target = TwoByTwo(sub_tables, {{"", 0}, {"L", 1 - p}, {"l", 1 - p}});
    Plan plan = MakePlan(sub, sub_tables, q, target);
    MyopicCertificate cert = VerifyMyopic(sub, sub_tables, plan, solver.tolerance);
    max_residual = std::max(max_residual, cert.residual);
    SolveResult found = SolveMyopic(sub, sub_tables, q, solver);
    json eqs = json::array();
    for (const Equilibrium& eq : found.equilibria) {
      double alpha = Weight(sub_tables, eq.sigma(), 1, "L");
      double beta = Weight(sub_tables, eq.sigma(), 2, "l");
      if (p > 0.0 && p < 1.0) {
        max_deviation = std::max({max_deviation, std::abs(alpha - (1 - p)),
                                  std::abs(beta - (1 - p))});
      }
      eqs.push_back({{"alpha", alpha}, {"beta", beta},
                     {"residual", eq.certificate.residual},
                     {"family", !eq.family.empty()}});
    }
    rows.push_back({{"p", p}, {"indifference_residual", cert.residual},
                    {"certified", cert.valid()}, {"solver", eqs}});
  }
  report["subgame_sweep"] = {{"mesh", mesh},
                             {"rows", rows},
                             {"max_residual", max_residual},
                             {"max_interior_deviation", max_deviation}};

  // The full three-player game.
  StrategyTables tables(bush);
  SolveResult result = SolveMyopic(full, tables, one, solver);
  json eqs = json::array();
  for (const Equilibrium& eq : result.equilibria) {
    double x = Weight(tables, eq.sigma(), 0, "X");
    double r = 1.0 - Weight(tables, eq.sigma(), 2, "l");
    std::string fam = "other";
    if (x > 1 - 1e-6 && r > 1 - 1e-6) fam = "X&r";
    if (x < 1e-6 && r < 1e-6) fam = "Y&l";
    json e = EquilibriumToJson(full, tables, eq);
    e["family_type"] = fam;
    e["payoff_one"] = eq.payoff[0];
    eqs.push_back(e);
  }
  report["full_game"] = eqs;
  return report;
}

json Example2Report(const std::string& data_dir, int mesh,
                    const SolverConfig& solver) {
  json report = PerfectExample(data_dir + "/ex2.gb.json", mesh, solver);
  report["example"] = "ex2";
  return report;
}

json Example3Report(const std::string& data_dir, int mesh,
                    const SolverConfig& solver) {
  json report = PerfectExample(data_dir + "/ex3.gb.json", mesh, solver);
  report["example"] = "ex3";
  json other = PerfectExample(data_dir + "/ex2.gb.json", mesh, solver);
  report["same_normal_form_as_ex2"] = report["normal_form"] == other["normal_form"];
  return report;
}

Report CmdExample(const RunConfig& config) {
  const std::string dir = DefaultDataDir();
  SolverConfig solver = MakeSolverConfig(config);
  Report rep;
  if (config.example == "ex1") {
    rep.json = Example1Report(dir, config.params, config.mesh, solver);
  } else if (config.example == "ex2") {
    rep.json = Example2Report(dir, config.mesh, solver);
  } else if (config.example == "ex3") {
    rep.json = Example3Report(dir, config.mesh, solver);
  } else {
    throw ValidationError("unknown example '" + config.example +
                          "' (expected ex1, ex2 or ex3)");
  }
  return rep;
}

int Run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  static const std::map<std::string, Report (*)(const RunConfig&)> kVerbs = {
      {"validate", CmdValidate}, {"subgames", CmdSubgames},
      {"solve", CmdSolve},       {"sweep", CmdSweep},
      {"perfect", CmdPerfect},   {"span", CmdSpan},
      {"example", CmdExample}};
  try {
    CheckRunConfig(config);
    auto it = kVerbs.find(config.verb);
    if (it == kVerbs.end()) throw ValidationError("unknown verb '" + config.verb + "'");
    Report rep = it->second(config);
    if (!rep.text.empty()) {
      out << rep.text;
    } else {
      out << rep.json.dump(2) << "\n";
    }
    if (!config.out_dir.empty() && config.verb != "sweep") {
      WriteFile(config.out_dir, config.verb + ".json", rep.json.dump(2) + "\n");
    }
    if (rep.exit_code == 2) {
      err << json{{"error", {{"kind", "non-convergence"},
                             {"message", "some points were not certified; "
                                         "partial results written"}}}}
                 .dump()
          << "\n";
    }
    return rep.exit_code;
  } catch (const Error& e) {
    err << json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump()
        << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump()
        << "\n";
    return 1;
  }
}

}  // namespace gamebush::cli

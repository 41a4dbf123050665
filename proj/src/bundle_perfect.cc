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

#include "gamebush/perfect.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gamebush/error.h"
#include "gamebush/parallel.h"
#include "gamebush/simd/kernels.h"
#include "gamebush/sweep.h"

namespace gamebush {

using nlohmann::json;

const char* VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kTrue:
      return "certified-true";
    case Verdict::kFalse:
      return "certified-false";
    case Verdict::kUnresolved:
      break;
  }
  return "unresolved";
}

namespace {

int FindSet(const GameBush& bush, int player, const std::string& name) {
  for (int w : bush.info_sets_of(player)) {
    if (bush.info_sets()[w].name == name) return w;
  }
  return -1;
}

double MaxOf(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

// The full plan's payoffs on the terminals of `sub`, as a plan of `sub` at q'.
Plan RestrictPlan(const GameBundle& bundle, const Plan& plan,
                  const GameBundle& sub, const StrategyTables& sub_tables,
                  std::span<const double> q_prime, const MixedProfile& sigma) {
  const GameBush& full = bundle.bush;
  const GameBush& sb = sub.bush;
  const int np = full.num_players();
  Plan sp;
  sp.q.assign(q_prime.begin(), q_prime.end());
  sp.sigma = sigma;
  sp.reach = Reach(sub, sub_tables, q_prime, sigma);
  sp.y.assign(sb.terminals().size() * np, 0.0);
  for (std::size_t t = 0; t < sb.terminals().size(); ++t) {
    int v = full.Index(sb.id(sb.terminals()[t]));
    int pos = full.terminal_position(v);
    std::copy_n(plan.y.begin() + pos * np, np, sp.y.begin() + t * np);
  }
  for (int c = 0; c < sub.meet.num_blocks(); ++c) {
    int v = full.Index(sb.id(sub.meet.blocks[c][0]));
    int fc = bundle.meet.index[v];
    std::vector<double> w;
    if (sp.reach.conditional[c].empty()) {
      w = plan.reach.conditional[fc].empty() ? plan.witness[fc]
                                             : plan.reach.conditional[fc];
    }
    sp.witness.push_back(std::move(w));
    sp.branch.push_back(fc < static_cast<int>(plan.branch.size())
                            ? plan.branch[fc]
                            : 0);
    sp.num_candidates.push_back(1);
    sp.tags.push_back(-1);
  }
  return sp;
}

bool AllConstant(const GameBundle& bundle) {
  for (const PayoffModel& m : bundle.continuation) {
    if (m.kind() != PayoffModel::Kind::kConstant) return false;
  }
  return true;
}

}  // namespace

MixedProfile RestrictProfile(const StrategyTables& tables,
                             const MixedProfile& sigma,
                             const StrategyTables& sub_tables) {
  BehaviourProfile full = MixedToBehaviour(tables, sigma).behaviour;
  const GameBush& fb = tables.bush();
  const GameBush& sb = sub_tables.bush();
  BehaviourProfile local;
  for (const InfoSet& set : sb.info_sets()) {
    int w = FindSet(fb, set.player, set.name);
    if (w < 0) throw MismatchError("information set " + set.name + " not found");
    local.probs.push_back(full.probs[w]);
  }
  return BehaviourToMixed(sub_tables, local);
}

SPerfectResult IsSPerfect(const GameBundle& bundle,
                          const StrategyTables& tables, const VertexSet& s,
                          const Plan& plan, double tolerance, int mesh,
                          const Selector& selector) {
  GameBundle sub = Restrict(bundle, s);
  StrategyTables st(sub.bush);
  MixedProfile sigma = RestrictProfile(tables, plan.sigma, st);
  const GameBush& sb = sub.bush;
  const int r = static_cast<int>(sb.roots().size());
  std::vector<double> mass(r);
  double m = 0.0;
  for (int i = 0; i < r; ++i) {
    mass[i] = plan.reach.vertex[bundle.bush.Index(sb.id(sb.roots()[i]))];
    m += mass[i];
  }

  SPerfectResult out;
  out.residual = std::numeric_limits<double>::infinity();
  if (m > 0.0) {
    out.reached = true;
    out.method = "conditional";
    for (double& x : mass) x /= m;
    Plan sp = RestrictPlan(bundle, plan, sub, st, mass, sigma);
    out.q_prime = mass;
    if (MaxOf(PlanResiduals(sub, sp)) > kMembershipTolerance) {
      out.verdict = Verdict::kFalse;
      return out;
    }
    out.residual = VerifyMyopic(sub, st, sp, tolerance).residual;
    out.verdict = out.residual <= tolerance ? Verdict::kTrue : Verdict::kFalse;
    return out;
  }

  // Unreached: the restricted pair must be an m-equilibrium for some q'.
  auto attempt = [&](const std::vector<double>& q) {
    double best = std::numeric_limits<double>::infinity();
    Plan kept = RestrictPlan(bundle, plan, sub, st, q, sigma);
    if (MaxOf(PlanResiduals(sub, kept)) <= kMembershipTolerance) {
      best = VerifyMyopic(sub, st, kept, tolerance).residual;
    }
    try {
      Plan fresh = MakePlan(sub, st, q, sigma, selector);
      best = std::min(best, VerifyMyopic(sub, st, fresh, tolerance).residual);
    } catch (const NoPlanError&) {
    }
    if (best < out.residual) {
      out.residual = best;
      out.q_prime = q;
    }
    return best <= tolerance;
  };

  if (r == 1) {
    out.method = "single-root";
    out.verdict = attempt({1.0}) ? Verdict::kTrue : Verdict::kFalse;
    return out;
  }
  if (r == 2 && AllConstant(sub)) {
    // Every value is affine in x = q'(first root), so the certified set is
    // an interval cut out by one linear inequality per (player, s, t).
    out.method = "interval";
    Plan p0 = MakePlan(sub, st, std::vector<double>{0.0, 1.0}, sigma);
    Plan p1 = MakePlan(sub, st, std::vector<double>{1.0, 0.0}, sigma);
    MyopicCertificate c0 = VerifyMyopic(sub, st, p0, tolerance);
    MyopicCertificate c1 = VerifyMyopic(sub, st, p1, tolerance);
    double lo = 0.0, hi = 1.0;
    for (int n = 0; n < st.num_players(); ++n) {
      for (std::int64_t a = 0; a < st.num_strategies(n); ++a) {
        double w = sigma.sigma[n][a];
        if (w <= 0.0) continue;
        for (std::int64_t b = 0; b < st.num_strategies(n); ++b) {
          // w (f_b(x) - f_a(x)) <= tolerance
          double g0 = w * (c0.values[n][b] - c0.values[n][a]);
          double g1 = w * (c1.values[n][b] - c1.values[n][a]);
          double slope = g1 - g0;
          if (slope == 0.0) {
            if (g0 > tolerance) lo = 2.0;
          } else if (slope > 0.0) {
            hi = std::min(hi, (tolerance - g0) / slope);
          } else {
            lo = std::max(lo, (tolerance - g0) / slope);
          }
        }
      }
    }
    if (lo <= hi) {
      double x = 0.5 * (lo + hi);
      attempt({x, 1.0 - x});
      out.q_prime = {x, 1.0 - x};
      out.verdict = Verdict::kTrue;
    } else {
      out.verdict = Verdict::kFalse;
    }
    return out;
  }
  out.method = "grid";
  int k = mesh;
  while (k > 1 && BarycentricGrid(r, k).size() > 20000) k /= 2;
  for (const auto& c : BarycentricGrid(r, k)) {
    std::vector<double> q;
    for (int x : c) q.push_back(static_cast<double>(x) / k);
    if (attempt(q)) {
      out.verdict = Verdict::kTrue;
      return out;
    }
  }
  out.verdict = Verdict::kUnresolved;
  return out;
}

std::vector<std::vector<double>> PerRootPayoffs(const GameBundle& bundle,
                                                const StrategyTables& tables,
                                                const Plan& plan) {
  const GameBush& bush = bundle.bush;
  const int np = bush.num_players();
  std::vector<std::vector<double>> out;
  for (std::size_t r = 0; r < bush.roots().size(); ++r) {
    std::vector<double> q(bush.roots().size(), 0.0);
    q[r] = 1.0;
    ReachReport reach = Reach(bundle, tables, q, plan.sigma);
    std::vector<double> row(np, 0.0);
    for (std::size_t t = 0; t < reach.terminal.size(); ++t) {
      for (int n = 0; n < np; ++n) row[n] += reach.terminal[t] * plan.y[t * np + n];
    }
    out.push_back(std::move(row));
  }
  return out;
}

ComposeResult Compose(const GameBundle& bundle, const VertexSet& s,
                      const GameBundle& factor, const Plan& factor_plan,
                      const GameBundle& sub, const Plan& sub_plan,
                      double tau) {
  const GameBush& bush = bundle.bush;
  RecallReport recall = HasPerfectRecall(bush);
  if (!recall.ok) throw RecallError("no perfect recall: " + recall.detail);
  const GameBush& fb = factor.bush;
  const GameBush& sb = sub.bush;
  const int np = bush.num_players();

  // Conditional on R' induced by the factor plan.
  double m = 0.0;
  std::vector<double> q_prime;
  for (int u : sb.roots()) {
    q_prime.push_back(factor_plan.reach.vertex[fb.Index(sb.id(u))]);
    m += q_prime.back();
  }
  if (m > 0.0) {
    for (double& x : q_prime) x /= m;
    if (simd::MaxAbsDiff(q_prime, sub_plan.q) > tau) {
      throw MismatchError(
          "subgame root distribution differs from the factor conditional");
    }
  }

  StrategyTables tables(bush), ft(fb), st(sb);
  ComposeResult out;
  for (int n = 0; n < np; ++n) {
    const StrategySpace& sp = tables.space(n);
    const StrategySpace& fsp = ft.space(n);
    const StrategySpace& ssp = st.space(n);
    std::vector<int> fslot(sp.sets.size(), -1), sslot(sp.sets.size(), -1);
    for (std::size_t k = 0; k < sp.sets.size(); ++k) {
      const std::string& name = bush.info_sets()[sp.sets[k]].name;
      int fw = FindSet(fb, n, name), sw = FindSet(sb, n, name);
      for (std::size_t j = 0; j < fsp.sets.size(); ++j) {
        if (fsp.sets[j] == fw) fslot[k] = j;
      }
      for (std::size_t j = 0; j < ssp.sets.size(); ++j) {
        if (ssp.sets[j] == sw) sslot[k] = j;
      }
    }
    std::vector<double> s_n(sp.size);
    std::vector<int> fa(fsp.sets.size()), sa(ssp.sets.size());
    for (std::int64_t x = 0; x < sp.size; ++x) {
      for (std::size_t k = 0; k < sp.sets.size(); ++k) {
        int a = sp.Action(x, k);
        if (fslot[k] >= 0) fa[fslot[k]] = a;
        if (sslot[k] >= 0) sa[sslot[k]] = a;
      }
      s_n[x] = factor_plan.sigma.sigma[n][fsp.Encode(fa)] *
               sub_plan.sigma.sigma[n][ssp.Encode(sa)];
    }
    out.sigma.sigma.push_back(std::move(s_n));
  }

  std::vector<char> in(bush.num_vertices(), 0);
  for (int v : s) in[v] = 1;
  Plan& plan = out.plan;
  plan.q = factor_plan.q;
  plan.sigma = out.sigma;
  plan.reach = Reach(bundle, tables, plan.q, plan.sigma);
  plan.y.assign(bush.terminals().size() * np, 0.0);
  for (std::size_t t = 0; t < bush.terminals().size(); ++t) {
    const std::string& id = bush.id(bush.terminals()[t]);
    const Plan& src = in[bush.terminals()[t]] ? sub_plan : factor_plan;
    const GameBush& sbush = in[bush.terminals()[t]] ? sb : fb;
    int pos = sbush.terminal_position(sbush.Index(id));
    std::copy_n(src.y.begin() + pos * np, np, plan.y.begin() + t * np);
  }
  for (int c = 0; c < bundle.meet.num_blocks(); ++c) {
    const int first = bundle.meet.blocks[c][0];
    const bool inside = in[first];
    const GameBundle& part = inside ? sub : factor;
    const Plan& src = inside ? sub_plan : factor_plan;
    int pc = part.meet.index[part.bush.Index(bush.id(first))];
    std::vector<double> w;
    if (plan.reach.conditional[c].empty()) {
      w = src.reach.conditional[pc].empty() ? src.witness[pc]
                                            : src.reach.conditional[pc];
    }
    plan.witness.push_back(std::move(w));
    plan.branch.push_back(src.branch[pc]);
    plan.num_candidates.push_back(src.num_candidates[pc]);
    plan.tags.push_back(src.tags[pc]);
  }
  out.plan_residual = MaxOf(PlanResiduals(bundle, plan));
  out.certificate = VerifyMyopic(bundle, tables, plan, 2.0 * tau);
  return out;
}

std::vector<VertexSet> ProperSubgameSets(const GameBush& bush) {
  SubgameFamily family = EnumerateSubgameSets(bush, kDefaultFamilyCap, true);
  std::vector<VertexSet> out;
  for (const SubgameSet& s : family.sets) {
    if (s.degenerate || s.vertices.empty()) continue;
    if (static_cast<int>(s.vertices.size()) == bush.num_vertices()) continue;
    out.push_back(s.vertices);
  }
  return out;
}

std::vector<PerfectEquilibrium> FilterPerfect(
    const GameBundle& bundle, const StrategyTables& tables,
    std::vector<Equilibrium> equilibria, const SolverConfig& config, int mesh) {
  std::vector<VertexSet> sets = ProperSubgameSets(bundle.bush);
  std::vector<PerfectEquilibrium> out;
  for (Equilibrium& eq : equilibria) {
    PerfectEquilibrium pe;
    bool keep = true;
    for (const VertexSet& s : sets) {
      SPerfectResult r = IsSPerfect(bundle, tables, s, eq.plan,
                                    eq.certificate.tolerance, mesh,
                                    config.selector);
      if (r.verdict == Verdict::kFalse) keep = false;
      if (r.verdict == Verdict::kUnresolved) pe.unresolved = true;
      pe.checks.emplace_back(s, std::move(r));
    }
    if (!keep) continue;
    pe.eq = std::move(eq);
    out.push_back(std::move(pe));
  }
  return out;
}

namespace {

struct Level {
  std::vector<std::vector<Equilibrium>> per_q;
  std::vector<std::vector<std::string>> notes;
};

double EqDistance(const Equilibrium& a, const Equilibrium& b) {
  double d = simd::MaxAbsDiff(a.plan.y, b.plan.y);
  for (std::size_t n = 0; n < a.sigma().sigma.size(); ++n) {
    d = std::max(d, simd::MaxAbsDiff(a.sigma().sigma[n], b.sigma().sigma[n]));
  }
  return d;
}

Level SolveOn(const GameBundle& bundle,
              const std::vector<std::vector<double>>& qs,
              const SolverConfig& config, int mesh,
              std::vector<std::vector<std::string>>* cuts) {
  Level level;
  level.per_q.resize(qs.size());
  level.notes.resize(qs.size());
  const GameBush& bush = bundle.bush;

  // Innermost proper subgame whose root classes are at most pairs, so that
  // the sampled continuation lives on a segment.
  std::optional<VertexSet> cut;
  for (const VertexSet& s : ProperSubgameSets(bush)) {
    bool small = true;
    for (const auto& c : FactorRootClasses(bundle, s)) small = small && c.size() <= 2;
    if (small) {
      cut = s;
      break;
    }
  }

  StrategyTables tables(bush);
  if (!cut) {
    ParallelFor(qs.size(), [&](std::size_t i) {
      SolveResult r = SolveMyopic(bundle, tables, qs[i], config);
      level.per_q[i] = std::move(r.equilibria);
      level.notes[i] = std::move(r.diagnostics.notes);
    });
    return level;
  }
  if (cuts) cuts->push_back(bush.Ids(*cut));

  GameBundle sub = Restrict(bundle, *cut);
  StrategyTables st(sub.bush);
  const GameBush& sb = sub.bush;
  const int np = bush.num_players();
  auto classes = FactorRootClasses(bundle, *cut);

  // Root distributions of the subgame to sample, per class.
  std::vector<std::vector<double>> sub_qs;
  std::vector<std::pair<int, std::vector<double>>> sample_of;  // (class, w)
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    const auto& cls = classes[ci];
    const int k = cls.size() == 1 ? 0 : mesh;
    for (int i = 0; i <= k; ++i) {
      std::vector<double> w = cls.size() == 1
                                  ? std::vector<double>{1.0}
                                  : std::vector<double>{
                                        static_cast<double>(i) / mesh,
                                        1.0 - static_cast<double>(i) / mesh};
      std::vector<double> q(sb.roots().size(), 0.0);
      for (std::size_t j = 0; j < cls.size(); ++j) {
        q[sb.root_position(sb.Index(cls[j]))] = w[j];
      }
      sub_qs.push_back(std::move(q));
      sample_of.emplace_back(ci, std::move(w));
    }
  }
  Level inner = SolveOn(sub, sub_qs, config, mesh, nullptr);

  std::vector<std::pair<std::vector<double>, Equilibrium>> stored;
  std::vector<std::vector<NearestSample>> points(classes.size());
  for (std::size_t i = 0; i < sub_qs.size(); ++i) {
    auto [ci, w] = sample_of[i];
    const auto& cls = classes[ci];
    NearestSample sample;
    sample.w = w;
    for (Equilibrium& eq : inner.per_q[i]) {
      auto rows = PerRootPayoffs(sub, st, eq.plan);
      PayoffCandidate cand;
      for (const auto& id : cls) {
        const auto& row = rows[sb.root_position(sb.Index(id))];
        cand.payoff.insert(cand.payoff.end(), row.begin(), row.end());
      }
      cand.tag = static_cast<std::int64_t>(stored.size());
      stored.emplace_back(sub_qs[i], std::move(eq));
      sample.candidates.push_back(std::move(cand));
    }
    points[ci].push_back(std::move(sample));
  }
  std::vector<IdModel> models;
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    const int size = static_cast<int>(classes[ci].size());
    models.emplace_back(classes[ci],
                        PayoffModel::Nearest(size, np, std::move(points[ci]),
                                             size == 1 ? 1.0 : 1.0 / mesh));
  }
  GameBundle factor = Factor(bundle, *cut, std::move(models));
  Level outer = SolveOn(factor, qs, config, mesh, cuts);
  StrategyTables ft(factor.bush);
  const GameBush& fb = factor.bush;

  ParallelFor(qs.size(), [&](std::size_t qi) {
    auto& notes = level.notes[qi];
    notes = outer.notes[qi];
    int failed = 0;
    for (const Equilibrium& fe : outer.per_q[qi]) {
      double m = 0.0;
      std::vector<double> q_prime;
      for (int u : sb.roots()) {
        q_prime.push_back(fe.plan.reach.vertex[fb.Index(sb.id(u))]);
        m += q_prime.back();
      }
      std::vector<const Equilibrium*> choices;
      std::vector<Equilibrium> resolved;
      for (int c = 0; c < factor.meet.num_blocks(); ++c) {
        if (fe.plan.tags[c] >= 0) choices.push_back(&stored[fe.plan.tags[c]].second);
      }
      if (m > 0.0) {
        for (double& x : q_prime) x /= m;
        choices.erase(
            std::remove_if(choices.begin(), choices.end(),
                           [&](const Equilibrium* e) {
                             return simd::MaxAbsDiff(e->plan.q, q_prime) >
                                    config.tolerance;
                           }),
            choices.end());
        if (choices.empty()) {
          // The factor conditional falls between samples: solve the subgame
          // there and take the equilibrium whose root payoffs are closest to
          // what the factor game assumed.
          Level exact = SolveOn(sub, {q_prime}, config, mesh, nullptr);
          double best = std::numeric_limits<double>::infinity();
          for (Equilibrium& e : exact.per_q[0]) {
            auto rows = PerRootPayoffs(sub, st, e.plan);
            double d = 0.0;
            for (int u : sb.roots()) {
              int t = fb.terminal_position(fb.Index(sb.id(u)));
              for (int n = 0; n < np; ++n) {
                d = std::max(d, std::abs(rows[sb.root_position(u)][n] -
                                         fe.plan.y[t * np + n]));
              }
            }
            if (d < best) {
              best = d;
              resolved.clear();
              resolved.push_back(std::move(e));
            }
          }
          for (const Equilibrium& e : resolved) choices.push_back(&e);
        }
      }
      if (choices.empty() && !stored.empty()) choices.push_back(&stored[0].second);
      bool composed = false;
      for (const Equilibrium* se : choices) {
        try {
          ComposeResult cr = Compose(bundle, *cut, factor, fe.plan, sub,
                                     se->plan, config.tolerance);
          if (!cr.certificate.valid() ||
              cr.plan_residual > kMembershipTolerance) {
            continue;
          }
          Equilibrium eq;
          for (const auto& v : cr.certificate.values) {
            eq.payoff.push_back(simd::MaxValue(v));
          }
          eq.plan = std::move(cr.plan);
          eq.certificate = std::move(cr.certificate);
          eq.source = "composed";
          bool dup = false;
          for (const Equilibrium& kept : level.per_q[qi]) {
            dup = dup || EqDistance(kept, eq) <= config.dedupe;
          }
          if (!dup) level.per_q[qi].push_back(std::move(eq));
          composed = true;
          break;
        } catch (const MismatchError&) {
        }
      }
      if (!composed) ++failed;
    }
    if (failed > 0) {
      notes.push_back(std::to_string(failed) +
                      " factor equilibria did not compose at the sampled "
                      "subgame resolution");
    }
  });
  return level;
}

}  // namespace

PerfectResult SolveBundlePerfect(
    const GameBundle& bundle, const SolverConfig& config, int mesh,
    std::optional<std::vector<std::vector<double>>> qs) {
  RecallReport recall = HasPerfectRecall(bundle.bush);
  if (!recall.ok) throw RecallError("no perfect recall: " + recall.detail);
  if (!qs) {
    qs.emplace();
    for (const auto& c :
         BarycentricGrid(static_cast<int>(bundle.bush.roots().size()), mesh)) {
      std::vector<double> q;
      for (int x : c) q.push_back(static_cast<double>(x) / mesh);
      qs->push_back(std::move(q));
    }
  }
  PerfectResult result;
  Level level = SolveOn(bundle, *qs, config, mesh, &result.cuts);
  StrategyTables tables(bundle.bush);
  for (std::size_t i = 0; i < qs->size(); ++i) {
    PerfectRow row;
    row.q = (*qs)[i];
    row.notes = std::move(level.notes[i]);
    const std::size_t before = level.per_q[i].size();
    row.equilibria = FilterPerfect(bundle, tables, std::move(level.per_q[i]),
                                   config, mesh);
    if (row.equilibria.size() < before) {
      row.notes.push_back(std::to_string(before - row.equilibria.size()) +
                          " composed equilibria failed an S-perfect check");
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

json PerfectToJson(const GameBundle& bundle, const StrategyTables& tables,
                   const PerfectResult& result) {
  const GameBush& bush = bundle.bush;
  json doc;
  doc["cuts"] = json::array();
  doc["cuts"] = result.cuts;
  doc["rows"] = json::array();
  for (const PerfectRow& row : result.rows) {
    json eqs = json::array();
    for (const PerfectEquilibrium& pe : row.equilibria) {
      json e = EquilibriumToJson(bundle, tables, pe.eq);
      json checks = json::array();
      for (const auto& [s, r] : pe.checks) {
        checks.push_back({{"set", bush.Ids(s)},
                          {"verdict", VerdictName(r.verdict)},
                          {"method", r.method},
                          {"reached", r.reached},
                          {"q_prime", r.q_prime}});
      }
      e["checks"] = checks;
      e["unresolved"] = pe.unresolved;
      eqs.push_back(e);
    }
    doc["rows"].push_back(
        {{"q", row.q}, {"equilibria", eqs}, {"notes", row.notes}});
  }
  return doc;
}

}  // namespace gamebush

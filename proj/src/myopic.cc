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

#include "gamebush/myopic.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "gamebush/error.h"
#include "gamebush/parallel.h"
#include "gamebush/simd/kernels.h"

namespace gamebush {

double Lambda(double reach, double epsilon) {
  if (reach >= 2.0 * epsilon) return 1.0;
  if (reach <= epsilon) return 0.0;
  return (reach - epsilon) / epsilon;
}

Plan RegularizedPlan(const GameBundle& bundle, const StrategyTables& tables,
                     std::span<const double> q, const MixedProfile& sigma,
                     const Selector& selector, const RegularizationConfig& reg) {
  if (!(reg.epsilon > 0.0)) throw PreconditionError("epsilon must be positive");
  double b = reg.bound_b > 0.0 ? reg.bound_b : bundle.PayoffBound() + 1.0;
  if (!(b > bundle.PayoffBound())) {
    throw PreconditionError("bound B must exceed every continuation payoff bound");
  }
  const GameBush& bush = bundle.bush;
  const int np = bush.num_players();
  Plan plan;
  plan.q.assign(q.begin(), q.end());
  plan.sigma = sigma;
  plan.reach = Reach(bundle, tables, q, sigma);
  plan.y.assign(bush.terminals().size() * np, b);
  for (int c = 0; c < bundle.meet.num_blocks(); ++c) {
    const Block& block = bundle.meet.blocks[c];
    double lambda = Lambda(plan.reach.class_prob[c], reg.epsilon);
    plan.witness.emplace_back();
    plan.branch.push_back(0);
    plan.num_candidates.push_back(0);
    plan.tags.push_back(-1);
    if (lambda == 0.0) continue;
    auto sel = SelectCandidate(bundle.model(c), plan.reach.conditional[c],
                               selector, c);
    if (!sel) {
      throw NoPlanError("no plan: continuation of a class containing " +
                        bush.id(block[0]) + " is empty");
    }
    plan.branch.back() = sel->index;
    plan.num_candidates.back() = sel->num_candidates;
    plan.tags.back() = sel->candidate.tag;
    for (std::size_t i = 0; i < block.size(); ++i) {
      int t = bush.terminal_position(block[i]);
      for (int n = 0; n < np; ++n) {
        plan.y[t * np + n] =
            lambda * sel->candidate.payoff[i * np + n] + (1.0 - lambda) * b;
      }
    }
  }
  return plan;
}

MyopicCertificate VerifyMyopic(const GameBundle& bundle,
                               const StrategyTables& tables, const Plan& plan,
                               double tolerance) {
  MyopicCertificate cert;
  cert.sigma = plan.sigma;
  cert.tolerance = tolerance;
  for (int n = 0; n < tables.num_players(); ++n) {
    cert.values.push_back(ActionValues(bundle, tables, plan, n));
  }
  cert.residual = CertificateResidual(plan.sigma.sigma, cert.values);
  return cert;
}

std::function<Plan(const MixedProfile&)> PlanBuilder(
    const GameBundle& bundle, const StrategyTables& tables,
    std::span<const double> q, const SolverConfig& config,
    const Selector& selector) {
  std::vector<double> qv(q.begin(), q.end());
  if (config.regularization) {
    RegularizationConfig reg = *config.regularization;
    return [&bundle, &tables, qv, selector, reg](const MixedProfile& s) {
      return RegularizedPlan(bundle, tables, qv, s, selector, reg);
    };
  }
  return [&bundle, &tables, qv, selector](const MixedProfile& s) {
    return MakePlan(bundle, tables, qv, s, selector);
  };
}

namespace {

double Halton(std::uint64_t index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

int NthPrime(int k) {
  static const std::vector<int> primes = [] {
    std::vector<int> p;
    for (int c = 2; p.size() < 512; ++c) {
      bool prime = true;
      for (int d : p) {
        if (d * d > c) break;
        if (c % d == 0) {
          prime = false;
          break;
        }
      }
      if (prime) p.push_back(c);
    }
    return p;
  }();
  return primes[k % primes.size()];
}

// A point of the simplex over `support` of a factor of size m.
std::vector<double> SimplexPoint(int m, const std::vector<int>& support,
                                 std::uint64_t index, int& dim) {
  std::vector<double> x(m, 0.0);
  double total = 0.0;
  for (int a : support) {
    double u = Halton(index, NthPrime(dim++));
    u = std::clamp(u, 1e-6, 1.0 - 1e-6);
    x[a] = -std::log(u);
    total += x[a];
  }
  for (int a : support) x[a] /= total;
  return x;
}

std::vector<double> Flatten(const ProductPoint& p) {
  std::vector<double> out;
  for (const auto& f : p) out.insert(out.end(), f.begin(), f.end());
  return out;
}

double Distance(const Equilibrium& a, const Equilibrium& b) {
  std::vector<double> x = Flatten(a.sigma().sigma), y = Flatten(b.sigma().sigma);
  double d = simd::MaxAbsDiff(x, y);
  return std::max(d, simd::MaxAbsDiff(a.plan.y, b.plan.y));
}

struct Context {
  const GameBundle& bundle;
  const StrategyTables& tables;
  const SolverConfig& config;
  std::function<Plan(const MixedProfile&)> plan_of;
  // Two players with constant continuations: every support system is linear.
  bool linear = false;
};

std::optional<Equilibrium> Certify(const Context& ctx, const MixedProfile& sigma,
                                   const char* source) {
  Plan plan;
  try {
    plan = ctx.plan_of(sigma);
  } catch (const NoPlanError&) {
    return std::nullopt;
  }
  MyopicCertificate cert =
      VerifyMyopic(ctx.bundle, ctx.tables, plan, ctx.config.tolerance);
  if (!cert.valid()) return std::nullopt;
  Equilibrium eq;
  for (const auto& v : cert.values) eq.payoff.push_back(simd::MaxValue(v));
  eq.plan = std::move(plan);
  eq.certificate = std::move(cert);
  eq.source = source;
  return eq;
}

// Drops weights below 1e-9 and keeps the cleaner profile when it still
// certifies.
std::optional<Equilibrium> CertifySnapped(const Context& ctx,
                                          const MixedProfile& sigma,
                                          const char* source) {
  MixedProfile snapped = sigma;
  bool changed = false;
  for (auto& f : snapped.sigma) {
    double total = 0.0;
    for (double& x : f) {
      if (x != 0.0 && std::abs(x) < 1e-9) {
        x = 0.0;
        changed = true;
      }
      total += x;
    }
    for (double& x : f) x /= total;
  }
  if (changed) {
    if (auto eq = Certify(ctx, snapped, source)) return eq;
  }
  return Certify(ctx, sigma, source);
}

using Support = std::vector<std::vector<int>>;

// Unknowns: the support weights of every player, then one value u_n per
// player. Equations: v^n_a = u_n on the support and unit sums.
class SupportSystem {
 public:
  SupportSystem(const Context& ctx, const Support& support)
      : ctx_(ctx), support_(support) {
    for (const auto& s : support_) k_sigma_ += s.size();
    k_ = k_sigma_ + static_cast<int>(support_.size());
  }

  int size() const { return k_; }

  MixedProfile Unpack(const Eigen::VectorXd& x) const {
    MixedProfile p;
    int i = 0;
    for (std::size_t n = 0; n < support_.size(); ++n) {
      p.sigma.emplace_back(ctx_.tables.num_strategies(n), 0.0);
      for (int a : support_[n]) p.sigma[n][a] = x[i++];
    }
    return p;
  }

  std::optional<Eigen::VectorXd> Residual(const Eigen::VectorXd& x) const {
    Plan plan;
    try {
      plan = ctx_.plan_of(Unpack(x));
    } catch (const NoPlanError&) {
      return std::nullopt;
    }
    Eigen::VectorXd r(k_);
    int i = 0, j = 0;
    for (std::size_t n = 0; n < support_.size(); ++n) {
      std::vector<double> v = ActionValues(ctx_.bundle, ctx_.tables, plan, n);
      double total = -1.0;
      for (int a : support_[n]) {
        r[i++] = v[a] - x[k_sigma_ + n];
        total += x[j++];
      }
      r[k_sigma_ + n] = total;
    }
    return r;
  }

  Eigen::VectorXd Start(std::uint64_t index) const {
    Eigen::VectorXd x(k_);
    int i = 0, dim = 0;
    for (std::size_t n = 0; n < support_.size(); ++n) {
      const int m = static_cast<int>(support_[n].size());
      std::vector<double> w(m, 1.0 / m);
      if (index > 0) {
        std::vector<int> local(m);
        for (int a = 0; a < m; ++a) local[a] = a;
        w = SimplexPoint(m, local, index, dim);
      }
      for (int a = 0; a < m; ++a) x[i++] = w[a];
    }
    for (std::size_t n = 0; n < support_.size(); ++n) x[k_sigma_ + n] = 0.0;
    // Seed u_n with the mean value over the support.
    if (auto r = Residual(x)) {
      int i2 = 0;
      for (std::size_t n = 0; n < support_.size(); ++n) {
        double mean = 0.0;
        for (std::size_t a = 0; a < support_[n].size(); ++a) mean += (*r)[i2++];
        x[k_sigma_ + n] = mean / support_[n].size();
      }
    }
    return x;
  }

  // Gauss-Newton with minimum-norm steps and backtracking.
  std::optional<Eigen::VectorXd> Solve(Eigen::VectorXd x) const {
    auto r = Residual(x);
    if (!r) return std::nullopt;
    double norm = r->norm();
    // A linear system is settled by the first full step; a second one only
    // polishes rounding.
    const int max_it = ctx_.linear ? 2 : 60;
    for (int it = 0; it < max_it && norm > 1e-14; ++it) {
      Eigen::MatrixXd jac(k_, k_);
      for (int c = 0; c < k_; ++c) {
        const double h = 1e-7 * std::max(1.0, std::abs(x[c]));
        Eigen::VectorXd xp = x;
        xp[c] += h;
        auto rp = Residual(xp);
        if (!rp) return std::nullopt;
        jac.col(c) = (*rp - *r) / h;
      }
      Eigen::VectorXd step =
          Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(jac).solve(
              -*r);
      double t = 1.0;
      bool improved = false;
      for (int ls = 0; ls < 30; ++ls, t *= 0.5) {
        Eigen::VectorXd xt = x + t * step;
        auto rt = Residual(xt);
        if (rt && rt->norm() < norm) {
          x = xt;
          r = rt;
          norm = rt->norm();
          improved = true;
          break;
        }
      }
      if (!improved || (t * step).norm() < 1e-15) break;
    }
    if (norm > 1e-8) return std::nullopt;
    return x;
  }

  int k_sigma() const { return k_sigma_; }

 private:
  const Context& ctx_;
  Support support_;
  int k_sigma_ = 0;
  int k_ = 0;
};

std::vector<Support> EnumerateSupports(const StrategyTables& tables) {
  std::vector<Support> out{Support{}};
  for (int n = 0; n < tables.num_players(); ++n) {
    const int m = static_cast<int>(tables.num_strategies(n));
    std::vector<Support> next;
    for (const Support& partial : out) {
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        Support s = partial;
        s.emplace_back();
        for (int a = 0; a < m; ++a) {
          if (mask >> a & 1) s.back().push_back(a);
        }
        next.push_back(std::move(s));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::optional<Equilibrium> FromSupport(const Context& ctx, const Support& support,
                                       std::uint64_t seed) {
  bool all_pure = true;
  for (const auto& s : support) all_pure = all_pure && s.size() == 1;
  if (all_pure) {
    MixedProfile p;
    for (std::size_t n = 0; n < support.size(); ++n) {
      p.sigma.emplace_back(ctx.tables.num_strategies(n), 0.0);
      p.sigma[n][support[n][0]] = 1.0;
    }
    return Certify(ctx, p, "support");
  }
  SupportSystem sys(ctx, support);
  const int starts = ctx.linear ? 1 : std::max(1, ctx.config.support_starts);
  for (int start = 0; start < starts; ++start) {
    std::uint64_t index = start == 0 ? 0 : seed * 7919 + start;
    auto x = sys.Solve(sys.Start(index));
    if (!x) continue;
    MixedProfile p = sys.Unpack(*x);
    bool feasible = true;
    for (auto& f : p.sigma) {
      double total = 0.0;
      for (double& w : f) {
        if (w < -1e-9) feasible = false;
        w = std::max(w, 0.0);
        total += w;
      }
      for (double& w : f) w /= total;
    }
    if (!feasible) continue;
    if (auto eq = CertifySnapped(ctx, p, "support")) return eq;
  }
  return std::nullopt;
}

struct StartOutcome {
  std::optional<Equilibrium> eq;
  std::int64_t iterations = 0;
  bool converged = false;
  bool no_plan = false;
};

StartOutcome Iterate(const Context& ctx, MixedProfile sigma) {
  StartOutcome out;
  const SolverConfig& cfg = ctx.config;
  double eta = cfg.eta;
  double last_check = std::numeric_limits<double>::infinity();
  for (int it = 0; it < cfg.max_iterations; ++it) {
    ++out.iterations;
    Plan plan;
    try {
      plan = ctx.plan_of(sigma);
    } catch (const NoPlanError&) {
      out.no_plan = true;
      return out;
    }
    double step = 0.0;
    MixedProfile next;
    for (int n = 0; n < ctx.tables.num_players(); ++n) {
      std::vector<double> v = ActionValues(ctx.bundle, ctx.tables, plan, n);
      std::vector<double> x(v.size());
      for (std::size_t a = 0; a < v.size(); ++a) {
        x[a] = sigma.sigma[n][a] + eta * v[a];
      }
      std::vector<double> r = SimplexProject(x);
      step = std::max(step, simd::MaxAbsDiff(r, sigma.sigma[n]));
      next.sigma.push_back(std::move(r));
    }
    sigma = std::move(next);
    if (step < cfg.step_tolerance) {
      out.converged = true;
      break;
    }
    if ((it + 1) % 100 == 0) {
      // Not contracting: the map is cycling or crawling. Damp harder.
      if (step > 0.5 * last_check) {
        eta *= 0.5;
        if (eta < 1e-4) return out;
      }
      last_check = step;
    }
  }
  out.eq = CertifySnapped(ctx, sigma, "iteration");
  if (out.eq) out.converged = true;
  return out;
}

std::vector<FreeDirection> DetectFamily(const Context& ctx,
                                        const Equilibrium& eq) {
  constexpr double kDelta = 1e-3;
  std::vector<FreeDirection> out;
  const MixedProfile& sigma = eq.sigma();
  for (int n = 0; n < ctx.tables.num_players(); ++n) {
    const auto m = ctx.tables.num_strategies(n);
    for (std::int64_t a = 0; a < m; ++a) {
      if (sigma.sigma[n][a] < kDelta) continue;
      for (std::int64_t b = 0; b < m; ++b) {
        if (b == a) continue;
        MixedProfile moved = sigma;
        moved.sigma[n][a] -= kDelta;
        moved.sigma[n][b] += kDelta;
        if (Certify(ctx, moved, "family")) out.push_back({n, a, b});
      }
    }
  }
  return out;
}

bool OnSegment(const Equilibrium& x, const Equilibrium& a,
               const Equilibrium& b, double tol) {
  if (x.plan.branch != a.plan.branch || x.plan.branch != b.plan.branch) return false;
  std::vector<double> px = Flatten(x.sigma().sigma), pa = Flatten(a.sigma().sigma),
                      pb = Flatten(b.sigma().sigma);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < px.size(); ++k) {
    num += (px[k] - pa[k]) * (pb[k] - pa[k]);
    den += (pb[k] - pa[k]) * (pb[k] - pa[k]);
  }
  if (den == 0.0) return false;
  const double t = num / den;
  if (t < 0.0 || t > 1.0) return false;
  double off = 0.0;
  for (std::size_t k = 0; k < px.size(); ++k) {
    off = std::max(off, std::abs(pa[k] + t * (pb[k] - pa[k]) - px[k]));
  }
  return off <= tol;
}

bool Less(const Equilibrium& a, const Equilibrium& b) {
  std::vector<double> x = Flatten(a.sigma().sigma), y = Flatten(b.sigma().sigma);
  if (x != y) return x < y;
  return a.plan.y < b.plan.y;
}

}  // namespace

MixedProfile HaltonProfile(const StrategyTables& tables, std::uint64_t index) {
  MixedProfile p;
  int dim = 0;
  for (int n = 0; n < tables.num_players(); ++n) {
    const int m = static_cast<int>(tables.num_strategies(n));
    std::vector<int> all(m);
    for (int a = 0; a < m; ++a) all[a] = a;
    p.sigma.push_back(SimplexPoint(m, all, index, dim));
  }
  return p;
}

SolveResult SolveMyopic(const GameBundle& bundle, const StrategyTables& tables,
                        std::span<const double> q, const SolverConfig& config) {
  SolveResult result;
  SolveDiagnostics& diag = result.diagnostics;

  // Selector branches: one per combination of candidate indices of the
  // set-valued classes.
  std::vector<Selector> branches;
  std::vector<int> radix;
  for (const PayoffModel& m : bundle.continuation) {
    radix.push_back(std::max(1, m.max_candidates()));
  }
  std::int64_t total_branches = 1;
  for (int r : radix) total_branches = std::min<std::int64_t>(
                          total_branches * r, std::int64_t{1} << 40);
  if (total_branches == 1) {
    branches.push_back(config.selector);
  } else {
    std::vector<int> digits(radix.size(), 0);
    for (std::int64_t b = 0; b < std::min<std::int64_t>(total_branches,
                                                        config.branch_cap);
         ++b) {
      Selector s = config.selector;
      s.rule = Selector::Rule::kExplicit;
      s.branch = digits;
      branches.push_back(std::move(s));
      for (std::size_t i = digits.size(); i-- > 0;) {
        if (++digits[i] < radix[i]) break;
        digits[i] = 0;
      }
    }
    if (total_branches > config.branch_cap) {
      diag.notes.push_back("selector branches capped at " +
                           std::to_string(config.branch_cap) + " of " +
                           std::to_string(total_branches));
    }
  }
  diag.branches = static_cast<int>(branches.size());

  std::int64_t profiles = 1;
  for (int n = 0; n < tables.num_players(); ++n) {
    profiles = std::min<std::int64_t>(profiles * tables.num_strategies(n),
                                      std::int64_t{1} << 40);
  }
  std::int64_t systems = 1;
  for (int n = 0; n < tables.num_players(); ++n) {
    const std::int64_t m = std::min<std::int64_t>(tables.num_strategies(n), 40);
    systems = std::min<std::int64_t>(systems * ((std::int64_t{1} << m) - 1),
                                     std::int64_t{1} << 40);
  }
  const bool enumerate = profiles <= config.support_cap &&
                         systems <= config.support_system_cap;
  if (profiles <= config.support_cap && !enumerate) {
    diag.notes.push_back(std::to_string(systems) +
                         " support systems exceed the cap; iterating only");
  }
  std::vector<Support> supports;
  if (enumerate) supports = EnumerateSupports(tables);
  diag.support_complete = enumerate;
  // With constant continuations every support system is linear, so complete
  // enumeration already finds the extreme equilibria.
  bool multilinear = !config.regularization.has_value();
  for (const PayoffModel& m : bundle.continuation) {
    if (m.kind() != PayoffModel::Kind::kConstant) multilinear = false;
  }
  const int multistarts =
      enumerate && multilinear && config.skip_iteration_when_linear
          ? 0
          : config.multistarts;

  std::vector<Equilibrium> found;
  for (const Selector& selector : branches) {
    Context ctx{bundle, tables, config,
                PlanBuilder(bundle, tables, q, config, selector),
                multilinear && tables.num_players() <= 2};
    std::vector<std::optional<Equilibrium>> from_support(supports.size());
    ParallelFor(supports.size(), [&](std::size_t i) {
      from_support[i] = FromSupport(ctx, supports[i], config.seed);
    });
    diag.support_systems += static_cast<int>(supports.size());
    for (auto& eq : from_support) {
      if (eq) {
        ++diag.support_solutions;
        found.push_back(std::move(*eq));
      }
    }
    std::vector<StartOutcome> starts(multistarts);
    ParallelFor(starts.size(), [&](std::size_t i) {
      starts[i] = Iterate(
          ctx, HaltonProfile(tables, config.seed * 1000003 + i + 1));
    });
    for (auto& s : starts) {
      ++diag.starts;
      diag.iterations += s.iterations;
      if (s.no_plan) ++diag.no_plan;
      if (s.eq) {
        ++diag.converged_starts;
        found.push_back(std::move(*s.eq));
      }
    }
  }

  for (Equilibrium& eq : found) {
    bool duplicate = false;
    for (const Equilibrium& kept : result.equilibria) {
      if (Distance(eq, kept) <= config.dedupe) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) result.equilibria.push_back(std::move(eq));
  }
  if (config.prune_segments) {
    // Iteration often lands inside a segment of equilibria whose ends the
    // support systems already found; keep the ends only.
    std::vector<const Equilibrium*> ends;
    for (const Equilibrium& eq : result.equilibria) {
      if (eq.source == "support") ends.push_back(&eq);
    }
    std::vector<char> inside(result.equilibria.size(), 0);
    for (std::size_t k = 0; k < result.equilibria.size(); ++k) {
      const Equilibrium& eq = result.equilibria[k];
      if (eq.source == "support") continue;
      for (std::size_t i = 0; i < ends.size() && !inside[k]; ++i) {
        for (std::size_t j = i + 1; j < ends.size() && !inside[k]; ++j) {
          inside[k] = OnSegment(eq, *ends[i], *ends[j], config.dedupe);
        }
      }
    }
    std::vector<Equilibrium> kept;
    for (std::size_t k = 0; k < result.equilibria.size(); ++k) {
      if (inside[k]) {
        ++diag.pruned;
      } else {
        kept.push_back(std::move(result.equilibria[k]));
      }
    }
    result.equilibria = std::move(kept);
  }
  std::sort(result.equilibria.begin(), result.equilibria.end(), Less);
  if (config.detect_families) {
    for (Equilibrium& eq : result.equilibria) {
      Selector selector = config.selector;
      if (branches.size() > 1) {
        selector.rule = Selector::Rule::kExplicit;
        selector.branch = eq.plan.branch;
      }
      Context ctx{bundle, tables, config,
                  PlanBuilder(bundle, tables, q, config, selector)};
      eq.family = DetectFamily(ctx, eq);
    }
  }
  if (diag.no_plan > 0) {
    diag.notes.push_back(std::to_string(diag.no_plan) +
                         " starts stopped at an empty continuation value");
  }
  return result;
}

CommitmentResult CommittedOptimum(const GameBundle& bundle,
                                  const StrategyTables& tables,
                                  std::span<const double> q,
                                  const Selector& selector) {
  CommitmentResult out;
  for (int n = 0; n < tables.num_players(); ++n) {
    if (tables.num_strategies(n) == 1) continue;
    if (out.player >= 0 || tables.num_strategies(n) != 2) {
      throw PreconditionError(
          "commitment needs exactly one player with two pure strategies");
    }
    out.player = n;
  }
  if (out.player < 0) {
    throw PreconditionError("commitment needs a player with two strategies");
  }
  const int n = out.player;
  auto value = [&](double p) {
    MixedProfile sigma = tables.Uniform();
    sigma.sigma[n] = {p, 1.0 - p};
    Plan plan = MakePlan(bundle, tables, q, sigma, selector);
    return ExpectedPayoffs(bundle, plan)[n];
  };
  constexpr int kGrid = 1000;
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    double v = value(static_cast<double>(i) / kGrid);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  double lo = std::max(0.0, (best - 1.0) / kGrid);
  double hi = std::min(1.0, (best + 1.0) / kGrid);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
  double fa = value(a), fb = value(b);
  while (hi - lo > 1e-12) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + g * (hi - lo);
      fb = value(b);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - g * (hi - lo);
      fa = value(a);
    }
  }
  out.p = 0.5 * (lo + hi);
  out.value = value(out.p);
  if (best_value > out.value) {
    out.p = static_cast<double>(best) / kGrid;
    out.value = best_value;
  }
  return out;
}

}  // namespace gamebush

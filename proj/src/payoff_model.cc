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

#include "gamebush/payoff_model.h"

#include <algorithm>
#include <cmath>

#include "gamebush/error.h"

namespace gamebush {
namespace {

double MaxMagnitude(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::fabs(v));
  return m;
}

double L2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

void CheckShape(int class_size, int num_players, std::size_t payoff_size) {
  if (payoff_size != static_cast<std::size_t>(class_size) * num_players) {
    throw ParseError("payoff table has " + std::to_string(payoff_size) +
                     " entries, expected " +
                     std::to_string(class_size * num_players));
  }
}

}  // namespace

PayoffModel PayoffModel::Constant(int class_size, int num_players,
                                  std::vector<double> payoff) {
  CheckShape(class_size, num_players, payoff.size());
  PayoffModel m;
  m.kind_ = Kind::kConstant;
  m.class_size_ = class_size;
  m.num_players_ = num_players;
  m.bound_ = MaxMagnitude(payoff) + 1.0;
  m.constant_ = std::move(payoff);
  return m;
}

PayoffModel PayoffModel::Function(int class_size, int num_players,
                                  std::string name, ParameterMap params,
                                  PayoffEvaluator evaluator, double bound,
                                  int max_candidates) {
  PayoffModel m;
  m.kind_ = Kind::kFunction;
  m.class_size_ = class_size;
  m.num_players_ = num_players;
  m.function_name_ = std::move(name);
  m.function_params_ = std::move(params);
  m.evaluator_ = std::move(evaluator);
  m.bound_ = bound;
  m.max_candidates_ = max_candidates;
  return m;
}

PayoffModel PayoffModel::LinearBranches(
    int class_size, int num_players,
    std::vector<std::vector<GraphSample>> branches) {
  if (class_size > 2) {
    throw ParseError("linear interpolation needs a class of at most two "
                     "terminals; use nearest");
  }
  PayoffModel m;
  m.kind_ = Kind::kSamples;
  m.interpolation_ = Interpolation::kLinear;
  m.class_size_ = class_size;
  m.num_players_ = num_players;
  m.max_candidates_ = static_cast<int>(branches.size());
  for (auto& branch : branches) {
    if (branch.empty()) throw ParseError("empty sample branch");
    for (const GraphSample& s : branch) {
      CheckShape(class_size, num_players, s.payoff.size());
      if (static_cast<int>(s.w.size()) != class_size) {
        throw ParseError("sample point has the wrong dimension");
      }
      m.bound_ = std::max(m.bound_, MaxMagnitude(s.payoff) + 1.0);
    }
    std::stable_sort(branch.begin(), branch.end(),
                     [](const GraphSample& a, const GraphSample& b) {
                       return a.w[0] < b.w[0];
                     });
  }
  m.branches_ = std::move(branches);
  return m;
}

PayoffModel PayoffModel::Nearest(int class_size, int num_players,
                                 std::vector<NearestSample> points,
                                 double radius) {
  PayoffModel m;
  m.kind_ = Kind::kSamples;
  m.interpolation_ = Interpolation::kNearest;
  m.class_size_ = class_size;
  m.num_players_ = num_players;
  m.radius_ = radius;
  m.max_candidates_ = 0;
  for (const NearestSample& p : points) {
    if (static_cast<int>(p.w.size()) != class_size) {
      throw ParseError("sample point has the wrong dimension");
    }
    m.max_candidates_ =
        std::max(m.max_candidates_, static_cast<int>(p.candidates.size()));
    for (const PayoffCandidate& c : p.candidates) {
      CheckShape(class_size, num_players, c.payoff.size());
      m.bound_ = std::max(m.bound_, MaxMagnitude(c.payoff) + 1.0);
    }
  }
  m.nearest_ = std::move(points);
  return m;
}

std::vector<PayoffCandidate> PayoffModel::Evaluate(
    std::span<const double> w) const {
  switch (kind_) {
    case Kind::kConstant:
      return {PayoffCandidate{constant_, -1}};
    case Kind::kFunction:
      return evaluator_(w);
    case Kind::kSamples:
      break;
  }
  std::vector<PayoffCandidate> out;
  if (interpolation_ == Interpolation::kLinear) {
    const double x = class_size_ == 1 ? 0.0 : w[0];
    constexpr double kEdge = 1e-12;
    for (const auto& branch : branches_) {
      if (class_size_ == 1 || branch.size() == 1) {
        if (class_size_ == 1 || std::fabs(branch[0].w[0] - x) <= kEdge) {
          out.push_back({branch[0].payoff, branch[0].tag});
        }
        continue;
      }
      if (x < branch.front().w[0] - kEdge || x > branch.back().w[0] + kEdge) {
        continue;
      }
      std::size_t hi = 1;
      while (hi + 1 < branch.size() && branch[hi].w[0] < x) ++hi;
      const GraphSample& a = branch[hi - 1];
      const GraphSample& b = branch[hi];
      double span = b.w[0] - a.w[0];
      double t = span > 0 ? std::clamp((x - a.w[0]) / span, 0.0, 1.0) : 0.0;
      PayoffCandidate c;
      c.payoff.resize(a.payoff.size());
      for (std::size_t i = 0; i < c.payoff.size(); ++i) {
        c.payoff[i] = (1.0 - t) * a.payoff[i] + t * b.payoff[i];
      }
      c.tag = t <= 0.5 ? a.tag : b.tag;
      out.push_back(std::move(c));
    }
    return out;
  }
  const NearestSample* best = nullptr;
  double best_d = std::numeric_limits<double>::infinity();
  for (const NearestSample& p : nearest_) {
    double d = L2(p.w, w);
    if (d < best_d - 1e-12) {
      best_d = d;
      best = &p;
    }
  }
  if (best == nullptr || best_d > radius_ + 1e-12) return out;
  return best->candidates;
}

double PayoffModel::Distance(std::span<const double> w,
                             std::span<const double> y) const {
  double best = std::numeric_limits<double>::infinity();
  for (const PayoffCandidate& c : Evaluate(w)) {
    best = std::min(best, L2(c.payoff, y));
  }
  return best;
}

namespace {

double RequireParam(const ParameterMap& params, const std::string& key,
                    const std::string& model) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw ParseError("builtin '" + model + "' needs parameter '" + key + "'");
  }
  return it->second;
}

// Value of the zero-sum continuation between players Two and Three after
// player One picked state X with probability p = w[0]: both mix with
// probability 1 - p on L and l, which equalizes the mixed matrix
// [[1 + 8p, 1], [1, 9 - 8p]]. Rows are the two states, columns the players.
PayoffModel Example1ZeroSumValue(const ParameterMap& params, int class_size,
                                 int num_players) {
  if (class_size != 2 || num_players != 3) {
    throw ParseError("ex1_zero_sum_value needs a 2-terminal class and 3 "
                     "players");
  }
  const double s = RequireParam(params, "s", "ex1_zero_sum_value");
  PayoffEvaluator eval = [s](std::span<const double> w) {
    const double p = w[0];
    const double alpha = 1.0 - p;  // P(L)
    const double beta = 1.0 - p;   // P(l)
    // State X: One earns 1 + s on (R, l); Two earns 9 on (L, l), else 1.
    double x_one = (1.0 + s) * (1.0 - alpha) * beta;
    double x_two = 1.0 + 8.0 * alpha * beta;
    // State Y: One earns 1 on (L, r); Two earns 9 on (R, r), else 1.
    double y_one = alpha * (1.0 - beta);
    double y_two = 1.0 + 8.0 * (1.0 - alpha) * (1.0 - beta);
    return std::vector<PayoffCandidate>{
        {{x_one, x_two, -x_two, y_one, y_two, -y_two}, -1}};
  };
  return PayoffModel::Function(class_size, num_players, "ex1_zero_sum_value",
                               params, std::move(eval),
                               10.0 + std::fabs(s));
}

}  // namespace

PayoffModel MakeBuiltinModel(const std::string& name,
                             const ParameterMap& params, int class_size,
                             int num_players) {
  if (name == "ex1_zero_sum_value") {
    return Example1ZeroSumValue(params, class_size, num_players);
  }
  throw ParseError("unknown builtin payoff model '" + name + "'");
}

std::vector<std::string> BuiltinModelNames() { return {"ex1_zero_sum_value"}; }

}  // namespace gamebush

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

#ifndef GAMEBUSH_PAYOFF_MODEL_H_
#define GAMEBUSH_PAYOFF_MODEL_H_

// Continuation payoffs F_C over Delta(C) x R^{C x N}. The correspondence is
// represented by what can be evaluated: a constant point, a named evaluator,
// or a finite graph sample with an interpolation rule. F_C(w) may be empty.

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gamebush/expr.h"

namespace gamebush {

// Membership tolerance for (w, y) in a sampled or evaluated graph (L2).
inline constexpr double kMembershipTolerance = 1e-6;

struct PayoffCandidate {
  // |C| x N, terminal-major.
  std::vector<double> payoff;
  // Provenance of a sample (e.g. which subgame equilibrium produced it).
  std::int64_t tag = -1;
};

using PayoffEvaluator =
    std::function<std::vector<PayoffCandidate>(std::span<const double> w)>;

enum class Interpolation { kLinear, kNearest };

struct GraphSample {
  std::vector<double> w;
  std::vector<double> payoff;
  std::int64_t tag = -1;
};

struct NearestSample {
  std::vector<double> w;
  std::vector<PayoffCandidate> candidates;
};

class PayoffModel {
 public:
  enum class Kind { kConstant, kFunction, kSamples };

  static PayoffModel Constant(int class_size, int num_players,
                              std::vector<double> payoff);
  // `bound` must strictly exceed every payoff magnitude the evaluator returns.
  static PayoffModel Function(int class_size, int num_players, std::string name,
                              ParameterMap params, PayoffEvaluator evaluator,
                              double bound, int max_candidates = 1);
  // Piecewise-linear branches over the first coordinate of w (|C| <= 2).
  // Each branch is defined on the hull of its samples' w; elsewhere empty.
  static PayoffModel LinearBranches(int class_size, int num_players,
                                    std::vector<std::vector<GraphSample>> branches);
  // Piecewise-constant: values of the nearest sample within `radius`.
  static PayoffModel Nearest(int class_size, int num_players,
                             std::vector<NearestSample> points, double radius);

  Kind kind() const { return kind_; }
  Interpolation interpolation() const { return interpolation_; }
  int class_size() const { return class_size_; }
  int num_players() const { return num_players_; }
  double bound() const { return bound_; }
  int max_candidates() const { return max_candidates_; }

  // Every element of F_C(w), in a deterministic order.
  std::vector<PayoffCandidate> Evaluate(std::span<const double> w) const;

  // L2 distance from y to F_C(w); +inf when F_C(w) is empty.
  double Distance(std::span<const double> w, std::span<const double> y) const;
  bool Contains(std::span<const double> w, std::span<const double> y,
                double tol = kMembershipTolerance) const {
    return Distance(w, y) <= tol;
  }

  const std::vector<double>& constant() const { return constant_; }
  const std::string& function_name() const { return function_name_; }
  const ParameterMap& function_params() const { return function_params_; }
  const std::vector<std::vector<GraphSample>>& branches() const {
    return branches_;
  }
  const std::vector<NearestSample>& nearest_points() const { return nearest_; }
  double radius() const { return radius_; }

 private:
  Kind kind_ = Kind::kConstant;
  Interpolation interpolation_ = Interpolation::kLinear;
  int class_size_ = 0;
  int num_players_ = 0;
  double bound_ = 0.0;
  int max_candidates_ = 1;
  std::vector<double> constant_;
  std::string function_name_;
  ParameterMap function_params_;
  PayoffEvaluator evaluator_;
  std::vector<std::vector<GraphSample>> branches_;
  std::vector<NearestSample> nearest_;
  double radius_ = 0.0;
};

// Registered evaluators usable from bundle files by name. Throws ParseError
// for unknown names or missing parameters.
PayoffModel MakeBuiltinModel(const std::string& name, const ParameterMap& params,
                             int class_size, int num_players);
std::vector<std::string> BuiltinModelNames();

}  // namespace gamebush

#endif  // GAMEBUSH_PAYOFF_MODEL_H_

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

#include "gamebush/simplex.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "gamebush/simd/kernels.h"

namespace gamebush {

void SimplexProject(std::span<const double> v, std::span<double> out) {
  const std::size_t n = v.size();
  if (n == 0) return;
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    cumulative += u[j];
    double t = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  simd::ShiftClampSum(v, theta, out);
}

std::vector<double> SimplexProject(std::span<const double> v) {
  std::vector<double> out(v.size());
  SimplexProject(v, out);
  return out;
}

ProductPoint Retract(const ProductPoint& x) {
  ProductPoint out;
  out.reserve(x.size());
  for (const auto& f : x) out.push_back(SimplexProject(f));
  return out;
}

double NashResidual(const ProductPoint& sigma, const ProductPoint& v) {
  double sq = 0.0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    std::vector<double> shifted(sigma[i].size());
    for (std::size_t a = 0; a < shifted.size(); ++a) {
      shifted[a] = sigma[i][a] + v[i][a];
    }
    std::vector<double> r = SimplexProject(shifted);
    for (std::size_t a = 0; a < r.size(); ++a) {
      double d = r[a] - sigma[i][a];
      sq += d * d;
    }
  }
  return std::sqrt(sq);
}

double CertificateResidual(const ProductPoint& sigma, const ProductPoint& v) {
  double worst = 0.0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    double best = simd::MaxValue(v[i]);
    for (std::size_t a = 0; a < v[i].size(); ++a) {
      worst = std::max(worst, sigma[i][a] * (best - v[i][a]));
    }
  }
  return worst;
}

}  // namespace gamebush

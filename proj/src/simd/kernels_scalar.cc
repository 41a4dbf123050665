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

#include <algorithm>
#include <cmath>
#include <limits>

#include "gamebush/simd/kernels.h"

namespace gamebush::simd {
namespace {

void XorWordsScalar(std::uint64_t* dst, const std::uint64_t* src,
                    std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

double DotScalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

double ShiftClampSumScalar(const double* x, double shift, double* out,
                           std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::max(x[i] - shift, 0.0);
    sum += out[i];
  }
  return sum;
}

double MaxAbsDiffScalar(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

double MaxValueScalar(const double* a, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, a[i]);
  return m;
}

}  // namespace

const KernelTable& ScalarKernels() {
  static const KernelTable table{"scalar",          XorWordsScalar,
                                 DotScalar,         ShiftClampSumScalar,
                                 MaxAbsDiffScalar,  MaxValueScalar};
  return table;
}

}  // namespace gamebush::simd

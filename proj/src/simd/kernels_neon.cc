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

#include <arm_neon.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "gamebush/simd/kernels.h"

namespace gamebush::simd {
namespace {

void XorWordsNeon(std::uint64_t* dst, const std::uint64_t* src,
                  std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_u64(dst + i, veorq_u64(vld1q_u64(dst + i), vld1q_u64(src + i)));
  }
  for (; i < n; ++i) dst[i] ^= src[i];
}

double DotNeon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  double sum = vaddvq_f64(acc);
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

double ShiftClampSumNeon(const double* x, double shift, double* out,
                         std::size_t n) {
  const float64x2_t s = vdupq_n_f64(shift);
  const float64x2_t zero = vdupq_n_f64(0.0);
  float64x2_t acc = zero;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t v = vmaxq_f64(vsubq_f64(vld1q_f64(x + i), s), zero);
    vst1q_f64(out + i, v);
    acc = vaddq_f64(acc, v);
  }
  double sum = vaddvq_f64(acc);
  for (; i < n; ++i) {
    out[i] = std::max(x[i] - shift, 0.0);
    sum += out[i];
  }
  return sum;
}

double MaxAbsDiffNeon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vmaxq_f64(acc, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  }
  double m = vmaxvq_f64(acc);
  for (; i < n; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

double MaxValueNeon(const double* a, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  if (n >= 2) {
    float64x2_t acc = vld1q_f64(a);
    for (i = 2; i + 2 <= n; i += 2) acc = vmaxq_f64(acc, vld1q_f64(a + i));
    m = vmaxvq_f64(acc);
  }
  for (; i < n; ++i) m = std::max(m, a[i]);
  return m;
}

}  // namespace

const KernelTable& NeonKernelTable() {
  static const KernelTable table{"neon",         XorWordsNeon,
                                 DotNeon,        ShiftClampSumNeon,
                                 MaxAbsDiffNeon, MaxValueNeon};
  return table;
}

}  // namespace gamebush::simd

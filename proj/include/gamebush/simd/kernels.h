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

#ifndef GAMEBUSH_SIMD_KERNELS_H_
#define GAMEBUSH_SIMD_KERNELS_H_

// Data-parallel inner loops used by the solver and the homology code. Each
// kernel has a scalar reference implementation; vector variants (AVX2 on
// x86-64, NEON on AArch64) are selected once at runtime. GB_SIMD=scalar|avx2|neon
// forces a variant.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace gamebush::simd {

struct KernelTable {
  const char* name;
  // dst[i] ^= src[i]
  void (*xor_words)(std::uint64_t* dst, const std::uint64_t* src,
                    std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  // out[i] = max(x[i] - shift, 0); returns the sum of out.
  double (*shift_clamp_sum)(const double* x, double shift, double* out,
                            std::size_t n);
  double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
  // -inf for n == 0.
  double (*max_value)(const double* a, std::size_t n);
};

const KernelTable& ScalarKernels();
// nullptr when the variant is not compiled in or the CPU lacks the ISA.
const KernelTable* Avx2Kernels();
const KernelTable* NeonKernels();

// The active table; resolved on first use.
const KernelTable& Active();

// Names of every variant usable on this machine, scalar first.
std::vector<const KernelTable*> Available();

inline void XorWords(std::span<std::uint64_t> dst,
                     std::span<const std::uint64_t> src) {
  Active().xor_words(dst.data(), src.data(), dst.size());
}
inline double Dot(std::span<const double> a, std::span<const double> b) {
  return Active().dot(a.data(), b.data(), a.size());
}
inline double ShiftClampSum(std::span<const double> x, double shift,
                            std::span<double> out) {
  return Active().shift_clamp_sum(x.data(), shift, out.data(), x.size());
}
inline double MaxAbsDiff(std::span<const double> a,
                         std::span<const double> b) {
  return Active().max_abs_diff(a.data(), b.data(), a.size());
}
inline double MaxValue(std::span<const double> a) {
  return Active().max_value(a.data(), a.size());
}

}  // namespace gamebush::simd

#endif  // GAMEBUSH_SIMD_KERNELS_H_

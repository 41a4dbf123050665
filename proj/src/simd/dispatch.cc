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

#include <cstdlib>
#include <string>

#include "gamebush/simd/kernels.h"

namespace gamebush::simd {

#if GB_HAVE_AVX2
const KernelTable& Avx2KernelTable();
#endif
#if GB_HAVE_NEON
const KernelTable& NeonKernelTable();
#endif

const KernelTable* Avx2Kernels() {
#if GB_HAVE_AVX2
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return &Avx2KernelTable();
#endif
  return nullptr;
}

const KernelTable* NeonKernels() {
#if GB_HAVE_NEON
  return &NeonKernelTable();  // mandatory on AArch64
#else
  return nullptr;
#endif
}

std::vector<const KernelTable*> Available() {
  std::vector<const KernelTable*> out{&ScalarKernels()};
  if (const auto* t = Avx2Kernels()) out.push_back(t);
  if (const auto* t = NeonKernels()) out.push_back(t);
  return out;
}

namespace {

const KernelTable& Resolve() {
  const char* forced = std::getenv("GB_SIMD");
  if (forced != nullptr) {
    for (const KernelTable* t : Available()) {
      if (std::string(forced) == t->name) return *t;
    }
  }
  if (const auto* t = Avx2Kernels()) return *t;
  if (const auto* t = NeonKernels()) return *t;
  return ScalarKernels();
}

}  // namespace

const KernelTable& Active() {
  static const KernelTable& table = Resolve();
  return table;
}

}  // namespace gamebush::simd

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

#ifndef GAMEBUSH_GF2_H_
#define GAMEBUSH_GF2_H_

#include <cstdint>
#include <optional>
#include <vector>

namespace gamebush::gf2 {

// Rows as sorted column lists; entries are the ones of the matrix.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<int>> entries;

  SparseMatrix() = default;
  SparseMatrix(int r, int c) : rows(r), cols(c), entries(r) {}
  // Toggles entry (r, c).
  void Flip(int r, int c);
  bool Get(int r, int c) const;
};

// Product over the two-element field.
SparseMatrix Multiply(const SparseMatrix& a, const SparseMatrix& b);
bool IsZero(const SparseMatrix& a);

enum class Method { kAuto, kDense, kSparse };

// Matrices with at most this many columns use bit-packed dense elimination.
inline constexpr int kDenseColumnLimit = 5000;

int Rank(const SparseMatrix& a, Method method = Method::kAuto);

// Some x with A x = b, or nullopt when the system is inconsistent. Free
// variables are set to zero.
std::optional<std::vector<std::uint8_t>> Solve(const SparseMatrix& a,
                                               const std::vector<std::uint8_t>& b,
                                               Method method = Method::kAuto);

}  // namespace gamebush::gf2

#endif  // GAMEBUSH_GF2_H_

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

#include "gamebush/gf2.h"

#include <algorithm>
#include <iterator>
#include <map>
#include <span>

#include "gamebush/simd/kernels.h"

namespace gamebush::gf2 {

void SparseMatrix::Flip(int r, int c) {
  auto& row = entries[r];
  auto it = std::lower_bound(row.begin(), row.end(), c);
  if (it != row.end() && *it == c) {
    row.erase(it);
  } else {
    row.insert(it, c);
  }
}

bool SparseMatrix::Get(int r, int c) const {
  return std::binary_search(entries[r].begin(), entries[r].end(), c);
}

SparseMatrix Multiply(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out(a.rows, b.cols);
  for (int r = 0; r < a.rows; ++r) {
    std::vector<int> acc;
    for (int k : a.entries[r]) {
      std::vector<int> next;
      std::set_symmetric_difference(acc.begin(), acc.end(),
                                    b.entries[k].begin(), b.entries[k].end(),
                                    std::back_inserter(next));
      acc = std::move(next);
    }
    out.entries[r] = std::move(acc);
  }
  return out;
}

bool IsZero(const SparseMatrix& a) {
  for (const auto& row : a.entries) {
    if (!row.empty()) return false;
  }
  return true;
}

namespace {

// Bit-packed rows with one extra column for the right-hand side.
struct DenseSystem {
  int rows, cols, words;
  std::vector<std::uint64_t> bits;

  DenseSystem(const SparseMatrix& a, const std::vector<std::uint8_t>* b)
      : rows(a.rows), cols(a.cols), words((a.cols + 1 + 63) / 64),
        bits(static_cast<std::size_t>(a.rows) * words, 0) {
    for (int r = 0; r < rows; ++r) {
      for (int c : a.entries[r]) Set(r, c);
      if (b && (*b)[r]) Set(r, cols);
    }
  }
  std::uint64_t* row(int r) { return bits.data() + static_cast<std::size_t>(r) * words; }
  void Set(int r, int c) { row(r)[c >> 6] |= std::uint64_t{1} << (c & 63); }
  bool Get(int r, int c) { return row(r)[c >> 6] >> (c & 63) & 1; }
  void SwapRows(int a, int b) {
    if (a != b) std::swap_ranges(row(a), row(a) + words, row(b));
  }
  void AddRow(int dst, int src) {
    simd::XorWords(std::span<std::uint64_t>(row(dst), words),
                   std::span<const std::uint64_t>(row(src), words));
  }

  // Gauss-Jordan; returns pivot columns in row order.
  std::vector<int> Reduce() {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
      int p = r;
      while (p < rows && !Get(p, c)) ++p;
      if (p == rows) continue;
      SwapRows(r, p);
      for (int i = 0; i < rows; ++i) {
        if (i != r && Get(i, c)) AddRow(i, r);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }
};

// Echelon rows keyed by their smallest column; row entries beyond the key are
// larger columns.
struct SparseEchelon {
  std::map<int, std::pair<std::vector<int>, bool>> pivots;
  bool consistent = true;

  void Add(std::vector<int> row, bool rhs) {
    while (!row.empty()) {
      auto it = pivots.find(row.front());
      if (it == pivots.end()) {
        int lead = row.front();
        pivots.emplace(lead, std::make_pair(std::move(row), rhs));
        return;
      }
      std::vector<int> next;
      std::set_symmetric_difference(row.begin(), row.end(),
                                    it->second.first.begin(),
                                    it->second.first.end(),
                                    std::back_inserter(next));
      row = std::move(next);
      rhs ^= it->second.second;
    }
    if (rhs) consistent = false;
  }
};

}  // namespace

int Rank(const SparseMatrix& a, Method method) {
  if (method == Method::kAuto) {
    method = a.cols <= kDenseColumnLimit ? Method::kDense : Method::kSparse;
  }
  if (method == Method::kDense) {
    DenseSystem sys(a, nullptr);
    return static_cast<int>(sys.Reduce().size());
  }
  SparseEchelon e;
  for (const auto& row : a.entries) e.Add(row, false);
  return static_cast<int>(e.pivots.size());
}

std::optional<std::vector<std::uint8_t>> Solve(const SparseMatrix& a,
                                               const std::vector<std::uint8_t>& b,
                                               Method method) {
  if (method == Method::kAuto) {
    method = a.cols <= kDenseColumnLimit ? Method::kDense : Method::kSparse;
  }
  std::vector<std::uint8_t> x(a.cols, 0);
  if (method == Method::kDense) {
    DenseSystem sys(a, &b);
    std::vector<int> pivots = sys.Reduce();
    for (int r = static_cast<int>(pivots.size()); r < sys.rows; ++r) {
      if (sys.Get(r, sys.cols)) return std::nullopt;
    }
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      x[pivots[r]] = sys.Get(static_cast<int>(r), sys.cols);
    }
    return x;
  }
  SparseEchelon e;
  for (int r = 0; r < a.rows; ++r) e.Add(a.entries[r], b[r] != 0);
  if (!e.consistent) return std::nullopt;
  for (auto it = e.pivots.rbegin(); it != e.pivots.rend(); ++it) {
    bool value = it->second.second;
    const auto& row = it->second.first;
    for (std::size_t k = 1; k < row.size(); ++k) value ^= x[row[k]] != 0;
    x[it->first] = value;
  }
  return x;
}

}  // namespace gamebush::gf2

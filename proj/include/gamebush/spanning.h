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

#ifndef GAMEBUSH_SPANNING_H_
#define GAMEBUSH_SPANNING_H_

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "gamebush/gf2.h"

namespace gamebush {

using Simplex = std::vector<int>;  // sorted vertex indices

// All faces of a set of simplices, grouped by dimension and sorted.
struct ChainComplex {
  std::vector<std::vector<Simplex>> simplices;  // [k] = k-simplices
  std::vector<std::map<Simplex, int>> index;

  static ChainComplex FromTop(const std::vector<Simplex>& top);
  int top_dimension() const { return static_cast<int>(simplices.size()) - 1; }
  int count(int k) const {
    return k >= 0 && k < static_cast<int>(simplices.size())
               ? static_cast<int>(simplices[k].size())
               : 0;
  }
  int Find(const Simplex& s) const;
};

// Boundary matrices of a complex: boundary[k] maps C_k to C_{k-1}, stored
// with one row per (k-1)-simplex. boundary[0] is empty.
struct Z2ChainSystem {
  std::vector<gf2::SparseMatrix> boundary;

  static Z2ChainSystem Build(const ChainComplex& complex);
  // True if every consecutive composition vanishes.
  bool BoundarySquaresToZero() const;
};

// A triangulated compact W of dimension 1 or 2 together with its boundary.
// Vertex coordinates may include unused points; the complex is given by its
// top simplices.
class TriangulatedPair {
 public:
  static TriangulatedPair Make(int dimension, std::string ambient,
                               std::vector<std::vector<double>> coords,
                               std::vector<Simplex> top);

  int dimension() const { return dimension_; }
  const std::string& ambient() const { return ambient_; }
  const std::vector<std::vector<double>>& coords() const { return coords_; }
  const std::vector<Simplex>& top() const { return complex_.simplices[dimension_]; }
  const ChainComplex& complex() const { return complex_; }
  // (d-1)-simplices with exactly one coface.
  const std::vector<Simplex>& boundary() const { return boundary_; }
  bool InBoundary(const Simplex& s) const;
  bool IsBoundaryVertex(int v) const { return boundary_vertices_.count(v) > 0; }
  bool HasVertex(int v) const { return complex_.index[0].count({v}) > 0; }

  // Subpair spanned by the given simplices of this pair (each a face of W).
  TriangulatedPair Sub(const std::vector<Simplex>& simplices) const;

 private:
  int dimension_ = 1;
  std::string ambient_;
  std::vector<std::vector<double>> coords_;
  ChainComplex complex_;
  std::vector<Simplex> boundary_;
  std::map<Simplex, int> boundary_index_;
  std::map<int, int> boundary_vertices_;
};

struct FundamentalClass {
  std::vector<std::uint8_t> chain;  // over W's d-simplices
  bool relative_cycle = false;
  int homology_rank = 0;  // dimension of H_d(W, dW; Z_2)
};

FundamentalClass ComputeFundamentalClass(const TriangulatedPair& pair);

// Finite complex whose vertices carry (W vertex, point of Y).
struct Correspondence {
  std::vector<int> base;
  std::vector<std::vector<double>> points;
  std::vector<Simplex> top;  // maximal simplices; faces implied

  int AddVertex(int w, std::vector<double> y);
  int value_dimension() const {
    return points.empty() ? 0 : static_cast<int>(points.front().size());
  }
};

// Throws ValidationError if labels are out of range or a simplex does not
// project onto a simplex of W.
void ValidateCorrespondence(const Correspondence& f, const TriangulatedPair& pair);

struct SpanResult {
  bool spanning = false;
  std::vector<Simplex> witness;  // d-simplices of F, as F vertex lists
  int unknowns = 0;
  int equations = 0;
};

SpanResult HasSpanning(const Correspondence& f, const TriangulatedPair& pair,
                       gf2::Method method = gf2::Method::kAuto);

// The preimage of a subpair. The subpair must be at least one-dimensional.
Correspondence RestrictCorrespondence(const Correspondence& f,
                                      const TriangulatedPair& pair,
                                      const TriangulatedPair& sub);

// Diagonal product of d=1 correspondences over the same pair, with values in
// the concatenated space.
Correspondence ProductCorrespondence(const Correspondence& a,
                                     const Correspondence& b,
                                     const TriangulatedPair& pair);
Correspondence SumCorrespondences(const std::vector<Correspondence>& fs,
                                  const TriangulatedPair& pair);
// lambda holds one value per W vertex; it is extended linearly on segments.
Correspondence ScaleCorrespondence(const std::vector<double>& lambda,
                                   const Correspondence& f);
// phi: W -> X with values on X's vertices (one coordinate each); psi: X -> Y.
Correspondence ComposeCorrespondences(const Correspondence& phi,
                                      const TriangulatedPair& x,
                                      const Correspondence& psi);
Correspondence UnionCorrespondences(const Correspondence& a,
                                    const Correspondence& b);

// Merges vertices with the same base and point (within 1e-12) and drops
// duplicate or non-maximal simplices.
Correspondence Canonicalize(const Correspondence& f);

// Points of F over W vertex w.
std::vector<std::vector<double>> Fiber(const Correspondence& f, int w);

struct SpanInput {
  TriangulatedPair pair;
  Correspondence correspondence;
};

SpanInput ParseSpanInput(const nlohmann::json& j);
SpanInput LoadSpanInput(const std::string& path);
nlohmann::json SpanToJson(const SpanInput& input, const SpanResult& result);
nlohmann::json SpanInputToJson(const TriangulatedPair& pair,
                               const Correspondence& f);

}  // namespace gamebush

#endif  // GAMEBUSH_SPANNING_H_

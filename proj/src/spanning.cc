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

#include "gamebush/spanning.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <utility>

#include "gamebush/error.h"

namespace gamebush {
namespace {

constexpr double kMergeTolerance = 1e-12;
constexpr double kVertexMatchTolerance = 1e-9;

std::string SimplexString(const Simplex& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "]";
}

Simplex Sorted(Simplex s) {
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<Simplex> Facets(const Simplex& s) {
  std::vector<Simplex> out;
  if (s.size() < 2) return out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Simplex f;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j != i) f.push_back(s[j]);
    }
    out.push_back(std::move(f));
  }
  return out;
}

// Image of a simplex of F under the first labels, as a sorted vertex set.
Simplex Image(const Correspondence& f, const Simplex& s) {
  Simplex img;
  for (int v : s) img.push_back(f.base[v]);
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  return img;
}

ChainComplex CorrespondenceComplex(const Correspondence& f) {
  std::vector<Simplex> top = f.top;
  for (int v = 0; v < static_cast<int>(f.base.size()); ++v) top.push_back({v});
  return ChainComplex::FromTop(top);
}

// Drops simplices that are faces of other listed simplices.
std::vector<Simplex> Maximal(std::vector<Simplex> simplices) {
  for (auto& s : simplices) s = Sorted(std::move(s));
  std::sort(simplices.begin(), simplices.end());
  simplices.erase(std::unique(simplices.begin(), simplices.end()),
                  simplices.end());
  std::set<Simplex> faces;
  for (const auto& s : simplices) {
    std::vector<Simplex> frontier = Facets(s);
    while (!frontier.empty()) {
      Simplex t = std::move(frontier.back());
      frontier.pop_back();
      if (!faces.insert(t).second) continue;
      for (auto& g : Facets(t)) frontier.push_back(std::move(g));
    }
  }
  std::vector<Simplex> out;
  for (auto& s : simplices) {
    if (!faces.count(s)) out.push_back(std::move(s));
  }
  return out;
}

void RequireLine(const TriangulatedPair& pair, const char* op) {
  if (pair.dimension() != 1) {
    throw DimensionError(std::string(op) + " is implemented for d=1 only");
  }
}

void RequireGeneralPosition(const Correspondence& f, const char* op) {
  ChainComplex c = CorrespondenceComplex(f);
  if (c.top_dimension() > 1) {
    throw PreconditionError(std::string(op) +
                            ": correspondence has simplices above dimension 1");
  }
  for (const auto& s : c.count(1) ? c.simplices[1] : std::vector<Simplex>{}) {
    if (f.base[s[0]] == f.base[s[1]]) {
      throw PreconditionError(std::string(op) + ": segment " +
                              SimplexString(s) +
                              " does not project injectively");
    }
  }
}

std::vector<std::vector<int>> VerticesByBase(const Correspondence& f,
                                             int num_base) {
  std::vector<std::vector<int>> out(num_base);
  for (int v = 0; v < static_cast<int>(f.base.size()); ++v) {
    out[f.base[v]].push_back(v);
  }
  return out;
}

int NumBase(const Correspondence& f) {
  int n = 0;
  for (int b : f.base) n = std::max(n, b + 1);
  return n;
}

std::vector<double> ReadPoint(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_array()) throw ParseError("point must be a number or an array");
  return j.get<std::vector<double>>();
}

std::vector<Simplex> ReadSimplices(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<Simplex> out;
  for (const auto& s : j) {
    if (s.is_number_integer()) {
      out.push_back({s.get<int>()});
    } else {
      out.push_back(s.get<Simplex>());
    }
  }
  return out;
}

}  // namespace

ChainComplex ChainComplex::FromTop(const std::vector<Simplex>& top) {
  std::vector<std::set<Simplex>> sets;
  for (const auto& raw : top) {
    Simplex s = Sorted(raw);
    if (s.empty()) continue;
    int n = static_cast<int>(s.size());
    if (static_cast<int>(sets.size()) < n) sets.resize(n);
    for (int mask = 1; mask < (1 << n); ++mask) {
      Simplex f;
      for (int i = 0; i < n; ++i) {
        if (mask >> i & 1) f.push_back(s[i]);
      }
      sets[f.size() - 1].insert(std::move(f));
    }
  }
  ChainComplex c;
  c.simplices.resize(sets.size());
  c.index.resize(sets.size());
  for (std::size_t k = 0; k < sets.size(); ++k) {
    c.simplices[k].assign(sets[k].begin(), sets[k].end());
    for (std::size_t i = 0; i < c.simplices[k].size(); ++i) {
      c.index[k].emplace(c.simplices[k][i], static_cast<int>(i));
    }
  }
  return c;
}

int ChainComplex::Find(const Simplex& s) const {
  int k = static_cast<int>(s.size()) - 1;
  if (k < 0 || k >= static_cast<int>(index.size())) return -1;
  auto it = index[k].find(s);
  return it == index[k].end() ? -1 : it->second;
}

Z2ChainSystem Z2ChainSystem::Build(const ChainComplex& complex) {
  Z2ChainSystem sys;
  int top = complex.top_dimension();
  sys.boundary.resize(std::max(top + 1, 1));
  for (int k = 1; k <= top; ++k) {
    gf2::SparseMatrix m(complex.count(k - 1), complex.count(k));
    for (int j = 0; j < complex.count(k); ++j) {
      for (const auto& f : Facets(complex.simplices[k][j])) {
        m.entries[complex.index[k - 1].at(f)].push_back(j);
      }
    }
    sys.boundary[k] = std::move(m);
  }
  return sys;
}

bool Z2ChainSystem::BoundarySquaresToZero() const {
  for (std::size_t k = 2; k < boundary.size(); ++k) {
    if (!gf2::IsZero(gf2::Multiply(boundary[k - 1], boundary[k]))) return false;
  }
  return true;
}

TriangulatedPair TriangulatedPair::Make(int dimension, std::string ambient,
                                        std::vector<std::vector<double>> coords,
                                        std::vector<Simplex> top) {
  if (dimension != 1 && dimension != 2) {
    throw DimensionError("pair dimension must be 1 or 2, got " +
                         std::to_string(dimension));
  }
  static const std::set<std::string> kLine = {"interval", "circle"};
  static const std::set<std::string> kPlane = {"square", "torus"};
  if (ambient.empty()) ambient = dimension == 1 ? "interval" : "square";
  if ((dimension == 1 ? kLine : kPlane).count(ambient) == 0) {
    throw ValidationError("ambient '" + ambient + "' does not fit dimension " +
                          std::to_string(dimension));
  }
  if (top.empty()) throw ValidationError("pair has no top simplices");
  const int n = static_cast<int>(coords.size());
  for (auto& s : top) {
    s = Sorted(std::move(s));
    if (static_cast<int>(s.size()) != dimension + 1 ||
        std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw ValidationError("simplex " + SimplexString(s) + " is not a " +
                            std::to_string(dimension) + "-simplex");
    }
    for (int v : s) {
      if (v < 0 || v >= n) {
        throw ValidationError("simplex " + SimplexString(s) +
                              " references a missing vertex");
      }
    }
  }
  TriangulatedPair p;
  p.dimension_ = dimension;
  p.ambient_ = std::move(ambient);
  p.coords_ = std::move(coords);
  p.complex_ = ChainComplex::FromTop(top);
  std::vector<int> cofaces(p.complex_.count(dimension - 1), 0);
  for (const auto& s : p.complex_.simplices[dimension]) {
    for (const auto& f : Facets(s)) ++cofaces[p.complex_.index[dimension - 1].at(f)];
  }
  for (int i = 0; i < static_cast<int>(cofaces.size()); ++i) {
    const Simplex& f = p.complex_.simplices[dimension - 1][i];
    if (cofaces[i] > 2) {
      throw ValidationError("face " + SimplexString(f) + " has " +
                            std::to_string(cofaces[i]) + " cofaces");
    }
    if (cofaces[i] == 1) {
      p.boundary_index_.emplace(f, static_cast<int>(p.boundary_.size()));
      p.boundary_.push_back(f);
      for (int v : f) p.boundary_vertices_.emplace(v, 0);
    }
  }
  return p;
}

bool TriangulatedPair::InBoundary(const Simplex& s) const {
  if (s.size() == 1) return IsBoundaryVertex(s[0]);
  if (static_cast<int>(s.size()) == dimension_) return boundary_index_.count(s) > 0;
  return false;
}

TriangulatedPair TriangulatedPair::Sub(const std::vector<Simplex>& simplices) const {
  int dim = -1;
  for (const auto& raw : simplices) {
    Simplex s = Sorted(raw);
    if (complex_.Find(s) < 0) {
      throw ValidationError("simplex " + SimplexString(s) + " is not in W");
    }
    dim = std::max(dim, static_cast<int>(s.size()) - 1);
  }
  if (dim < 1) {
    throw DimensionError("subpair must be at least one-dimensional");
  }
  std::vector<Simplex> top;
  for (const auto& s : Maximal(simplices)) {
    if (static_cast<int>(s.size()) - 1 != dim) {
      throw ValidationError("subpair is not pure: " + SimplexString(s));
    }
    top.push_back(s);
  }
  return Make(dim, dim == dimension_ ? ambient_ : std::string(), coords_, top);
}

FundamentalClass ComputeFundamentalClass(const TriangulatedPair& pair) {
  const int d = pair.dimension();
  const ChainComplex& c = pair.complex();
  FundamentalClass out;
  out.chain.assign(c.count(d), 1);
  Z2ChainSystem sys = Z2ChainSystem::Build(c);
  gf2::SparseMatrix rel(0, c.count(d));
  out.relative_cycle = true;
  for (int r = 0; r < c.count(d - 1); ++r) {
    if (pair.InBoundary(c.simplices[d - 1][r])) continue;
    const auto& row = sys.boundary[d].entries[r];
    if (row.size() % 2 != 0) out.relative_cycle = false;
    rel.entries.push_back(row);
    ++rel.rows;
  }
  out.homology_rank = c.count(d) - gf2::Rank(rel);
  return out;
}

int Correspondence::AddVertex(int w, std::vector<double> y) {
  base.push_back(w);
  points.push_back(std::move(y));
  return static_cast<int>(base.size()) - 1;
}

void ValidateCorrespondence(const Correspondence& f, const TriangulatedPair& pair) {
  if (f.base.size() != f.points.size()) {
    throw ValidationError("labels and points differ in length");
  }
  const int m = f.value_dimension();
  for (std::size_t v = 0; v < f.base.size(); ++v) {
    if (!pair.HasVertex(f.base[v])) {
      throw ValidationError("vertex " + std::to_string(v) +
                            " is labelled by a point outside W");
    }
    if (static_cast<int>(f.points[v].size()) != m) {
      throw ValidationError("vertex " + std::to_string(v) +
                            " has a point of the wrong dimension");
    }
  }
  const int n = static_cast<int>(f.base.size());
  for (const auto& raw : f.top) {
    Simplex s = Sorted(raw);
    if (s.empty() || std::adjacent_find(s.begin(), s.end()) != s.end() ||
        s.front() < 0 || s.back() >= n) {
      throw ValidationError("bad simplex " + SimplexString(raw));
    }
    if (pair.complex().Find(Image(f, s)) < 0) {
      throw ValidationError("simplex " + SimplexString(s) +
                            " does not project onto a simplex of W");
    }
  }
}

SpanResult HasSpanning(const Correspondence& f, const TriangulatedPair& pair,
                       gf2::Method method) {
  ValidateCorrespondence(f, pair);
  const int d = pair.dimension();
  ChainComplex c = CorrespondenceComplex(f);
  SpanResult out;
  out.unknowns = c.count(d);
  const ChainComplex& w = pair.complex();
  gf2::SparseMatrix a(0, out.unknowns);
  std::vector<std::uint8_t> rhs;

  // Relative cycle: the boundary vanishes off F|dW.
  std::vector<std::vector<int>> cofaces(c.count(d - 1));
  for (int j = 0; j < out.unknowns; ++j) {
    for (const auto& t : Facets(c.simplices[d][j])) {
      cofaces[c.index[d - 1].at(t)].push_back(j);
    }
  }
  for (int r = 0; r < c.count(d - 1); ++r) {
    if (pair.InBoundary(Image(f, c.simplices[d - 1][r]))) continue;
    if (cofaces[r].empty()) continue;
    a.entries.push_back(cofaces[r]);
    rhs.push_back(0);
  }
  // Projection hits every d-simplex of W once.
  std::vector<std::vector<int>> over(w.count(d));
  for (int j = 0; j < out.unknowns; ++j) {
    Simplex img = Image(f, c.simplices[d][j]);
    if (static_cast<int>(img.size()) == d + 1) over[w.index[d].at(img)].push_back(j);
  }
  for (auto& row : over) {
    a.entries.push_back(std::move(row));
    rhs.push_back(1);
  }
  a.rows = static_cast<int>(a.entries.size());
  out.equations = a.rows;
  auto x = gf2::Solve(a, rhs, method);
  if (!x) return out;
  out.spanning = true;
  for (int j = 0; j < out.unknowns; ++j) {
    if ((*x)[j]) out.witness.push_back(c.simplices[d][j]);
  }
  return out;
}

Correspondence Canonicalize(const Correspondence& f) {
  const int nb = NumBase(f);
  auto groups = VerticesByBase(f, nb);
  std::vector<int> rep(f.base.size(), -1);
  Correspondence out;
  for (int w = 0; w < nb; ++w) {
    std::vector<int> reps;
    for (int v : groups[w]) {
      for (int r : reps) {
        bool same = true;
        for (std::size_t k = 0; k < f.points[v].size(); ++k) {
          if (std::abs(f.points[v][k] - out.points[r][k]) > kMergeTolerance) {
            same = false;
            break;
          }
        }
        if (same) {
          rep[v] = r;
          break;
        }
      }
      if (rep[v] < 0) {
        rep[v] = out.AddVertex(w, f.points[v]);
        reps.push_back(rep[v]);
      }
    }
  }
  std::vector<Simplex> top;
  for (const auto& s : f.top) {
    Simplex t;
    for (int v : s) t.push_back(rep[v]);
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    top.push_back(std::move(t));
  }
  for (int v = 0; v < static_cast<int>(out.base.size()); ++v) top.push_back({v});
  out.top = Maximal(std::move(top));
  return out;
}

Correspondence RestrictCorrespondence(const Correspondence& f,
                                      const TriangulatedPair& pair,
                                      const TriangulatedPair& sub) {
  if (sub.dimension() < 1) {
    throw DimensionError("subpair must be at least one-dimensional");
  }
  ValidateCorrespondence(f, pair);
  ChainComplex c = CorrespondenceComplex(f);
  std::vector<int> remap(f.base.size(), -1);
  Correspondence out;
  for (int v = 0; v < static_cast<int>(f.base.size()); ++v) {
    if (sub.HasVertex(f.base[v])) remap[v] = out.AddVertex(f.base[v], f.points[v]);
  }
  std::vector<Simplex> kept;
  for (const auto& level : c.simplices) {
    for (const auto& s : level) {
      if (sub.complex().Find(Image(f, s)) < 0) continue;
      Simplex t;
      for (int v : s) t.push_back(remap[v]);
      kept.push_back(std::move(t));
    }
  }
  out.top = Maximal(std::move(kept));
  return out;
}

Correspondence ProductCorrespondence(const Correspondence& a,
                                     const Correspondence& b,
                                     const TriangulatedPair& pair) {
  RequireLine(pair, "product");
  ValidateCorrespondence(a, pair);
  ValidateCorrespondence(b, pair);
  RequireGeneralPosition(a, "product");
  RequireGeneralPosition(b, "product");
  const int nb = static_cast<int>(pair.coords().size());
  auto ga = VerticesByBase(a, nb);
  auto gb = VerticesByBase(b, nb);
  Correspondence out;
  std::map<std::pair<int, int>, int> id;
  for (int w = 0; w < nb; ++w) {
    for (int i : ga[w]) {
      for (int j : gb[w]) {
        std::vector<double> y = a.points[i];
        y.insert(y.end(), b.points[j].begin(), b.points[j].end());
        int v = out.AddVertex(w, std::move(y));
        id[{i, j}] = v;
        out.top.push_back({v});
      }
    }
  }
  ChainComplex ca = CorrespondenceComplex(a);
  ChainComplex cb = CorrespondenceComplex(b);
  if (ca.count(1) && cb.count(1)) {
    for (const auto& sa : ca.simplices[1]) {
      for (const auto& sb : cb.simplices[1]) {
        if (Image(a, sa) != Image(b, sb)) continue;
        int j0 = sb[0], j1 = sb[1];
        if (b.base[j0] != a.base[sa[0]]) std::swap(j0, j1);
        out.top.push_back({id.at({sa[0], j0}), id.at({sa[1], j1})});
      }
    }
  }
  out.top = Maximal(std::move(out.top));
  return out;
}

Correspondence SumCorrespondences(const std::vector<Correspondence>& fs,
                                  const TriangulatedPair& pair) {
  if (fs.empty()) throw PreconditionError("sum of no correspondences");
  Correspondence acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) {
    const int m = acc.value_dimension();
    if (fs[i].value_dimension() != m) {
      throw DimensionError("summands take values in different spaces");
    }
    Correspondence prod = ProductCorrespondence(acc, fs[i], pair);
    for (auto& y : prod.points) {
      for (int k = 0; k < m; ++k) y[k] += y[m + k];
      y.resize(m);
    }
    acc = Canonicalize(prod);
  }
  return acc;
}

Correspondence ScaleCorrespondence(const std::vector<double>& lambda,
                                   const Correspondence& f) {
  Correspondence out = f;
  for (std::size_t v = 0; v < out.base.size(); ++v) {
    if (out.base[v] >= static_cast<int>(lambda.size())) {
      throw ValidationError("scaling function misses W vertex " +
                            std::to_string(out.base[v]));
    }
    for (double& y : out.points[v]) y *= lambda[out.base[v]];
  }
  return Canonicalize(out);
}

Correspondence ComposeCorrespondences(const Correspondence& phi,
                                      const TriangulatedPair& x,
                                      const Correspondence& psi) {
  RequireLine(x, "compose");
  ValidateCorrespondence(psi, x);
  ChainComplex cphi = CorrespondenceComplex(phi);
  ChainComplex cpsi = CorrespondenceComplex(psi);
  if (cphi.top_dimension() > 1 || cpsi.top_dimension() > 1) {
    throw PreconditionError("compose: inputs must be at most one-dimensional");
  }
  // Locate each phi value among X's vertices.
  std::vector<int> at(phi.base.size(), -1);
  for (std::size_t a = 0; a < phi.base.size(); ++a) {
    for (int v = 0; v < static_cast<int>(x.coords().size()); ++v) {
      if (!x.HasVertex(v) || x.coords()[v].size() != phi.points[a].size()) continue;
      bool same = true;
      for (std::size_t k = 0; k < phi.points[a].size(); ++k) {
        if (std::abs(x.coords()[v][k] - phi.points[a][k]) > kVertexMatchTolerance) {
          same = false;
        }
      }
      if (same) {
        at[a] = v;
        break;
      }
    }
    if (at[a] < 0) {
      throw PreconditionError("compose: value of vertex " + std::to_string(a) +
                              " is not a vertex of X");
    }
  }
  const int nx = static_cast<int>(x.coords().size());
  auto over = VerticesByBase(psi, std::max(nx, NumBase(psi)));
  Correspondence out;
  std::map<std::pair<int, int>, int> id;
  for (std::size_t a = 0; a < phi.base.size(); ++a) {
    for (int b : over[at[a]]) {
      int v = out.AddVertex(phi.base[a], psi.points[b]);
      id[{static_cast<int>(a), b}] = v;
      out.top.push_back({v});
    }
  }
  const std::vector<Simplex> none;
  const auto& psi_segments = cpsi.count(1) ? cpsi.simplices[1] : none;
  for (const auto& s : cphi.count(1) ? cphi.simplices[1] : none) {
    int a0 = s[0], a1 = s[1];
    int x0 = at[a0], x1 = at[a1];
    if (x0 == x1) {
      for (int b : over[x0]) out.top.push_back({id.at({a0, b}), id.at({a1, b})});
      for (const auto& t : psi_segments) {
        if (psi.base[t[0]] != x0 || psi.base[t[1]] != x0) continue;
        int p00 = id.at({a0, t[0]}), p01 = id.at({a0, t[1]});
        int p10 = id.at({a1, t[0]}), p11 = id.at({a1, t[1]});
        out.top.push_back({p00, p10, p11});
        out.top.push_back({p00, p01, p11});
      }
      continue;
    }
    for (const auto& t : psi_segments) {
      int b0 = t[0], b1 = t[1];
      if (psi.base[b0] == x1 && psi.base[b1] == x0) std::swap(b0, b1);
      if (psi.base[b0] != x0 || psi.base[b1] != x1) continue;
      out.top.push_back({id.at({a0, b0}), id.at({a1, b1})});
    }
  }
  return Canonicalize(out);
}

Correspondence UnionCorrespondences(const Correspondence& a,
                                    const Correspondence& b) {
  Correspondence out = a;
  const int offset = static_cast<int>(a.base.size());
  for (std::size_t v = 0; v < b.base.size(); ++v) out.AddVertex(b.base[v], b.points[v]);
  for (const auto& s : b.top) {
    Simplex t;
    for (int v : s) t.push_back(v + offset);
    out.top.push_back(std::move(t));
  }
  return Canonicalize(out);
}

std::vector<std::vector<double>> Fiber(const Correspondence& f, int w) {
  std::vector<std::vector<double>> out;
  for (std::size_t v = 0; v < f.base.size(); ++v) {
    if (f.base[v] == w) out.push_back(f.points[v]);
  }
  return out;
}

SpanInput ParseSpanInput(const nlohmann::json& j) {
  try {
    int d = j.at("dimension").get<int>();
    std::vector<std::vector<double>> coords;
    for (const auto& p : j.at("vertices")) coords.push_back(ReadPoint(p));
    TriangulatedPair pair = TriangulatedPair::Make(
        d, j.value("ambient", std::string()), std::move(coords),
        ReadSimplices(j.at("simplices"), "simplices"));
    if (j.contains("boundary")) {
      std::set<Simplex> given;
      for (const auto& s : ReadSimplices(j.at("boundary"), "boundary")) {
        given.insert(Sorted(s));
      }
      std::set<Simplex> actual(pair.boundary().begin(), pair.boundary().end());
      if (given != actual) {
        throw ValidationError("listed boundary differs from the boundary of W");
      }
    }
    Correspondence f;
    const auto& cj = j.at("correspondence");
    auto labels = cj.at("labels").get<std::vector<int>>();
    const auto& pts = cj.at("vertices");
    if (labels.size() != pts.size()) {
      throw ValidationError("correspondence labels and vertices differ in length");
    }
    for (std::size_t v = 0; v < labels.size(); ++v) {
      f.AddVertex(labels[v], ReadPoint(pts[v]));
    }
    f.top = ReadSimplices(cj.value("simplices", nlohmann::json::array()),
                          "correspondence simplices");
    ValidateCorrespondence(f, pair);
    return SpanInput{std::move(pair), std::move(f)};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("span input: ") + e.what());
  }
}

SpanInput LoadSpanInput(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return ParseSpanInput(j);
}

nlohmann::json SpanInputToJson(const TriangulatedPair& pair,
                               const Correspondence& f) {
  nlohmann::json j;
  j["dimension"] = pair.dimension();
  j["ambient"] = pair.ambient();
  j["vertices"] = pair.coords();
  j["simplices"] = pair.top();
  j["boundary"] = pair.boundary();
  j["correspondence"] = {{"vertices", f.points},
                         {"labels", f.base},
                         {"simplices", f.top}};
  return j;
}

nlohmann::json SpanToJson(const SpanInput& input, const SpanResult& result) {
  FundamentalClass fc = ComputeFundamentalClass(input.pair);
  nlohmann::json j;
  j["spanning"] = result.spanning;
  j["dimension"] = input.pair.dimension();
  j["ambient"] = input.pair.ambient();
  j["unknowns"] = result.unknowns;
  j["equations"] = result.equations;
  j["witness"] = result.witness;
  j["fundamental_class"] = {{"simplices", input.pair.top()},
                            {"relative_cycle", fc.relative_cycle},
                            {"homology_rank", fc.homology_rank}};
  return j;
}

}  // namespace gamebush

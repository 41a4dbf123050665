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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <utility>

#include "gamebush/error.h"

namespace gamebush::testing {
namespace {

// Solves m x = rhs by Gaussian elimination with partial pivoting; false when
// the matrix is singular.
bool SolveDense(Matrix m, std::vector<double> rhs, std::vector<double>& x) {
  const int n = static_cast<int>(rhs.size());
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    }
    if (std::abs(m[p][c]) < 1e-12) return false;
    std::swap(m[p], m[c]);
    std::swap(rhs[p], rhs[c]);
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      double f = m[r][c] / m[c][c];
      for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  x.resize(n);
  for (int i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return true;
}

// Mixed strategy on `cols` making every row in `rows` earn the same against
// payoff(r, c); returns false if none exists.
bool Equalizer(const std::function<double(int, int)>& payoff,
               const std::vector<int>& rows, const std::vector<int>& cols,
               std::vector<double>& mix, double& value) {
  const int k = static_cast<int>(cols.size());
  Matrix m(k + 1, std::vector<double>(k + 1, 0.0));
  std::vector<double> rhs(k + 1, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) m[i][j] = payoff(rows[i], cols[j]);
    m[i][k] = -1.0;
  }
  for (int j = 0; j < k; ++j) m[k][j] = 1.0;
  rhs[k] = 1.0;
  std::vector<double> sol;
  if (!SolveDense(m, rhs, sol)) return false;
  mix.assign(sol.begin(), sol.begin() + k);
  value = sol[k];
  for (double w : mix) {
    if (w < -1e-12) return false;
  }
  return true;
}

std::vector<std::vector<int>> Subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) s.push_back(i);
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace

GameBundle RandomBundle(std::mt19937_64& rng, const RandomBushOptions& opt) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto chance = [&](double p) { return unit(rng) < p; };
  auto pick = [&](int n) {
    return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng));
  };

  struct Node {
    std::string id;
    int parent = -1;
    int action = -1;  // index among the parent's children
    int depth = 0;
    int owner = -2;   // -2 terminal, -1 nature, else player
    std::vector<int> kids;
  };
  std::vector<Node> nodes;
  const int num_roots = 1 + pick(opt.max_roots);
  for (int r = 0; r < num_roots; ++r) nodes.push_back({"r" + std::to_string(r)});
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const int budget = opt.max_vertices - static_cast<int>(nodes.size());
    const bool root = nodes[i].parent < 0;
    int arity = chance(0.25) ? 3 : 2;
    if (arity > budget) arity = 2;
    if (arity > budget || nodes[i].depth >= opt.max_depth ||
        (!root && chance(0.3))) {
      continue;
    }
    nodes[i].owner = chance(opt.nature_prob) ? -1 : pick(opt.players);
    for (int a = 0; a < arity; ++a) {
      Node kid;
      kid.id = nodes[i].id + "_" + std::to_string(a);
      kid.parent = static_cast<int>(i);
      kid.action = a;
      kid.depth = nodes[i].depth + 1;
      nodes[i].kids.push_back(static_cast<int>(nodes.size()));
      nodes.push_back(kid);
    }
  }

  GameBush bush;
  for (int n = 0; n < opt.players; ++n) bush.AddPlayer("P" + std::to_string(n));
  for (const Node& v : nodes) bush.AddVertex(v.id);
  for (const Node& v : nodes) {
    for (int k : v.kids) bush.AddArrow(v.id, nodes[k].id);
  }

  // Root partitions: discrete or a single block per player.
  std::vector<std::string> root_ids;
  for (int r = 0; r < num_roots; ++r) root_ids.push_back(nodes[r].id);
  std::vector<bool> single(opt.players);
  for (int n = 0; n < opt.players; ++n) {
    single[n] = chance(0.5);
    std::vector<std::vector<std::string>> blocks;
    if (single[n]) {
      blocks.push_back(root_ids);
    } else {
      for (const auto& id : root_ids) blocks.push_back({id});
    }
    bush.SetRootPartition(n, blocks);
  }

  // Information sets: a node may join an earlier set of the same player with
  // the same arity and the same own experience, which keeps perfect recall.
  struct Set {
    int player;
    std::vector<int> experience;
    int arity;
    std::vector<int> members;
  };
  std::vector<Set> sets;
  std::vector<int> set_of(nodes.size(), -1);
  auto experience = [&](int v, int n) {
    std::vector<int> e;
    int root = v;
    std::vector<std::pair<int, int>> moves;
    for (int u = v; nodes[u].parent >= 0; u = nodes[u].parent) {
      int p = nodes[u].parent;
      if (nodes[p].owner == n) moves.emplace_back(set_of[p], nodes[u].action);
      root = p;
    }
    e.push_back(single[n] ? 0 : root + 1);
    for (auto it = moves.rbegin(); it != moves.rend(); ++it) {
      e.push_back(it->first);
      e.push_back(it->second);
    }
    return e;
  };
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    const Node& node = nodes[v];
    if (node.owner == -1) {
      std::vector<std::string> kids;
      std::vector<Probability> probs;
      double total = 0.0;
      std::vector<double> w;
      for (std::size_t k = 0; k < node.kids.size(); ++k) {
        w.push_back(0.2 + unit(rng));
        total += w.back();
      }
      for (std::size_t k = 0; k < node.kids.size(); ++k) {
        kids.push_back(nodes[node.kids[k]].id);
        probs.push_back({w[k] / total, std::nullopt});
      }
      bush.SetNature(node.id, kids, probs);
    }
    if (node.owner < 0) continue;
    auto e = experience(static_cast<int>(v), node.owner);
    const int arity = static_cast<int>(node.kids.size());
    int chosen = -1;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      if (sets[s].player == node.owner && sets[s].arity == arity &&
          sets[s].experience == e && chance(opt.merge_prob)) {
        chosen = static_cast<int>(s);
        break;
      }
    }
    if (chosen < 0) {
      chosen = static_cast<int>(sets.size());
      sets.push_back({node.owner, e, arity, {}});
    }
    sets[chosen].members.push_back(static_cast<int>(v));
    set_of[v] = chosen;
  }
  for (std::size_t s = 0; s < sets.size(); ++s) {
    std::vector<std::string> actions;
    for (int a = 0; a < sets[s].arity; ++a) {
      actions.push_back("s" + std::to_string(s) + "a" + std::to_string(a));
    }
    std::vector<std::pair<std::string, std::vector<std::string>>> moves;
    for (int v : sets[s].members) {
      std::vector<std::string> kids;
      for (int k : nodes[v].kids) kids.push_back(nodes[k].id);
      moves.emplace_back(nodes[v].id, kids);
    }
    bush.AddInfoSet(sets[s].player, "set" + std::to_string(s), actions, moves);
  }

  // Terminal partitions: discrete, sometimes merging terminal siblings.
  for (int n = 0; n < opt.players; ++n) {
    std::vector<std::vector<std::string>> blocks;
    for (const Node& v : nodes) {
      if (v.kids.empty()) continue;
      bool all_terminal = true;
      for (int k : v.kids) all_terminal = all_terminal && nodes[k].kids.empty();
      if (all_terminal && chance(opt.coarse_terminals)) {
        std::vector<std::string> b;
        for (int k : v.kids) b.push_back(nodes[k].id);
        blocks.push_back(b);
      } else {
        for (int k : v.kids) {
          if (nodes[k].kids.empty()) blocks.push_back({nodes[k].id});
        }
      }
    }
    for (int r = 0; r < num_roots; ++r) {
      if (nodes[r].kids.empty()) blocks.push_back({nodes[r].id});
    }
    bush.SetTerminalPartition(n, blocks);
  }
  bush.Finalize();

  MeetPartition meet = ComputeMeetPartition(bush);
  std::vector<std::pair<Block, PayoffModel>> models;
  std::uniform_int_distribution<int> payoff(-40, 40);
  for (const Block& b : meet.blocks) {
    std::vector<double> y;
    for (std::size_t i = 0; i < b.size() * opt.players; ++i) {
      y.push_back(payoff(rng) / 10.0);
    }
    models.emplace_back(b, PayoffModel::Constant(static_cast<int>(b.size()),
                                                 opt.players, y));
  }
  return MakeBundle(std::move(bush), std::move(models));
}

std::vector<std::vector<int>> BruteForceSubgameSets(const GameBush& bush) {
  const int nv = bush.num_vertices();
  if (nv > 20) throw PreconditionError("brute force limited to 20 vertices");
  std::vector<std::uint32_t> groups;
  for (const InfoSet& s : bush.info_sets()) {
    std::uint32_t m = 0;
    for (int v : s.vertices) m |= 1u << v;
    groups.push_back(m);
  }
  for (int n = 0; n < bush.num_players(); ++n) {
    for (const Block& b : bush.terminal_partition(n)) {
      std::uint32_t m = 0;
      for (int v : b) m |= 1u << v;
      groups.push_back(m);
    }
  }
  std::vector<std::vector<int>> out;
  for (std::uint32_t s = 0; s < (1u << nv); ++s) {
    bool ok = true;
    for (const auto& [from, to] : bush.arrows()) {
      if ((s >> from & 1) && !(s >> to & 1)) {
        ok = false;
        break;
      }
    }
    for (std::size_t g = 0; ok && g < groups.size(); ++g) {
      std::uint32_t meet = s & groups[g];
      ok = meet == 0 || meet == groups[g];
    }
    if (!ok) continue;
    std::vector<int> set;
    for (int v = 0; v < nv; ++v) {
      if (s >> v & 1) set.push_back(v);
    }
    out.push_back(set);
  }
  return out;
}

std::vector<std::vector<int>> BruteForceMeet(const GameBush& bush) {
  const std::vector<int>& t = bush.terminals();
  const int k = static_cast<int>(t.size());
  if (k > 10) throw PreconditionError("brute force limited to 10 terminals");
  std::map<int, int> pos;
  for (int i = 0; i < k; ++i) pos[t[i]] = i;
  std::vector<int> label(k, 0), best;
  int best_blocks = 0;
  // Restricted growth strings enumerate every set partition once.
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == k) {
      for (int n = 0; n < bush.num_players(); ++n) {
        for (const Block& b : bush.terminal_partition(n)) {
          for (int v : b) {
            if (label[pos[v]] != label[pos[b[0]]]) return;
          }
        }
      }
      if (used > best_blocks) {
        best_blocks = used;
        best = label;
      }
      return;
    }
    for (int c = 0; c <= used && c < k; ++c) {
      label[i] = c;
      rec(i + 1, std::max(used, c + 1));
    }
  };
  rec(0, 0);
  std::vector<std::vector<int>> blocks(best_blocks);
  for (int i = 0; i < k; ++i) blocks[best[i]].push_back(t[i]);
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

std::vector<BimatrixEquilibrium> SupportEnumerationNash(const Matrix& a,
                                                        const Matrix& b) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(a[0].size());
  std::vector<BimatrixEquilibrium> out;
  for (int k = 1; k <= std::min(m, n); ++k) {
    for (const auto& rows : Subsets(m, k)) {
      for (const auto& cols : Subsets(n, k)) {
        std::vector<double> y, x;
        double u, v;
        if (!Equalizer([&](int r, int c) { return a[r][c]; }, rows, cols, y, u)) {
          continue;
        }
        if (!Equalizer([&](int c, int r) { return b[r][c]; }, cols, rows, x, v)) {
          continue;
        }
        BimatrixEquilibrium eq;
        eq.x.assign(m, 0.0);
        eq.y.assign(n, 0.0);
        for (int i = 0; i < k; ++i) {
          eq.x[rows[i]] = std::max(0.0, x[i]);
          eq.y[cols[i]] = std::max(0.0, y[i]);
        }
        bool best = true;
        for (int r = 0; r < m && best; ++r) {
          double val = 0.0;
          for (int c = 0; c < n; ++c) val += a[r][c] * eq.y[c];
          best = val <= u + 1e-9;
        }
        for (int c = 0; c < n && best; ++c) {
          double val = 0.0;
          for (int r = 0; r < m; ++r) val += b[r][c] * eq.x[r];
          best = val <= v + 1e-9;
        }
        if (best) out.push_back(eq);
      }
    }
  }
  return out;
}

GameBundle BimatrixBundle(const Matrix& a, const Matrix& b) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(a[0].size());
  GameBush bush;
  bush.AddPlayer("One");
  bush.AddPlayer("Two");
  bush.AddVertex("o");
  std::vector<std::string> rows, row_actions, col_actions;
  for (int r = 0; r < m; ++r) {
    rows.push_back("r" + std::to_string(r));
    row_actions.push_back("R" + std::to_string(r));
    bush.AddVertex(rows.back());
    bush.AddArrow("o", rows.back());
  }
  for (int c = 0; c < n; ++c) col_actions.push_back("C" + std::to_string(c));
  std::vector<std::pair<std::string, std::vector<std::string>>> two_moves;
  std::vector<std::vector<std::string>> terminal_blocks;
  for (int r = 0; r < m; ++r) {
    std::vector<std::string> kids;
    for (int c = 0; c < n; ++c) {
      kids.push_back(rows[r] + "c" + std::to_string(c));
      bush.AddVertex(kids.back());
      bush.AddArrow(rows[r], kids.back());
      terminal_blocks.push_back({kids.back()});
    }
    two_moves.emplace_back(rows[r], kids);
  }
  bush.AddInfoSet(0, "row", row_actions, {{"o", rows}});
  bush.AddInfoSet(1, "col", col_actions, two_moves);
  for (int p = 0; p < 2; ++p) {
    bush.SetRootPartition(p, {{"o"}});
    bush.SetTerminalPartition(p, terminal_blocks);
  }
  bush.Finalize();
  std::vector<std::pair<Block, PayoffModel>> models;
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) {
      int t = bush.RequireIndex(rows[r] + "c" + std::to_string(c));
      models.emplace_back(Block{t}, PayoffModel::Constant(1, 2, {a[r][c], b[r][c]}));
    }
  }
  return MakeBundle(std::move(bush), std::move(models));
}

Matrix RandomMatrix(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  Matrix m(rows, std::vector<double>(cols));
  for (auto& r : m) {
    for (double& x : r) x = d(rng);
  }
  return m;
}

TriangulatedPair RandomInterval(std::mt19937_64& rng, int segments) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> cuts = {0.0, 1.0};
  for (int i = 1; i < segments; ++i) cuts.push_back(unit(rng));
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::vector<double>> coords;
  std::vector<Simplex> top;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    coords.push_back({cuts[i]});
    if (i > 0) top.push_back({static_cast<int>(i) - 1, static_cast<int>(i)});
  }
  return TriangulatedPair::Make(1, "interval", coords, top);
}

Correspondence Graph(const TriangulatedPair& pair,
                     const std::vector<std::vector<double>>& values,
                     std::vector<int> over) {
  if (over.empty()) {
    for (int v = 0; v < static_cast<int>(pair.coords().size()); ++v) {
      if (pair.HasVertex(v)) over.push_back(v);
    }
  }
  Correspondence f;
  for (std::size_t i = 0; i < over.size(); ++i) {
    int id = f.AddVertex(over[i], values[over[i]]);
    f.top.push_back({id});
    if (i > 0) f.top.push_back({id - 1, id});
  }
  return f;
}

Correspondence RandomSpanning(std::mt19937_64& rng, const TriangulatedPair& pair,
                              int value_dim) {
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<int> verts;
  for (int v = 0; v < static_cast<int>(pair.coords().size()); ++v) {
    if (pair.HasVertex(v)) verts.push_back(v);
  }
  const int nw = static_cast<int>(pair.coords().size());
  auto random_values = [&] {
    std::vector<std::vector<double>> vals(nw, std::vector<double>(value_dim));
    for (auto& y : vals) {
      for (double& c : y) c = val(rng);
    }
    return vals;
  };
  auto main_vals = random_values();
  Correspondence f = Graph(pair, main_vals, verts);
  std::vector<int> main_id(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) main_id[i] = static_cast<int>(i);
  const int k = static_cast<int>(verts.size());
  auto range = [&](int& a, int& b) {
    a = static_cast<int>(unit(rng) * (k - 1));
    b = a + 1 + static_cast<int>(unit(rng) * (k - 1 - a));
    b = std::min(b, k - 1);
  };
  // A loop: a second graph that leaves and rejoins the main one.
  if (k >= 3 && unit(rng) < 0.7) {
    int a, b;
    range(a, b);
    if (b - a >= 2) {
      auto other = random_values();
      int prev = main_id[a];
      for (int i = a + 1; i < b; ++i) {
        int id = f.AddVertex(verts[i], other[verts[i]]);
        f.top.push_back({prev, id});
        prev = id;
      }
      f.top.push_back({prev, main_id[b]});
    }
  }
  // A dangling piece over a sub-range.
  if (unit(rng) < 0.7) {
    int a, b;
    range(a, b);
    auto other = random_values();
    int prev = -1;
    for (int i = a; i <= b; ++i) {
      int id = f.AddVertex(verts[i], other[verts[i]]);
      f.top.push_back({id});
      if (prev >= 0) f.top.push_back({prev, id});
      prev = id;
    }
  }
  // An isolated value.
  if (unit(rng) < 0.5) {
    int i = static_cast<int>(unit(rng) * k);
    std::vector<double> y(value_dim);
    for (double& c : y) c = val(rng);
    f.top.push_back({f.AddVertex(verts[std::min(i, k - 1)], y)});
  }
  return f;
}

Correspondence RandomSimplicialMap(std::mt19937_64& rng,
                                   const TriangulatedPair& w,
                                   const TriangulatedPair& x) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<int> xs;
  for (int v = 0; v < static_cast<int>(x.coords().size()); ++v) {
    if (x.HasVertex(v)) xs.push_back(v);
  }
  const int nx = static_cast<int>(xs.size());
  int at = static_cast<int>(unit(rng) * nx);
  at = std::min(at, nx - 1);
  Correspondence f;
  int prev = -1;
  for (int v = 0; v < static_cast<int>(w.coords().size()); ++v) {
    if (!w.HasVertex(v)) continue;
    if (prev >= 0) {
      double r = unit(rng);
      if (r < 0.35 && at + 1 < nx) ++at;
      else if (r < 0.7 && at > 0) --at;
    }
    int id = f.AddVertex(v, x.coords()[xs[at]]);
    f.top.push_back({id});
    if (prev >= 0) f.top.push_back({prev, id});
    // Occasionally a vertical step to a neighbouring value.
    if (unit(rng) < 0.2 && at + 1 < nx) {
      int up = f.AddVertex(v, x.coords()[xs[at + 1]]);
      f.top.push_back({id, up});
    }
    prev = id;
  }
  return f;
}

}  // namespace gamebush::testing

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

#include "gamebush/subgames.h"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>

#include "gamebush/error.h"

namespace gamebush {

using nlohmann::json;

namespace {

using Bits = std::vector<std::uint64_t>;

Bits ToBits(const VertexSet& s, int nv) {
  Bits b((nv + 63) / 64, 0);
  for (int v : s) b[v >> 6] |= std::uint64_t{1} << (v & 63);
  return b;
}

VertexSet FromBits(const Bits& b, int nv) {
  VertexSet out;
  for (int v = 0; v < nv; ++v) {
    if (b[v >> 6] >> (v & 63) & 1) out.push_back(v);
  }
  return out;
}

bool Subset(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] & ~b[i]) return false;
  }
  return true;
}

std::vector<char> Membership(const GameBush& bush, const VertexSet& s) {
  std::vector<char> in(bush.num_vertices(), 0);
  for (int v : s) in[v] = 1;
  return in;
}

// Every block a subgame set must keep whole: information sets and Q_n blocks.
std::vector<const std::vector<int>*> SaturationBlocks(const GameBush& bush) {
  std::vector<const std::vector<int>*> out;
  for (const InfoSet& set : bush.info_sets()) out.push_back(&set.vertices);
  for (int n = 0; n < bush.num_players(); ++n) {
    for (const Block& b : bush.terminal_partition(n)) out.push_back(&b);
  }
  return out;
}

int RootBlock(const GameBush& bush, int n, int root) {
  const Partition& p = bush.root_partition(n);
  for (std::size_t b = 0; b < p.size(); ++b) {
    if (std::find(p[b].begin(), p[b].end(), root) != p[b].end()) return b;
  }
  return -1;
}

}  // namespace

SubgameCheck IsSubgameSet(const GameBush& bush, const VertexSet& s) {
  SubgameCheck check;
  std::vector<char> in = Membership(bush, s);
  for (int v : s) {
    for (int c : bush.children(v)) {
      if (!in[c]) {
        check.violations.push_back(
            {"closure", {bush.id(v), bush.id(c)}, "arrow leaves the set"});
      }
    }
  }
  for (const InfoSet& set : bush.info_sets()) {
    int count = 0;
    for (int v : set.vertices) count += in[v];
    if (count != 0 && count != static_cast<int>(set.vertices.size())) {
      check.violations.push_back({"saturation", bush.Ids(set.vertices),
                                  "information set " + set.name + " is split"});
    }
  }
  for (int n = 0; n < bush.num_players(); ++n) {
    for (const Block& b : bush.terminal_partition(n)) {
      int count = 0;
      for (int v : b) count += in[v];
      if (count != 0 && count != static_cast<int>(b.size())) {
        check.violations.push_back(
            {"saturation", bush.Ids(b),
             "terminal block of " + bush.player_name(n) + " is split"});
      }
    }
  }
  check.ok = check.violations.empty();
  return check;
}

VertexSet Closure(const GameBush& bush, const VertexSet& seed) {
  std::vector<char> in = Membership(bush, seed);
  auto blocks = SaturationBlocks(bush);
  std::vector<int> stack(seed.begin(), seed.end());
  bool changed = true;
  while (changed) {
    changed = false;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int c : bush.children(v)) {
        if (!in[c]) {
          in[c] = 1;
          stack.push_back(c);
        }
      }
    }
    for (const std::vector<int>* b : blocks) {
      bool any = false;
      for (int v : *b) any = any || in[v];
      if (!any) continue;
      for (int v : *b) {
        if (!in[v]) {
          in[v] = 1;
          stack.push_back(v);
          changed = true;
        }
      }
    }
  }
  VertexSet out;
  for (int v = 0; v < bush.num_vertices(); ++v) {
    if (in[v]) out.push_back(v);
  }
  return out;
}

SubgameSet DescribeSubgame(const GameBush& bush, const VertexSet& s) {
  SubgameSet out;
  out.vertices = s;
  std::vector<char> in = Membership(bush, s);
  out.degenerate = true;
  for (int v : s) {
    if (bush.is_root(v) || !in[bush.parent(v)]) out.roots.push_back(v);
    if (bush.is_terminal(v)) {
      out.terminals.push_back(v);
    } else {
      out.degenerate = false;
    }
  }
  // Roots of S share a block of R'_n when the last information set of player
  // n strictly above them coincides; when neither path meets player n they
  // fall back to the block of R_n of their roots. Leaving the root's own set
  // out keeps the classes stable when an inner subgame is factored first.
  for (int n = 0; n < bush.num_players(); ++n) {
    std::map<int, int> block_of_key;
    Partition part;
    for (int u : out.roots) {
      int key = 0;
      bool found = false;
      std::vector<int> path = bush.PathTo(u);
      for (auto it = path.rbegin() + 1; it != path.rend() && !found; ++it) {
        int w = bush.info_set_of(*it);
        if (w >= 0 && bush.info_sets()[w].player == n) {
          key = w;
          found = true;
        }
      }
      if (!found) key = -1 - RootBlock(bush, n, bush.root_of(u));
      auto [it, fresh] = block_of_key.emplace(key, part.size());
      if (fresh) part.emplace_back();
      part[it->second].push_back(u);
    }
    out.root_partitions.push_back(std::move(part));
  }
  return out;
}

int SubgameFamily::Find(const VertexSet& s) const {
  auto it = std::lower_bound(
      sets.begin(), sets.end(), s, [](const SubgameSet& a, const VertexSet& b) {
        if (a.vertices.size() != b.size()) return a.vertices.size() < b.size();
        return a.vertices < b;
      });
  if (it == sets.end() || it->vertices != s) return -1;
  return static_cast<int>(it - sets.begin());
}

SubgameFamily EnumerateSubgameSets(const GameBush& bush, int cap,
                                   bool decision_atoms_only) {
  const int nv = bush.num_vertices();
  SubgameFamily family;
  std::set<VertexSet> atom_set;
  for (int v = 0; v < nv; ++v) {
    if (decision_atoms_only && bush.is_terminal(v)) continue;
    atom_set.insert(Closure(bush, {v}));
  }
  family.atoms.assign(atom_set.begin(), atom_set.end());
  std::vector<Bits> atom_bits;
  for (const VertexSet& a : family.atoms) atom_bits.push_back(ToBits(a, nv));

  VertexSet all(nv);
  for (int v = 0; v < nv; ++v) all[v] = v;
  const Bits full = ToBits(all, nv);

  std::set<Bits> seen{Bits((nv + 63) / 64, 0), full};
  std::vector<Bits> frontier{Bits((nv + 63) / 64, 0)};
  while (!frontier.empty()) {
    std::vector<Bits> next;
    for (const Bits& s : frontier) {
      for (const Bits& a : atom_bits) {
        if (Subset(a, s)) continue;
        Bits u = s;
        for (std::size_t i = 0; i < u.size(); ++i) u[i] |= a[i];
        if (seen.insert(u).second) {
          if (static_cast<int>(seen.size()) > cap) {
            throw SizeGuardError("more than " + std::to_string(cap) +
                                 " subgame sets");
          }
          next.push_back(std::move(u));
        }
      }
    }
    frontier = std::move(next);
  }

  std::vector<VertexSet> lists;
  for (const Bits& b : seen) lists.push_back(FromBits(b, nv));
  std::sort(lists.begin(), lists.end(),
            [](const VertexSet& a, const VertexSet& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  for (const VertexSet& s : lists) {
    family.sets.push_back(DescribeSubgame(bush, s));
  }

  // Covers of S are the minimal sets among S u a (and V).
  for (std::size_t i = 0; i < lists.size(); ++i) {
    const Bits si = ToBits(lists[i], nv);
    std::vector<Bits> cands;
    for (const Bits& a : atom_bits) {
      if (Subset(a, si)) continue;
      Bits u = si;
      for (std::size_t k = 0; k < u.size(); ++k) u[k] |= a[k];
      cands.push_back(std::move(u));
    }
    if (si != full) cands.push_back(full);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (const Bits& c : cands) {
      bool minimal = true;
      for (const Bits& d : cands) {
        if (d != c && Subset(d, c)) {
          minimal = false;
          break;
        }
      }
      if (minimal) {
        family.edges.emplace_back(static_cast<int>(i),
                                  family.Find(FromBits(c, nv)));
      }
    }
  }
  std::sort(family.edges.begin(), family.edges.end());
  return family;
}

json FamilyToJson(const GameBush& bush, const SubgameFamily& family) {
  json doc;
  doc["sets"] = json::array();
  for (const SubgameSet& s : family.sets) {
    json roots_n = json::object();
    for (int n = 0; n < bush.num_players(); ++n) {
      json blocks = json::array();
      for (const Block& b : s.root_partitions[n]) blocks.push_back(bush.Ids(b));
      roots_n[bush.player_name(n)] = blocks;
    }
    doc["sets"].push_back({{"vertices", bush.Ids(s.vertices)},
                           {"roots", bush.Ids(s.roots)},
                           {"degenerate", s.degenerate},
                           {"root_partitions", roots_n}});
  }
  doc["atoms"] = json::array();
  for (const VertexSet& a : family.atoms) doc["atoms"].push_back(bush.Ids(a));
  doc["edges"] = json::array();
  for (auto [i, j] : family.edges) doc["edges"].push_back({i, j});
  return doc;
}

RecallReport HasPerfectRecall(const GameBush& bush) {
  RecallReport report;
  // Experience: root block, then (set, action) for each own earlier move.
  using Experience = std::vector<std::pair<int, int>>;
  for (std::size_t w = 0; w < bush.info_sets().size(); ++w) {
    const InfoSet& set = bush.info_sets()[w];
    const int n = set.player;
    std::optional<Experience> common;
    for (int v : set.vertices) {
      Experience exp{{-1, RootBlock(bush, n, bush.root_of(v))}};
      std::set<int> visited{static_cast<int>(w)};
      std::vector<int> path = bush.PathTo(v);
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        int u = bush.info_set_of(path[i]);
        if (u < 0 || bush.info_sets()[u].player != n) continue;
        if (!visited.insert(u).second) {
          report.ok = false;
          report.player = n;
          report.info_set = static_cast<int>(w);
          report.detail = "information set " + bush.info_sets()[u].name +
                          " repeats on the path to " + bush.id(v);
          return report;
        }
        exp.emplace_back(u, bush.ActionTo(path[i], path[i + 1]));
      }
      if (!common) {
        common = std::move(exp);
      } else if (*common != exp) {
        report.ok = false;
        report.player = n;
        report.info_set = static_cast<int>(w);
        report.detail = "own experience differs within " + set.name + " at " +
                        bush.id(v);
        return report;
      }
    }
  }
  return report;
}

namespace {

void CopyPlayers(const GameBush& from, GameBush& to) {
  for (int n = 0; n < from.num_players(); ++n) to.AddPlayer(from.player_name(n));
}

void CopyNature(const GameBush& from, const std::vector<char>& keep,
                GameBush& to) {
  for (const NatureNode& node : from.nature_nodes()) {
    if (!keep[node.vertex]) continue;
    to.SetNature(from.id(node.vertex), from.Ids(node.children),
                 node.probabilities);
  }
}

void CopyInfoSets(const GameBush& from, const std::vector<char>& keep,
                  GameBush& to) {
  for (const InfoSet& set : from.info_sets()) {
    if (!keep[set.vertices[0]]) continue;
    std::vector<std::pair<std::string, std::vector<std::string>>> moves;
    for (std::size_t k = 0; k < set.vertices.size(); ++k) {
      moves.emplace_back(from.id(set.vertices[k]), from.Ids(set.moves[k]));
    }
    to.AddInfoSet(set.player, set.name, set.actions, std::move(moves));
  }
}

std::vector<std::vector<std::string>> IdBlocks(const GameBush& bush,
                                               const Partition& p) {
  std::vector<std::vector<std::string>> out;
  for (const Block& b : p) out.push_back(bush.Ids(b));
  return out;
}

}  // namespace

GameBundle Restrict(const GameBundle& bundle, const VertexSet& s) {
  const GameBush& bush = bundle.bush;
  SubgameCheck check = IsSubgameSet(bush, s);
  if (!check.ok) {
    throw ValidationError("not a subgame set:\n" +
                          FormatViolations(check.violations));
  }
  SubgameSet info = DescribeSubgame(bush, s);
  std::vector<char> in = Membership(bush, s);
  GameBush sub;
  CopyPlayers(bush, sub);
  for (int v : s) sub.AddVertex(bush.id(v));
  for (auto [a, b] : bush.arrows()) {
    if (in[a] && in[b]) sub.AddArrow(bush.id(a), bush.id(b));
  }
  CopyNature(bush, in, sub);
  CopyInfoSets(bush, in, sub);
  for (int n = 0; n < bush.num_players(); ++n) {
    sub.SetRootPartition(n, IdBlocks(bush, info.root_partitions[n]));
    Partition q;
    for (const Block& b : bush.terminal_partition(n)) {
      if (in[b[0]]) q.push_back(b);
    }
    sub.SetTerminalPartition(n, IdBlocks(bush, q));
  }
  std::vector<std::pair<Block, PayoffModel>> models;
  for (int c = 0; c < bundle.meet.num_blocks(); ++c) {
    const Block& block = bundle.meet.blocks[c];
    if (!in[block[0]]) continue;
    Block local;
    for (int t : block) local.push_back(sub.Index(bush.id(t)));
    models.emplace_back(std::move(local), bundle.model(c));
  }
  return MakeBundle(std::move(sub), std::move(models), bundle.parameters);
}

std::vector<std::vector<std::string>> FactorRootClasses(
    const GameBundle& bundle, const VertexSet& s) {
  const GameBush& bush = bundle.bush;
  SubgameSet info = DescribeSubgame(bush, s);
  MeetPartition meet =
      MeetOf(info.root_partitions, info.roots, bush.num_vertices());
  return IdBlocks(bush, meet.blocks);
}

GameBundle Factor(const GameBundle& bundle, const VertexSet& s,
                  std::vector<IdModel> root_models) {
  const GameBush& bush = bundle.bush;
  SubgameCheck check = IsSubgameSet(bush, s);
  if (!check.ok) {
    throw ValidationError("not a subgame set:\n" +
                          FormatViolations(check.violations));
  }
  SubgameSet info = DescribeSubgame(bush, s);
  std::vector<char> in = Membership(bush, s);
  std::vector<char> keep(bush.num_vertices(), 0);
  for (int v = 0; v < bush.num_vertices(); ++v) keep[v] = !in[v];
  for (int r : info.roots) keep[r] = 1;
  std::vector<char> outside(bush.num_vertices(), 0);
  for (int v = 0; v < bush.num_vertices(); ++v) outside[v] = !in[v];

  GameBush fac;
  CopyPlayers(bush, fac);
  for (int v = 0; v < bush.num_vertices(); ++v) {
    if (keep[v]) fac.AddVertex(bush.id(v));
  }
  for (auto [a, b] : bush.arrows()) {
    if (outside[a] && keep[b]) fac.AddArrow(bush.id(a), bush.id(b));
  }
  CopyNature(bush, outside, fac);
  CopyInfoSets(bush, outside, fac);
  for (int n = 0; n < bush.num_players(); ++n) {
    fac.SetRootPartition(n, IdBlocks(bush, bush.root_partition(n)));
    Partition q;
    for (const Block& b : bush.terminal_partition(n)) {
      if (outside[b[0]]) q.push_back(b);
    }
    for (const Block& b : info.root_partitions[n]) q.push_back(b);
    fac.SetTerminalPartition(n, IdBlocks(bush, q));
  }

  std::vector<std::pair<Block, PayoffModel>> models;
  for (int c = 0; c < bundle.meet.num_blocks(); ++c) {
    const Block& block = bundle.meet.blocks[c];
    if (!outside[block[0]]) continue;
    Block local;
    for (int t : block) local.push_back(fac.Index(bush.id(t)));
    models.emplace_back(std::move(local), bundle.model(c));
  }
  std::set<std::vector<std::string>> supplied;
  for (auto& [ids, model] : root_models) {
    Block local;
    for (const auto& id : ids) {
      int v = fac.Index(id);
      if (v < 0) throw UnknownClassError("unknown vertex '" + id + "'");
      local.push_back(v);
    }
    std::vector<std::string> key = ids;
    std::sort(key.begin(), key.end());
    supplied.insert(key);
    models.emplace_back(std::move(local), std::move(model));
  }
  for (auto cls : FactorRootClasses(bundle, s)) {
    std::sort(cls.begin(), cls.end());
    if (supplied.count(cls) == 0) {
      std::string ids;
      for (const auto& id : cls) ids += " " + id;
      throw MissingContinuationError("no continuation for root class {" + ids +
                                     " }");
    }
  }
  return MakeBundle(std::move(fac), std::move(models), bundle.parameters);
}

namespace {

// True when no vertex of `upper \ lower` owned by a player has an ancestor in
// `upper` owned by the same player.
bool SingleMoveFactor(const GameBush& bush, const std::vector<char>& lower,
                      const std::vector<char>& upper) {
  for (int v = 0; v < bush.num_vertices(); ++v) {
    if (!upper[v] || lower[v]) continue;
    int w = bush.info_set_of(v);
    if (w < 0) continue;
    int n = bush.info_sets()[w].player;
    for (int u = bush.parent(v); u >= 0; u = bush.parent(u)) {
      if (!upper[u]) break;
      int x = bush.info_set_of(u);
      if (x >= 0 && bush.info_sets()[x].player == n) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<std::vector<VertexSet>> IsSolvable(const GameBush& bush) {
  SubgameFamily family = EnumerateSubgameSets(bush, kDefaultFamilyCap, true);
  std::vector<std::vector<char>> member;
  for (const SubgameSet& s : family.sets) {
    member.push_back(Membership(bush, s.vertices));
  }
  const int top = static_cast<int>(family.sets.size()) - 1;
  std::vector<char> failed(family.sets.size(), 0);
  std::vector<int> chain{0};
  std::function<bool(int)> search = [&](int i) {
    if (i == top) return true;
    for (int j = i + 1; j <= top; ++j) {
      if (failed[j]) continue;
      const SubgameSet& next = family.sets[j];
      if (next.degenerate && j != top) continue;
      if (next.vertices.size() <= family.sets[i].vertices.size()) continue;
      bool contains = true;
      for (int v : family.sets[i].vertices) contains = contains && member[j][v];
      if (!contains) continue;
      if (!SingleMoveFactor(bush, member[i], member[j])) continue;
      chain.push_back(j);
      if (search(j)) return true;
      chain.pop_back();
      failed[j] = 1;
    }
    return false;
  };
  if (!search(0)) return std::nullopt;
  std::vector<VertexSet> out;
  for (int i : chain) out.push_back(family.sets[i].vertices);
  return out;
}

}  // namespace gamebush

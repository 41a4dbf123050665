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

#include "gamebush/game_bush.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "gamebush/error.h"

namespace gamebush {

int GameBush::AddPlayer(std::string name) {
  if (PlayerIndex(name) >= 0) throw ParseError("duplicate player '" + name + "'");
  players_.push_back(std::move(name));
  root_partitions_.emplace_back();
  terminal_partitions_.emplace_back();
  return num_players() - 1;
}

int GameBush::PlayerIndex(std::string_view name) const {
  for (int n = 0; n < num_players(); ++n) {
    if (players_[n] == name) return n;
  }
  return -1;
}

int GameBush::AddVertex(std::string id) {
  if (index_.count(id) != 0) throw ParseError("duplicate vertex '" + id + "'");
  int v = num_vertices();
  index_.emplace(id, v);
  ids_.push_back(std::move(id));
  return v;
}

int GameBush::Index(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? -1 : it->second;
}

int GameBush::RequireIndex(std::string_view id) const {
  int v = Index(id);
  if (v < 0) throw ParseError("unknown vertex '" + std::string(id) + "'");
  return v;
}

void GameBush::AddArrow(std::string_view from, std::string_view to) {
  arrows_.emplace_back(RequireIndex(from), RequireIndex(to));
}

void GameBush::SetNature(std::string_view vertex,
                         std::vector<std::string> children,
                         std::vector<Probability> probabilities) {
  if (children.size() != probabilities.size()) {
    throw ParseError("nature node '" + std::string(vertex) +
                     "': children and probabilities differ in length");
  }
  NatureNode node;
  node.vertex = RequireIndex(vertex);
  for (const auto& c : children) node.children.push_back(RequireIndex(c));
  node.probabilities = std::move(probabilities);
  nature_.push_back(std::move(node));
}

void GameBush::AddInfoSet(
    int player, std::string name, std::vector<std::string> actions,
    std::vector<std::pair<std::string, std::vector<std::string>>> moves) {
  if (player < 0 || player >= num_players()) {
    throw ParseError("info set '" + name + "' has an unknown player");
  }
  InfoSet set;
  set.name = std::move(name);
  set.player = player;
  set.actions = std::move(actions);
  for (auto& [vertex, kids] : moves) {
    set.vertices.push_back(RequireIndex(vertex));
    std::vector<int> row;
    for (const auto& k : kids) row.push_back(RequireIndex(k));
    set.moves.push_back(std::move(row));
  }
  info_sets_.push_back(std::move(set));
}

namespace {

Partition ToBlocks(const GameBush& bush,
                   const std::vector<std::vector<std::string>>& blocks) {
  Partition out;
  for (const auto& b : blocks) {
    Block block;
    for (const auto& id : b) block.push_back(bush.RequireIndex(id));
    out.push_back(std::move(block));
  }
  return out;
}

}  // namespace

void GameBush::SetRootPartition(int player,
                                std::vector<std::vector<std::string>> blocks) {
  root_partitions_.at(player) = ToBlocks(*this, blocks);
}

void GameBush::SetTerminalPartition(
    int player, std::vector<std::vector<std::string>> blocks) {
  terminal_partitions_.at(player) = ToBlocks(*this, blocks);
}

void GameBush::Finalize() {
  const int nv = num_vertices();
  children_.assign(nv, {});
  parents_.assign(nv, {});
  for (auto [from, to] : arrows_) {
    children_[from].push_back(to);
    parents_[to].push_back(from);
  }
  roots_.clear();
  terminals_.clear();
  root_pos_.assign(nv, -1);
  terminal_pos_.assign(nv, -1);
  for (int v = 0; v < nv; ++v) {
    if (parents_[v].empty()) {
      root_pos_[v] = static_cast<int>(roots_.size());
      roots_.push_back(v);
    }
    if (children_[v].empty()) {
      terminal_pos_[v] = static_cast<int>(terminals_.size());
      terminals_.push_back(v);
    }
  }
  player_sets_.assign(num_players(), {});
  info_set_of_.assign(nv, -1);
  info_slot_.assign(nv, -1);
  for (int i = 0; i < static_cast<int>(info_sets_.size()); ++i) {
    const InfoSet& set = info_sets_[i];
    player_sets_[set.player].push_back(i);
    for (int k = 0; k < static_cast<int>(set.vertices.size()); ++k) {
      int v = set.vertices[k];
      if (info_set_of_[v] < 0) {
        info_set_of_[v] = i;
        info_slot_[v] = k;
      }
    }
  }
  nature_of_.assign(nv, -1);
  for (int i = 0; i < static_cast<int>(nature_.size()); ++i) {
    if (nature_of_[nature_[i].vertex] < 0) nature_of_[nature_[i].vertex] = i;
  }
  root_of_.assign(nv, -1);
  for (int v = 0; v < nv; ++v) {
    int u = v;
    int steps = 0;
    while (!parents_[u].empty() && steps <= nv) {
      u = parents_[u][0];
      ++steps;
    }
    if (steps <= nv) root_of_[v] = u;
  }
}

std::vector<int> GameBush::PathTo(int v) const {
  std::vector<int> path;
  int u = v;
  for (int steps = 0; u >= 0 && steps <= num_vertices(); ++steps) {
    path.push_back(u);
    u = parent(u);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

int GameBush::ActionTo(int from, int to) const {
  if (const NatureNode* node = nature(from)) {
    for (int k = 0; k < static_cast<int>(node->children.size()); ++k) {
      if (node->children[k] == to) return k;
    }
    return -1;
  }
  int set = info_set_of_[from];
  if (set < 0) return -1;
  const auto& row = info_sets_[set].moves[info_slot_[from]];
  for (int a = 0; a < static_cast<int>(row.size()); ++a) {
    if (row[a] == to) return a;
  }
  return -1;
}

std::vector<std::string> GameBush::Ids(const std::vector<int>& vs) const {
  std::vector<std::string> out;
  out.reserve(vs.size());
  for (int v : vs) out.push_back(ids_[v]);
  return out;
}

namespace {

bool SameChildren(std::vector<int> a, std::vector<int> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

void CheckPartition(const GameBush& bush, const Partition& blocks,
                    const std::vector<int>& universe, const std::string& what,
                    int player, std::vector<Violation>& out) {
  std::vector<int> count(bush.num_vertices(), 0);
  std::vector<bool> in_universe(bush.num_vertices(), false);
  for (int v : universe) in_universe[v] = true;
  const std::string who = bush.player_name(player);
  for (const Block& b : blocks) {
    if (b.empty()) {
      out.push_back({what, {}, "empty block for player " + who});
    }
    for (int v : b) {
      ++count[v];
      if (!in_universe[v]) {
        out.push_back({what, {bush.id(v)},
                       "block member outside its universe for player " + who});
      }
    }
  }
  for (int v : universe) {
    if (count[v] != 1) {
      out.push_back({what, {bush.id(v)},
                     "covered " + std::to_string(count[v]) +
                         " times for player " + who});
    }
  }
}

}  // namespace

std::vector<Violation> ValidateBush(const GameBush& bush) {
  std::vector<Violation> out;
  const int nv = bush.num_vertices();

  for (int v = 0; v < nv; ++v) {
    if (bush.parents(v).size() > 1) {
      out.push_back({"unique-path", {bush.id(v)},
                     std::to_string(bush.parents(v).size()) +
                         " incoming arrows"});
    }
    if (bush.root_of(v) < 0) {
      out.push_back({"acyclic", {bush.id(v)}, "not reachable from a root"});
    }
    const auto& kids = bush.children(v);
    if (kids.size() == 1) {
      out.push_back({"branching", {bush.id(v)},
                     "non-terminal vertex with a single outgoing arrow"});
    }
    std::set<int> distinct(kids.begin(), kids.end());
    if (distinct.size() != kids.size()) {
      out.push_back({"unique-path", {bush.id(v)}, "parallel arrows"});
    }
  }

  // Ownership: every non-terminal belongs to exactly one of D_0, D_n.
  std::vector<int> owners(nv, 0);
  for (const InfoSet& set : bush.info_sets()) {
    for (int v : set.vertices) ++owners[v];
  }
  for (const NatureNode& node : bush.nature_nodes()) ++owners[node.vertex];
  for (int v = 0; v < nv; ++v) {
    if (bush.is_terminal(v)) {
      if (owners[v] > 0) {
        out.push_back({"terminal-decision", {bush.id(v)},
                       bush.is_root(v)
                           ? "root-terminal vertex assigned to a mover"
                           : "terminal vertex assigned to a mover"});
      }
    } else if (owners[v] != 1) {
      out.push_back({"ownership", {bush.id(v)},
                     owners[v] == 0 ? "decision node without a mover"
                                    : "decision node with several movers"});
    }
  }

  for (const NatureNode& node : bush.nature_nodes()) {
    const std::string& vid = bush.id(node.vertex);
    if (!SameChildren(node.children, bush.children(node.vertex))) {
      out.push_back({"nature-arrows", {vid},
                     "distribution does not match outgoing arrows"});
    }
    bool all_exact = true;
    Rational exact_sum{0, 1};
    double sum = 0.0;
    for (const Probability& p : node.probabilities) {
      if (!(p.value > 0.0)) {
        out.push_back({"nature-positivity", {vid},
                       "non-positive arrow probability"});
      }
      sum += p.value;
      if (p.exact) {
        exact_sum = Rational{exact_sum.num * p.exact->den +
                                 p.exact->num * exact_sum.den,
                             exact_sum.den * p.exact->den};
        std::int64_t g = std::gcd(exact_sum.num, exact_sum.den);
        if (g != 0) exact_sum = {exact_sum.num / g, exact_sum.den / g};
      } else {
        all_exact = false;
      }
    }
    bool sums_to_one = all_exact ? (exact_sum.num == exact_sum.den)
                                 : std::fabs(sum - 1.0) <= 1e-12;
    if (!sums_to_one) {
      out.push_back({"nature-sum", {vid}, "probabilities do not sum to 1"});
    }
  }

  for (const InfoSet& set : bush.info_sets()) {
    if (set.vertices.empty()) {
      out.push_back({"action-bijection", {}, "empty info set " + set.name});
    }
    std::set<std::string> names(set.actions.begin(), set.actions.end());
    if (names.size() != set.actions.size()) {
      out.push_back({"action-bijection", {}, "duplicate action in " + set.name});
    }
    for (std::size_t k = 0; k < set.vertices.size(); ++k) {
      int v = set.vertices[k];
      const auto& row = set.moves[k];
      if (row.size() != set.actions.size() ||
          !SameChildren(row, bush.children(v))) {
        out.push_back({"action-bijection", {bush.id(v)},
                       "actions of " + set.name +
                           " do not biject with outgoing arrows"});
      }
    }
  }

  for (int n = 0; n < bush.num_players(); ++n) {
    CheckPartition(bush, bush.root_partition(n), bush.roots(), "root-partition",
                   n, out);
    CheckPartition(bush, bush.terminal_partition(n), bush.terminals(),
                   "terminal-partition", n, out);
  }
  return out;
}

MeetPartition MeetOf(const std::vector<Partition>& partitions,
                     const std::vector<int>& universe, int num_vertices) {
  std::vector<int> parent(num_vertices);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const Partition& p : partitions) {
    for (const Block& b : p) {
      for (std::size_t i = 1; i < b.size(); ++i) {
        int a = find(b[0]), c = find(b[i]);
        if (a != c) parent[c] = a;
      }
    }
  }
  MeetPartition meet;
  meet.index.assign(num_vertices, -1);
  std::vector<int> block_of_rep(num_vertices, -1);
  for (int v : universe) {
    int r = find(v);
    if (block_of_rep[r] < 0) {
      block_of_rep[r] = meet.num_blocks();
      meet.blocks.emplace_back();
    }
    meet.index[v] = block_of_rep[r];
    meet.blocks[block_of_rep[r]].push_back(v);
  }
  return meet;
}

MeetPartition ComputeMeetPartition(const GameBush& bush) {
  std::vector<Partition> parts;
  for (int n = 0; n < bush.num_players(); ++n) {
    parts.push_back(bush.terminal_partition(n));
  }
  return MeetOf(parts, bush.terminals(), bush.num_vertices());
}

}  // namespace gamebush

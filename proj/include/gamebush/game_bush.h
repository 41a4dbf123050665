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

#ifndef GAMEBUSH_GAME_BUSH_H_
#define GAMEBUSH_GAME_BUSH_H_

// A game bush: a finite multi-root game form. Vertices carry stable string
// identifiers; everything internal works on dense vertex indices.

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gamebush/expr.h"

namespace gamebush {

using Block = std::vector<int>;
using Partition = std::vector<Block>;

struct InfoSet {
  std::string name;
  int player = -1;
  std::vector<int> vertices;
  std::vector<std::string> actions;
  // moves[k][a] is the child of vertices[k] reached by actions[a].
  std::vector<std::vector<int>> moves;

  int num_actions() const { return static_cast<int>(actions.size()); }
};

struct Probability {
  double value = 0.0;
  std::optional<Rational> exact;
};

struct NatureNode {
  int vertex = -1;
  std::vector<int> children;
  std::vector<Probability> probabilities;
};

struct Violation {
  std::string invariant;
  std::vector<std::string> vertices;
  std::string detail;
};

class GameBush {
 public:
  // --- construction -------------------------------------------------------
  int AddPlayer(std::string name);
  int AddVertex(std::string id);
  void AddArrow(std::string_view from, std::string_view to);
  // Children listed by id; probabilities aligned with them.
  void SetNature(std::string_view vertex, std::vector<std::string> children,
                 std::vector<Probability> probabilities);
  // moves maps each member vertex id to its children in action order.
  void AddInfoSet(int player, std::string name, std::vector<std::string> actions,
                  std::vector<std::pair<std::string, std::vector<std::string>>>
                      moves);
  void SetRootPartition(int player, std::vector<std::vector<std::string>> blocks);
  void SetTerminalPartition(int player,
                            std::vector<std::vector<std::string>> blocks);
  // Recomputes derived indices. Safe to call more than once.
  void Finalize();

  // --- structure ----------------------------------------------------------
  int num_players() const { return static_cast<int>(players_.size()); }
  const std::string& player_name(int n) const { return players_[n]; }
  int PlayerIndex(std::string_view name) const;  // -1 if unknown

  int num_vertices() const { return static_cast<int>(ids_.size()); }
  const std::string& id(int v) const { return ids_[v]; }
  int Index(std::string_view id) const;  // -1 if unknown
  int RequireIndex(std::string_view id) const;  // throws ParseError

  const std::vector<std::pair<int, int>>& arrows() const { return arrows_; }
  const std::vector<int>& children(int v) const { return children_[v]; }
  const std::vector<int>& parents(int v) const { return parents_[v]; }
  // Unique predecessor, -1 for roots (or ill-formed vertices).
  int parent(int v) const {
    return parents_[v].size() == 1 ? parents_[v][0] : -1;
  }
  bool is_root(int v) const { return parents_[v].empty(); }
  bool is_terminal(int v) const { return children_[v].empty(); }
  const std::vector<int>& roots() const { return roots_; }
  const std::vector<int>& terminals() const { return terminals_; }
  int root_position(int v) const { return root_pos_[v]; }
  int terminal_position(int v) const { return terminal_pos_[v]; }

  const std::vector<InfoSet>& info_sets() const { return info_sets_; }
  const std::vector<int>& info_sets_of(int player) const {
    return player_sets_[player];
  }
  int info_set_of(int v) const { return info_set_of_[v]; }
  // Position of v inside its info set's vertex list.
  int info_slot(int v) const { return info_slot_[v]; }
  const NatureNode* nature(int v) const {
    return nature_of_[v] < 0 ? nullptr : &nature_[nature_of_[v]];
  }
  const std::vector<NatureNode>& nature_nodes() const { return nature_; }

  const Partition& root_partition(int n) const { return root_partitions_[n]; }
  const Partition& terminal_partition(int n) const {
    return terminal_partitions_[n];
  }

  // Root reached by walking parents; -1 if the walk does not terminate.
  int root_of(int v) const { return root_of_[v]; }
  // Vertices from the root down to v inclusive.
  std::vector<int> PathTo(int v) const;
  // Action index taken at `from` to reach its child `to`.
  int ActionTo(int from, int to) const;

  std::vector<std::string> Ids(const std::vector<int>& vs) const;

 private:
  std::vector<std::string> players_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::pair<int, int>> arrows_;
  std::vector<NatureNode> nature_;
  std::vector<InfoSet> info_sets_;
  std::vector<Partition> root_partitions_;
  std::vector<Partition> terminal_partitions_;

  // Derived by Finalize().
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<int>> parents_;
  std::vector<int> roots_, terminals_, root_pos_, terminal_pos_;
  std::vector<std::vector<int>> player_sets_;
  std::vector<int> info_set_of_, info_slot_, nature_of_, root_of_;
};

// Every broken invariant; empty iff the bush is well formed.
std::vector<Violation> ValidateBush(const GameBush& bush);

struct MeetPartition {
  Partition blocks;
  // Block index per vertex; -1 for non-terminals.
  std::vector<int> index;

  int num_blocks() const { return static_cast<int>(blocks.size()); }
};

// Finest partition of the terminals coarser than every terminal partition:
// connected components of the block-overlap graph.
MeetPartition ComputeMeetPartition(const GameBush& bush);

// Same construction over an explicit list of partitions of `universe`.
MeetPartition MeetOf(const std::vector<Partition>& partitions,
                     const std::vector<int>& universe, int num_vertices);

}  // namespace gamebush

#endif  // GAMEBUSH_GAME_BUSH_H_

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

#ifndef GAMEBUSH_SUBGAMES_H_
#define GAMEBUSH_SUBGAMES_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gamebush/game_bundle.h"
#include "json.hpp"

namespace gamebush {

// Vertex subsets are sorted index lists throughout.
using VertexSet = std::vector<int>;

struct SubgameCheck {
  bool ok = true;
  std::vector<Violation> violations;
};

// Closure under arrows and saturation with respect to every P_n and Q_n.
SubgameCheck IsSubgameSet(const GameBush& bush, const VertexSet& s);

// Smallest subgame set containing `seed`.
VertexSet Closure(const GameBush& bush, const VertexSet& seed);

struct SubgameSet {
  VertexSet vertices;
  VertexSet roots;      // R'
  VertexSet terminals;  // T' = T n S
  bool degenerate = false;  // S is a set of terminals
  // R'_n per player.
  std::vector<Partition> root_partitions;
};

SubgameSet DescribeSubgame(const GameBush& bush, const VertexSet& s);

struct SubgameFamily {
  std::vector<VertexSet> atoms;
  // Sorted by size, then lexicographically; sets[0] is empty.
  std::vector<SubgameSet> sets;
  // Covering pairs (i, j): sets[i] is a maximal proper member of sets[j].
  std::vector<std::pair<int, int>> edges;

  int Find(const VertexSet& s) const;  // -1 when absent
};

inline constexpr int kDefaultFamilyCap = 1 << 16;

// All unions of atom closures. With `decision_atoms_only`, atoms generated by
// terminals alone are left out (they only add degenerate pieces); the whole
// vertex set is always included.
SubgameFamily EnumerateSubgameSets(const GameBush& bush,
                                   int cap = kDefaultFamilyCap,
                                   bool decision_atoms_only = false);

nlohmann::json FamilyToJson(const GameBush& bush, const SubgameFamily& family);

struct RecallReport {
  bool ok = true;
  int player = -1;
  int info_set = -1;
  std::string detail;
};

RecallReport HasPerfectRecall(const GameBush& bush);

// Gamma restricted to S, roots R' with partitions R'_n.
GameBundle Restrict(const GameBundle& bundle, const VertexSet& s);

// Terminal classes of the factor game that lie in R', as vertex ids.
std::vector<std::vector<std::string>> FactorRootClasses(
    const GameBundle& bundle, const VertexSet& s);

using IdModel = std::pair<std::vector<std::string>, PayoffModel>;

// Gamma/S. `root_models` supplies F_C for every class of FactorRootClasses;
// throws MissingContinuationError otherwise.
GameBundle Factor(const GameBundle& bundle, const VertexSet& s,
                  std::vector<IdModel> root_models);

// Chain of subgame sets from the empty set to V whose successive factors never
// ask a player to move twice; nullopt when none exists.
std::optional<std::vector<VertexSet>> IsSolvable(const GameBush& bush);

}  // namespace gamebush

#endif  // GAMEBUSH_SUBGAMES_H_

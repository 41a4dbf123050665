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

#ifndef GAMEBUSH_STRATEGIES_H_
#define GAMEBUSH_STRATEGIES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gamebush/game_bundle.h"
#include "json.hpp"

namespace gamebush {

inline constexpr std::int64_t kDefaultStrategyCap = 1000000;

// S_n as a mixed-radix counter over the player's information sets. The first
// set is the most significant digit, so strategies enumerate lexicographically.
struct StrategySpace {
  int player = -1;
  std::vector<int> sets;  // global info-set indices
  std::vector<int> radix;
  std::vector<std::int64_t> stride;
  std::int64_t size = 1;

  int Action(std::int64_t s, int k) const {
    return static_cast<int>((s / stride[k]) % radix[k]);
  }
  std::int64_t Encode(std::span<const int> actions) const;
};

StrategySpace EnumeratePure(const GameBush& bush, int player,
                            std::int64_t cap = kDefaultStrategyCap);

struct MixedProfile {
  // sigma[n][s] over S_n.
  std::vector<std::vector<double>> sigma;
};

struct BehaviourProfile {
  // probs[w][a], indexed by global info-set index.
  std::vector<std::vector<double>> probs;
};

// Consistency masks and chance products shared by every reach computation on
// one bush. The bush must outlive the tables.
class StrategyTables {
 public:
  explicit StrategyTables(const GameBush& bush,
                          std::int64_t cap = kDefaultStrategyCap);

  const GameBush& bush() const { return *bush_; }
  int num_players() const { return static_cast<int>(spaces_.size()); }
  const StrategySpace& space(int n) const { return spaces_[n]; }
  std::int64_t num_strategies(int n) const { return spaces_[n].size; }

  // Entry s is 1 when pure strategy s agrees with every move of player n on
  // the path to v.
  std::span<const double> VertexMask(int n, int v) const;
  // Entry t (terminal position) is the same indicator for terminal t.
  std::span<const double> TerminalMask(int n, std::int64_t s) const;
  // Product of nature probabilities along the path to v.
  double chance(int v) const { return chance_[v]; }

  double PlayerReach(int n, std::span<const double> sigma_n, int v) const;

  MixedProfile Uniform() const;
  MixedProfile Pure(std::span<const std::int64_t> choice) const;
  std::string Label(int n, std::int64_t s) const;
  // -1 when no strategy of player n carries that label.
  std::int64_t FindLabel(int n, std::string_view label) const;

 private:
  const GameBush* bush_;
  std::vector<StrategySpace> spaces_;
  std::vector<std::vector<double>> vertex_mask_;    // [n][v * |S_n| + s]
  std::vector<std::vector<double>> terminal_mask_;  // [n][s * |T| + t]
  std::vector<double> chance_;
};

struct ReachReport {
  std::vector<double> q;         // by root position
  std::vector<double> vertex;    // probability of passing through v
  std::vector<double> terminal;  // by terminal position
  std::vector<double> class_prob;
  // Conditional on each meet block, in block order; empty when unreached.
  std::vector<std::vector<double>> conditional;
};

ReachReport Reach(const GameBundle& bundle, const StrategyTables& tables,
                  std::span<const double> q, const MixedProfile& sigma);

// Chooses one element of a set-valued continuation.
struct Selector {
  enum class Rule { kFirst, kNearest, kExplicit };
  Rule rule = Rule::kFirst;
  // kExplicit: candidate index per meet block (clamped to the last one).
  std::vector<int> branch;
  // kNearest: candidate closest to reference[c] wins; empty entries fall back
  // to the first candidate.
  std::vector<std::vector<double>> reference;
  // Optional w_C per block for classes that are not reached.
  std::vector<std::vector<double>> witness;

  // "first", "nearest" or "explicit:i,j,...".
  static Selector Parse(std::string_view text);
};

struct Selection {
  PayoffCandidate candidate;
  int index = 0;
  int num_candidates = 0;
};

std::optional<Selection> SelectCandidate(const PayoffModel& model,
                                         std::span<const double> w,
                                         const Selector& selector, int block);

struct Plan {
  std::vector<double> q;
  MixedProfile sigma;
  ReachReport reach;
  // y[t * N + n] by terminal position.
  std::vector<double> y;
  // w_C per block for unreached classes, empty otherwise.
  std::vector<std::vector<double>> witness;
  std::vector<int> branch;
  std::vector<int> num_candidates;
  std::vector<std::int64_t> tags;

  double payoff(int terminal_pos, int n, int num_players) const {
    return y[terminal_pos * num_players + n];
  }
};

// Throws NoPlanError naming the class whose continuation is empty.
Plan MakePlan(const GameBundle& bundle, const StrategyTables& tables,
              std::span<const double> q, const MixedProfile& sigma,
              const Selector& selector = {});

// L2 distance of each class's block of y from F_C at its conditional (or
// witness); the plan invariant holds when all are within tolerance.
std::vector<double> PlanResiduals(const GameBundle& bundle, const Plan& plan);

// f^n(s) for every s in S_n, with y frozen from the undeviated profile.
std::vector<double> ActionValues(const GameBundle& bundle,
                                 const StrategyTables& tables, const Plan& plan,
                                 int n);

std::vector<double> ExpectedPayoffs(const GameBundle& bundle, const Plan& plan);

struct KuhnResult {
  BehaviourProfile behaviour;
  // Set when the bush lacks perfect recall: the translation is still
  // computed but need not preserve reach probabilities.
  bool recall_warning = false;
};

KuhnResult MixedToBehaviour(const StrategyTables& tables,
                            const MixedProfile& sigma);
MixedProfile BehaviourToMixed(const StrategyTables& tables,
                              const BehaviourProfile& behaviour);

// {"player": {"label": weight, ...}, ...} with zero weights omitted.
nlohmann::json ProfileToJson(const StrategyTables& tables,
                             const MixedProfile& sigma);
// Accepts the mixed form above or {"player": {"behaviour": {"set": {"action":
// weight}}}} per player.
MixedProfile ParseProfile(const StrategyTables& tables,
                          const nlohmann::json& doc);

}  // namespace gamebush

#endif  // GAMEBUSH_STRATEGIES_H_

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

#ifndef GAMEBUSH_GAME_BUNDLE_H_
#define GAMEBUSH_GAME_BUNDLE_H_

#include <string>
#include <utility>
#include <vector>

#include "gamebush/game_bush.h"
#include "gamebush/payoff_model.h"
#include "json.hpp"

namespace gamebush {

struct GameBundle {
  GameBush bush;
  MeetPartition meet;
  // One model per block of `meet`, same order.
  std::vector<PayoffModel> continuation;
  ParameterMap parameters;

  const PayoffModel& model(int block) const { return continuation[block]; }
  // Strict upper bound on every continuation payoff magnitude.
  double PayoffBound() const;
};

// Validates the bush and attaches each model to the meet block with the same
// terminal set. Throws ValidationError (invariants, missing or duplicate
// classes) or UnknownClassError (a class that is not a meet block).
GameBundle MakeBundle(GameBush bush,
                      std::vector<std::pair<Block, PayoffModel>> models,
                      ParameterMap parameters = {});

// Parameters in `overrides` replace the file's "parameters" entries.
GameBundle ParseBundle(const nlohmann::json& doc,
                       const ParameterMap& overrides = {});
GameBundle LoadBundle(const std::string& path,
                      const ParameterMap& overrides = {});

// Function-kind models serialize by name and parameters only.
nlohmann::json BundleToJson(const GameBundle& bundle);

std::string FormatViolations(const std::vector<Violation>& violations);

}  // namespace gamebush

#endif  // GAMEBUSH_GAME_BUNDLE_H_

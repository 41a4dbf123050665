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

#ifndef GAMEBUSH_CLI_H_
#define GAMEBUSH_CLI_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gamebush/expr.h"
#include "gamebush/myopic.h"

namespace gamebush::cli {

struct RunConfig {
  std::string verb;
  std::string input;
  std::string example;  // ex1, ex2 or ex3 for the example verb
  std::vector<double> q;
  int mesh = 16;  // h = 1 / mesh
  double tolerance = 1e-9;
  std::optional<double> epsilon;
  std::optional<double> bound_b;
  int support_cap = 64;
  std::string selector = "first";
  std::string format = "json";
  std::uint64_t seed = 0;
  std::string out_dir;
  ParameterMap params;
};

// Throws ValidationError when a field is out of range.
void CheckRunConfig(const RunConfig& config);
SolverConfig MakeSolverConfig(const RunConfig& config);

struct Report {
  int exit_code = 0;
  nlohmann::json json;
  std::string text;  // replaces the JSON on stdout when non-empty
};

Report CmdValidate(const RunConfig& config);
Report CmdSubgames(const RunConfig& config);
Report CmdSolve(const RunConfig& config);
Report CmdSweep(const RunConfig& config);
Report CmdPerfect(const RunConfig& config);
Report CmdSpan(const RunConfig& config);
Report CmdExample(const RunConfig& config);

// Canned reproductions, also used by the tests. Fixtures are read from
// data_dir.
nlohmann::json Example1Report(const std::string& data_dir,
                              const ParameterMap& params, int mesh,
                              const SolverConfig& solver);
nlohmann::json Example2Report(const std::string& data_dir, int mesh,
                              const SolverConfig& solver);
nlohmann::json Example3Report(const std::string& data_dir, int mesh,
                              const SolverConfig& solver);

// Runs one verb: the report goes to `out`, errors to `err` as JSON objects.
// Returns the process exit code.
int Run(const RunConfig& config, std::ostream& out, std::ostream& err);

std::string DefaultDataDir();

}  // namespace gamebush::cli

#endif  // GAMEBUSH_CLI_H_

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

// gbush: command-line front end for game bundles and spanning checks.
//
//   gbush validate --input game.gb.json
//   gbush sweep --input game.gb.json --mesh 16 --format csv --out-dir out
//   gbush example ex1 --param s=0.5

#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gamebush/cli.h"

namespace {

std::vector<double> ParseList(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  gamebush::cli::RunConfig config;
  std::string q_text;
  std::vector<std::string> params;
  double epsilon = std::nan(""), bound_b = std::nan("");

  CLI::App app{"Game bundles: validation, subgames, myopic equilibria, spanning"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* sub) {
    sub->add_option("--input", config.input, "Bundle or complex file");
    sub->add_option("--q", q_text, "Root distribution, comma separated");
    sub->add_option("--mesh", config.mesh, "Grid resolution k (h = 1/k)");
    sub->add_option("--tol", config.tolerance, "Certificate tolerance");
    sub->add_option("--epsilon", epsilon, "Regularization epsilon");
    sub->add_option("--bound-B", bound_b, "Regularization bound B");
    sub->add_option("--support-cap", config.support_cap, "Largest support size");
    sub->add_option("--selector", config.selector, "first, nearest or explicit:i,j");
    sub->add_option("--format", config.format, "csv or json");
    sub->add_option("--seed", config.seed, "Seed for randomized starts");
    sub->add_option("--out-dir", config.out_dir, "Directory for report files");
    sub->add_option("--param", params, "Fixture parameter override key=value");
  };
  for (const char* verb : {"validate", "subgames", "solve", "sweep", "perfect", "span"}) {
    CLI::App* sub = app.add_subcommand(verb);
    common(sub);
    sub->callback([&config, verb] { config.verb = verb; });
  }
  CLI::App* example = app.add_subcommand("example", "Reproduce ex1, ex2 or ex3");
  common(example);
  example->add_option("name", config.example)->required();
  example->callback([&config] { config.verb = "example"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (!q_text.empty()) config.q = ParseList(q_text);
    for (const std::string& kv : params) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("--param needs key=value");
      config.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
  } catch (const std::exception&) {
    std::cerr << R"({"error":{"kind":"parse","message":"bad numeric flag"}})"
              << "\n";
    return 1;
  }
  if (!std::isnan(epsilon)) config.epsilon = epsilon;
  if (!std::isnan(bound_b)) config.bound_b = bound_b;
  return gamebush::cli::Run(config, std::cout, std::cerr);
}

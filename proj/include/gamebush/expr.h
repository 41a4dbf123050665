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

#ifndef GAMEBUSH_EXPR_H_
#define GAMEBUSH_EXPR_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace gamebush {

using ParameterMap = std::map<std::string, double, std::less<>>;

// Exact probability as written in a fixture ("1/3", "2").
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / den; }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// "p/q" or an integer literal, reduced; nullopt for anything else.
std::optional<Rational> ParseRational(std::string_view text);

// Arithmetic over numbers and named parameters: + - * / unary minus and
// parentheses. Throws ParseError on malformed input or unknown names.
double EvaluateExpression(std::string_view text, const ParameterMap& params);

}  // namespace gamebush

#endif  // GAMEBUSH_EXPR_H_

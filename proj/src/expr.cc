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

#include "gamebush/expr.h"

#include <cctype>
#include <charconv>
#include <numeric>

#include "gamebush/error.h"

namespace gamebush {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<std::int64_t> ParseInt(std::string_view s) {
  s = Trim(s);
  if (s.empty()) return std::nullopt;
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

class Parser {
 public:
  Parser(std::string_view text, const ParameterMap& params)
      : text_(text), params_(params) {}

  double Run() {
    double v = Sum();
    SkipSpace();
    if (pos_ != text_.size()) Fail("trailing characters");
    return v;
  }

 private:
  double Sum() {
    double v = Product();
    for (;;) {
      SkipSpace();
      if (Accept('+')) {
        v += Product();
      } else if (Accept('-')) {
        v -= Product();
      } else {
        return v;
      }
    }
  }

  double Product() {
    double v = Unary();
    for (;;) {
      SkipSpace();
      if (Accept('*')) {
        v *= Unary();
      } else if (Accept('/')) {
        v /= Unary();
      } else {
        return v;
      }
    }
  }

  double Unary() {
    SkipSpace();
    if (Accept('-')) return -Unary();
    if (Accept('+')) return Unary();
    return Atom();
  }

  double Atom() {
    SkipSpace();
    if (Accept('(')) {
      double v = Sum();
      SkipSpace();
      if (!Accept(')')) Fail("expected ')'");
      return v;
    }
    if (pos_ < text_.size() &&
        (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
         text_[pos_] == '.')) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(text_.data() + pos_,
                                       text_.data() + text_.size(), v);
      if (ec != std::errc()) Fail("bad number");
      pos_ = static_cast<std::size_t>(ptr - text_.data());
      return v;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) Fail("expected a number or a name");
    std::string_view name = text_.substr(start, pos_ - start);
    auto it = params_.find(name);
    if (it == params_.end()) {
      Fail("unknown parameter '" + std::string(name) + "'");
    }
    return it->second;
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool Accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void Fail(const std::string& what) {
    throw ParseError("expression '" + std::string(text_) + "': " + what);
  }

  std::string_view text_;
  const ParameterMap& params_;
  std::size_t pos_ = 0;
};

}  // namespace

std::optional<Rational> ParseRational(std::string_view text) {
  text = Trim(text);
  std::size_t slash = text.find('/');
  std::optional<std::int64_t> num, den;
  if (slash == std::string_view::npos) {
    num = ParseInt(text);
    den = 1;
  } else {
    num = ParseInt(text.substr(0, slash));
    den = ParseInt(text.substr(slash + 1));
  }
  if (!num || !den || *den <= 0) return std::nullopt;
  std::int64_t g = std::gcd(*num, *den);
  if (g == 0) g = 1;
  return Rational{*num / g, *den / g};
}

double EvaluateExpression(std::string_view text, const ParameterMap& params) {
  return Parser(text, params).Run();
}

}  // namespace gamebush

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

#ifndef GAMEBUSH_SIMPLEX_H_
#define GAMEBUSH_SIMPLEX_H_

#include <span>
#include <vector>

namespace gamebush {

// A point of a product of simplices, one vector per factor.
using ProductPoint = std::vector<std::vector<double>>;

// Euclidean nearest point of the probability simplex.
void SimplexProject(std::span<const double> v, std::span<double> out);
std::vector<double> SimplexProject(std::span<const double> v);

// r: factorwise projection of x onto the product of simplices.
ProductPoint Retract(const ProductPoint& x);

// || r(sigma + v) - sigma ||_2 over the whole product.
double NashResidual(const ProductPoint& sigma, const ProductPoint& v);

// max over factors and labels of sigma^a (max_b v^b - v^a).
double CertificateResidual(const ProductPoint& sigma, const ProductPoint& v);

}  // namespace gamebush

#endif  // GAMEBUSH_SIMPLEX_H_

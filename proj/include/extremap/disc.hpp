// Copyright 2026 The extremap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// The commutative case: finite Blaschke products on the closed unit disc and
// weighted composition operators f -> psi * (f o phi) on the disc algebra.

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace extremap {

using cdouble = std::complex<double>;

// B(z) = e^{i phase} prod_j (z - a_j) / (1 - conj(a_j) z).
struct BlaschkeProduct {
  double phase = 0.0;
  std::vector<cdouble> zeros;

  // The map z -> z.
  static BlaschkeProduct identity();

  int degree() const { return static_cast<int>(zeros.size()); }
  // Throws ZeroOutsideDisc unless every |a_j| < 1 - 1e-12, NonFinite on NaN.
  void validate() const;
};

// Throws OutsideDisc when |z| > 1 + 1e-12.
cdouble blaschke_eval(const BlaschkeProduct& b, cdouble z);
// Batch evaluation through the active kernel table.
std::vector<cdouble> blaschke_eval(const BlaschkeProduct& b, std::span<const cdouble> z);

// A boundary function known only through its values, used for multipliers
// that are not inner.
struct SampledFunction {
  std::function<cdouble(cdouble)> f;
  std::string label;
};

using BoundaryFunction = std::variant<BlaschkeProduct, SampledFunction>;

std::vector<cdouble> evaluate(const BoundaryFunction& f, std::span<const cdouble> z);

// Phi(f) = psi * (f o phi).
struct DiscCompositionOp {
  BoundaryFunction multiplier;  // psi
  BoundaryFunction symbol;      // phi

  void validate() const;
};

// e^{2 pi i m / n}, m = 0..n-1.
std::vector<cdouble> boundary_grid(int n);

struct BoundaryCheck {
  bool accepted = false;
  double max_deviation = 0.0;  // max of ||psi| - 1| and ||phi| - 1| on the grid
  double multiplier_deviation = 0.0;
  double symbol_deviation = 0.0;
  double worst_t = 0.0;        // angle in [0, 2 pi)
  cdouble worst_point;
};

// Throws InvalidArgument when grid < 8.
BoundaryCheck boundary_extremality_check(const DiscCompositionOp& op, int grid,
                                         double tol);

// (lambda psi(x), phi(x)): the image of lambda * delta_x under the adjoint.
// Throws NotUnimodular / NotBoundary when |lambda| or |x| is off 1 by > 1e-12.
std::pair<cdouble, cdouble> comp_op_adjoint_on_evaluation(const DiscCompositionOp& op,
                                                          cdouble lambda, cdouble x);

// psi(x) f(phi(x)) for the polynomial f = sum_n coeffs[n] z^n (degree <= 256).
std::vector<cdouble> comp_op_apply(const DiscCompositionOp& op,
                                   std::span<const cdouble> coeffs,
                                   std::span<const cdouble> points);

cdouble polynomial_eval(std::span<const cdouble> coeffs, cdouble z);

}  // namespace extremap

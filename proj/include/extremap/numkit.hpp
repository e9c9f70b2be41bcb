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

// Dense complex linear algebra used by every other module: rank-one
// certification through the SVD, unitary completion, and trace norms.

#include <Eigen/Dense>
#include <complex>
#include <string_view>
#include <vector>

namespace extremap {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-8;

// Top singular triple of a matrix together with the second singular value.
// The factor satisfies M ~= sigma1 * left * right^H. `accepted` records
// whether M is a rank-one operator of norm one at the tolerance used.
struct RankOneFactor {
  CVector left;
  CVector right;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  bool accepted = false;

  CMatrix outer() const { return sigma1 * left * right.adjoint(); }
};

// Throws ZeroMatrix when ||M||_F <= tol. The phase of the factor is fixed by
// making the first entry of `right` with modulus above tol real positive.
RankOneFactor rank_one_factor(const CMatrix& m, double tol = kDefaultTol);

// Unitary V (n x n) with V x = y. If y = lambda x for a unimodular lambda the
// result is lambda * I; otherwise a phase times a Householder reflection.
// Throws NotUnit if either vector is off the unit sphere by more than tol.
CMatrix complete_to_unitary(const CVector& x, const CVector& y, Eigen::Index n,
                            double tol = kDefaultTol);

double trace_norm(const CMatrix& m);
double operator_norm(const CMatrix& m);
Eigen::VectorXd singular_values(const CMatrix& m);

// tr(S A) for square matrices of equal size.
cdouble trace_product(const CMatrix& s, const CMatrix& a);
double frobenius_distance(const CMatrix& a, const CMatrix& b);

// <x, y> = sum_i x_i conj(y_i): linear in the first slot.
cdouble inner(const CVector& x, const CVector& y);

// |<x, y>| >= 1 - tol for unit vectors.
bool parallel(const CVector& x, const CVector& y, double tol);

// Closest matrix with orthonormal columns (polar factor). Requires
// rows >= cols and full column rank.
CMatrix nearest_isometry(const CMatrix& m);

// Throws NonFinite if any entry is NaN or infinite.
void require_finite(const CMatrix& m, std::string_view what);

bool is_unitary(const CMatrix& m, double tol);
bool has_orthonormal_columns(const CMatrix& m, double tol);

}  // namespace extremap

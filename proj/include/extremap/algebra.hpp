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

// Finite-dimensional C*-algebras realised as block direct sums of full
// matrix algebras, and their duals under the trace pairing
// rho(A) = sum_i tr(S_i A_i).

#include <array>
#include <variant>
#include <vector>

#include "extremap/numkit.hpp"

namespace extremap {

struct BlockShape {
  std::vector<int> dims;

  BlockShape() = default;
  explicit BlockShape(std::vector<int> d);

  int count() const { return static_cast<int>(dims.size()); }
  int dim(int b) const { return dims.at(static_cast<std::size_t>(b)); }
  // Total number of matrix units, sum_i n_i^2.
  int unit_count() const;
  // Index of the first matrix unit of block b in the flattened ordering
  // (block-major, then p, then q).
  int unit_offset(int b) const;

  friend bool operator==(const BlockShape&, const BlockShape&) = default;
};

struct BlockElement {
  BlockShape shape;
  std::vector<CMatrix> blocks;

  static BlockElement zero(const BlockShape& shape);
  static BlockElement identity(const BlockShape& shape);
  static BlockElement matrix_unit(const BlockShape& shape, int block, int p,
                                  int q);

  // Throws ShapeMismatch / NonFinite.
  void validate() const;

  BlockElement adjoint() const;
  double operator_norm() const;
};

BlockElement operator+(const BlockElement& a, const BlockElement& b);
BlockElement operator-(const BlockElement& a, const BlockElement& b);
BlockElement operator*(const BlockElement& a, const BlockElement& b);
BlockElement operator*(cdouble s, const BlockElement& a);
// Max over blocks of the Frobenius distance.
double max_block_distance(const BlockElement& a, const BlockElement& b);

struct Functional {
  BlockShape shape;
  std::vector<CMatrix> reps;

  static Functional zero(const BlockShape& shape);
  // A -> <A_b x, y>, representative x y^H on block b.
  static Functional vector_functional(const BlockShape& shape, int block,
                                      const CVector& x, const CVector& y);
  // A -> <A_b x, x>.
  static Functional vector_state(const BlockShape& shape, int block,
                                 const CVector& x);

  void validate() const;
  double norm() const;
};

Functional operator+(const Functional& a, const Functional& b);
Functional operator-(const Functional& a, const Functional& b);
Functional operator*(cdouble s, const Functional& a);

cdouble functional_apply(const Functional& rho, const BlockElement& a);

enum class NonExtremeReason { MultiBlockSupport, RankExceedsOne, NormNotOne };

std::string_view to_string(NonExtremeReason r);

struct Extreme {
  int block_index = -1;
  CVector left;
  CVector right;
};

struct NotExtreme {
  NonExtremeReason reason;
};

using Extremity = std::variant<Extreme, NotExtreme>;

// Extreme points of the dual unit ball: single-block support with a
// rank-one trace-norm-one representative S_b = left * right^H.
Extremity functional_extremity(const Functional& rho, double tol = kDefaultTol);

inline bool is_extreme(const Extremity& e) {
  return std::holds_alternative<Extreme>(e);
}

struct PureStateCheck {
  bool pure = false;
  int block = -1;
  CVector witness;
};

PureStateCheck is_pure_state(const Functional& rho, double tol = kDefaultTol);

// Positive (hermitian within tol, spectrum >= -tol) representatives with
// total trace 1.
bool is_state(const Functional& rho, double tol = kDefaultTol);

struct PolarFactorization {
  int block_index = -1;
  CVector x;
  CMatrix v;
};

// rho(A) = <A_b x, V x> and rho(V A) = <A_b x, x>. Throws NotExtremal.
PolarFactorization polar_factorize(const Functional& rho,
                                   double tol = kDefaultTol);

// omega o eta with eta(A) = E A E. Throws NotProjection when some block of E
// is not an orthogonal projection.
Functional compress_functional(const Functional& omega, const BlockElement& e,
                               double tol = kDefaultTol);

// Dual norm of rho1 - rho2.
double extremal_distance(const Functional& rho1, const Functional& rho2);

// Three unit vectors from omega to the phase-adjusted z with each squared
// step at most 2 - sqrt(2).
std::array<CVector, 3> pure_state_chain(const CVector& omega, const CVector& z,
                                        double tol = kDefaultTol);

}  // namespace extremap

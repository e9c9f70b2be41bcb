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

// Independent oracles and generators shared by the test binaries. The
// oracles avoid the library's own SVD and pairing code: singular values come
// from a Hermitian eigensolver and pairings are explicit loops.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

#include "extremap/extremal.hpp"
#include "extremap/random.hpp"
#include "extremap/structure.hpp"

namespace testsupport {

using namespace extremap;

// Singular values, descending, from the spectrum of the Hermitian dilation
// [[0, M], [M^H, 0]], whose eigenvalues are the +/- singular values.
inline Eigen::VectorXd oracle_singular_values(const CMatrix& m) {
  const Eigen::Index r = m.rows(), c = m.cols();
  CMatrix d = CMatrix::Zero(r + c, r + c);
  d.topRightCorner(r, c) = m;
  d.bottomLeftCorner(c, r) = m.adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(d, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  const Eigen::Index n = std::min(r, c);
  Eigen::VectorXd s(n);
  for (Eigen::Index i = 0; i < n; ++i) s(i) = std::max(0.0, ev(ev.size() - 1 - i));
  return s;
}

inline double oracle_trace_norm(const CMatrix& m) { return oracle_singular_values(m).sum(); }

inline cdouble oracle_pair(const CMatrix& s, const CMatrix& a) {
  cdouble acc = 0.0;
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    for (Eigen::Index j = 0; j < s.cols(); ++j) acc += s(i, j) * a(j, i);
  }
  return acc;
}

inline cdouble oracle_apply(const Functional& rho, const BlockElement& a) {
  cdouble acc = 0.0;
  for (std::size_t b = 0; b < rho.reps.size(); ++b) acc += oracle_pair(rho.reps[b], a.blocks[b]);
  return acc;
}

// <psi(e_pq)_out x, y> collected into the pairing representative.
inline Functional oracle_pullback(const Superoperator& psi, int out_block, const CVector& x,
                                  const CVector& y) {
  Functional rho = Functional::zero(psi.in_shape);
  for (int b = 0; b < psi.in_shape.count(); ++b) {
    const int n = psi.in_shape.dim(b);
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        const CMatrix& img = psi.image(b, p, q).blocks[static_cast<std::size_t>(out_block)];
        cdouble v = 0.0;
        for (Eigen::Index r = 0; r < img.rows(); ++r) {
          for (Eigen::Index c = 0; c < img.cols(); ++c) v += std::conj(y(r)) * img(r, c) * x(c);
        }
        rho.reps[static_cast<std::size_t>(b)](q, p) = v;
      }
    }
  }
  return rho;
}

// Extreme iff exactly one block carries mass and its singular values are (1, 0, ...).
inline bool oracle_extreme(const Functional& rho, double tol) {
  int support = 0;
  bool rank_one_unit = false;
  for (const CMatrix& s : rho.reps) {
    const Eigen::VectorXd sv = oracle_singular_values(s);
    if (sv.sum() <= tol) continue;
    ++support;
    rank_one_unit = std::abs(sv(0) - 1.0) <= tol && (sv.size() < 2 || sv(1) <= tol);
  }
  return support == 1 && rank_one_unit;
}

inline double oracle_unit_residual(const Superoperator& a, const Superoperator& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.images.size(); ++i) {
    for (std::size_t o = 0; o < a.images[i].blocks.size(); ++o) {
      worst = std::max(worst, (a.images[i].blocks[o] - b.images[i].blocks[o]).norm());
    }
  }
  return worst;
}

inline CMatrix transpose_of(const CMatrix& m) { return m.transpose(); }

struct GeneratedBlock {
  std::string form;  // "1", "1t", "2", "2a"
  int k = 0;
  int h = 0;
  BlockMap map;
};

inline GeneratedBlock random_form(Rng& rng, const std::string& form, int k, int h) {
  GeneratedBlock g{form, k, h, {}};
  if (form[0] == '1') {
    g.map = form1_map(random_isometry(rng, k, h), random_isometry(rng, k, h), form == "1t");
  } else {
    g.map = form2_map(random_unit_vector(rng, k), random_isometry(rng, k, h * h).adjoint(), form == "2a");
  }
  return g;
}

// Random (form, k, h) with k <= kmax, h <= hmax, form-2 needing k >= h^2.
inline GeneratedBlock random_form_any(Rng& rng, const std::string& form, int kmax, int hmax) {
  int h = uniform_int(rng, 1, hmax);
  int kmin = form[0] == '1' ? h : h * h;
  while (kmin > kmax) {
    --h;
    kmin = form[0] == '1' ? h : h * h;
  }
  const int k = uniform_int(rng, kmin, kmax);
  return random_form(rng, form, k, h);
}

inline std::string certificate_form(const BlockVerdict& v) {
  if (const auto* c1 = std::get_if<Form1Certificate>(&v)) return c1->transposed ? "1t" : "1";
  if (const auto* c2 = std::get_if<Form2Certificate>(&v)) return c2->adjoint_variant ? "2a" : "2";
  return "rejected";
}

// Random element of the input algebra with total Frobenius norm one, then
// scaled to operator norm one.
inline BlockElement random_norm_one(Rng& rng, const BlockShape& shape) {
  BlockElement a = BlockElement::zero(shape);
  for (int b = 0; b < shape.count(); ++b) {
    a.blocks[static_cast<std::size_t>(b)] = random_gaussian(rng, shape.dim(b), shape.dim(b));
  }
  return (1.0 / a.operator_norm()) * a;
}

// Random unitary element: the extreme points of the unit ball, where the
// induced norm of a contraction is attained most often.
inline BlockElement random_unitary_element(Rng& rng, const BlockShape& shape) {
  BlockElement a = BlockElement::zero(shape);
  for (int b = 0; b < shape.count(); ++b) {
    a.blocks[static_cast<std::size_t>(b)] = random_unitary(rng, shape.dim(b));
  }
  return a;
}

// U_b^H alpha_b(A) U_b with alpha_b identity or transpose on a chosen input
// block: a compression of a Jordan morphism, one output block per entry.
struct JordanCompressionSpec {
  int in_block;
  bool anti;
  int h;
};

inline Superoperator jordan_compression(Rng& rng, const BlockShape& in,
                                        const std::vector<JordanCompressionSpec>& outs) {
  std::vector<int> hs;
  for (const auto& s : outs) hs.push_back(s.h);
  Superoperator psi = Superoperator::zero(in, BlockShape(hs));
  for (std::size_t o = 0; o < outs.size(); ++o) {
    const int k = in.dim(outs[o].in_block);
    const CMatrix u = random_isometry(rng, k, outs[o].h);
    add_route(psi, outs[o].in_block, static_cast<int>(o), form1_map(u, u, outs[o].anti));
  }
  return psi;
}

}  // namespace testsupport

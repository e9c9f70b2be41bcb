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

#include "extremap/algebra.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "extremap/error.hpp"

namespace extremap {

namespace {

void require_same_shape(const BlockShape& a, const BlockShape& b,
                        const char* where) {
  if (!(a == b)) throw Error(ErrorCode::ShapeMismatch, where);
}

void check_blocks(const BlockShape& shape, const std::vector<CMatrix>& blocks,
                  const char* what) {
  if (static_cast<int>(blocks.size()) != shape.count()) {
    throw Error(ErrorCode::ShapeMismatch,
                std::string(what) + ": block count does not match shape");
  }
  for (int b = 0; b < shape.count(); ++b) {
    const CMatrix& m = blocks[static_cast<std::size_t>(b)];
    if (m.rows() != shape.dim(b) || m.cols() != shape.dim(b)) {
      throw Error(ErrorCode::ShapeMismatch,
                  std::string(what) + ": block " + std::to_string(b) +
                      " has the wrong size");
    }
    require_finite(m, what);
  }
}

std::vector<CMatrix> zero_blocks(const BlockShape& shape) {
  std::vector<CMatrix> out;
  out.reserve(shape.dims.size());
  for (int n : shape.dims) out.push_back(CMatrix::Zero(n, n));
  return out;
}

// Blocks whose representative has trace norm above tol.
std::vector<int> support(const Functional& rho, double tol) {
  std::vector<int> out;
  for (int b = 0; b < rho.shape.count(); ++b) {
    if (trace_norm(rho.reps[static_cast<std::size_t>(b)]) > tol) out.push_back(b);
  }
  return out;
}

template <class F>
std::vector<CMatrix> zip_blocks(const std::vector<CMatrix>& a,
                                const std::vector<CMatrix>& b, F f) {
  std::vector<CMatrix> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(f(a[i], b[i]));
  return out;
}

}  // namespace

BlockShape::BlockShape(std::vector<int> d) : dims(std::move(d)) {
  if (dims.empty()) {
    throw Error(ErrorCode::InvalidArgument, "block shape must be nonempty");
  }
  for (int n : dims) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "block sizes must be >= 1");
  }
}

int BlockShape::unit_count() const {
  int total = 0;
  for (int n : dims) total += n * n;
  return total;
}

int BlockShape::unit_offset(int b) const {
  int total = 0;
  for (int i = 0; i < b; ++i) total += dims[static_cast<std::size_t>(i)] * dims[static_cast<std::size_t>(i)];
  return total;
}

BlockElement BlockElement::zero(const BlockShape& shape) {
  return {shape, zero_blocks(shape)};
}

BlockElement BlockElement::identity(const BlockShape& shape) {
  BlockElement e = zero(shape);
  for (auto& m : e.blocks) m.setIdentity();
  return e;
}

BlockElement BlockElement::matrix_unit(const BlockShape& shape, int block,
                                       int p, int q) {
  BlockElement e = zero(shape);
  e.blocks.at(static_cast<std::size_t>(block))(p, q) = 1.0;
  return e;
}

void BlockElement::validate() const { check_blocks(shape, blocks, "BlockElement"); }

BlockElement BlockElement::adjoint() const {
  BlockElement out{shape, {}};
  for (const auto& m : blocks) out.blocks.push_back(m.adjoint());
  return out;
}

double BlockElement::operator_norm() const {
  double best = 0.0;
  for (const auto& m : blocks) best = std::max(best, extremap::operator_norm(m));
  return best;
}

BlockElement operator+(const BlockElement& a, const BlockElement& b) {
  require_same_shape(a.shape, b.shape, "BlockElement sum");
  return {a.shape, zip_blocks(a.blocks, b.blocks,
                              [](const CMatrix& x, const CMatrix& y) -> CMatrix { return x + y; })};
}

BlockElement operator-(const BlockElement& a, const BlockElement& b) {
  require_same_shape(a.shape, b.shape, "BlockElement difference");
  return {a.shape, zip_blocks(a.blocks, b.blocks,
                              [](const CMatrix& x, const CMatrix& y) -> CMatrix { return x - y; })};
}

BlockElement operator*(const BlockElement& a, const BlockElement& b) {
  require_same_shape(a.shape, b.shape, "BlockElement product");
  return {a.shape, zip_blocks(a.blocks, b.blocks,
                              [](const CMatrix& x, const CMatrix& y) -> CMatrix { return x * y; })};
}

BlockElement operator*(cdouble s, const BlockElement& a) {
  BlockElement out = a;
  for (auto& m : out.blocks) m *= s;
  return out;
}

double max_block_distance(const BlockElement& a, const BlockElement& b) {
  require_same_shape(a.shape, b.shape, "max_block_distance");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    worst = std::max(worst, frobenius_distance(a.blocks[i], b.blocks[i]));
  }
  return worst;
}

Functional Functional::zero(const BlockShape& shape) {
  return {shape, zero_blocks(shape)};
}

Functional Functional::vector_functional(const BlockShape& shape, int block,
                                         const CVector& x, const CVector& y) {
  Functional f = zero(shape);
  CMatrix& s = f.reps.at(static_cast<std::size_t>(block));
  if (x.size() != s.rows() || y.size() != s.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "vector length does not match block");
  }
  s = x * y.adjoint();
  return f;
}

Functional Functional::vector_state(const BlockShape& shape, int block,
                                    const CVector& x) {
  return vector_functional(shape, block, x, x);
}

void Functional::validate() const { check_blocks(shape, reps, "Functional"); }

double Functional::norm() const {
  double total = 0.0;
  for (const auto& s : reps) total += trace_norm(s);
  return total;
}

Functional operator+(const Functional& a, const Functional& b) {
  require_same_shape(a.shape, b.shape, "Functional sum");
  return {a.shape, zip_blocks(a.reps, b.reps,
                              [](const CMatrix& x, const CMatrix& y) -> CMatrix { return x + y; })};
}

Functional operator-(const Functional& a, const Functional& b) {
  require_same_shape(a.shape, b.shape, "Functional difference");
  return {a.shape, zip_blocks(a.reps, b.reps,
                              [](const CMatrix& x, const CMatrix& y) -> CMatrix { return x - y; })};
}

Functional operator*(cdouble s, const Functional& a) {
  Functional out = a;
  for (auto& m : out.reps) m *= s;
  return out;
}

cdouble functional_apply(const Functional& rho, const BlockElement& a) {
  require_same_shape(rho.shape, a.shape, "functional_apply");
  cdouble total = 0.0;
  for (std::size_t i = 0; i < rho.reps.size(); ++i) {
    total += trace_product(rho.reps[i], a.blocks[i]);
  }
  return total;
}

std::string_view to_string(NonExtremeReason r) {
  switch (r) {
    case NonExtremeReason::MultiBlockSupport: return "MultiBlockSupport";
    case NonExtremeReason::RankExceedsOne: return "RankExceedsOne";
    case NonExtremeReason::NormNotOne: return "NormNotOne";
  }
  return "Unknown";
}

Extremity functional_extremity(const Functional& rho, double tol) {
  rho.validate();
  const std::vector<int> blocks = support(rho, tol);
  if (blocks.size() > 1) return NotExtreme{NonExtremeReason::MultiBlockSupport};
  if (blocks.empty()) return NotExtreme{NonExtremeReason::NormNotOne};

  const int b = blocks.front();
  const RankOneFactor f = rank_one_factor(rho.reps[static_cast<std::size_t>(b)], tol);
  if (f.sigma2 > tol) return NotExtreme{NonExtremeReason::RankExceedsOne};
  if (std::abs(f.sigma1 - 1.0) > tol) return NotExtreme{NonExtremeReason::NormNotOne};
  return Extreme{b, f.left, f.right};
}

namespace {

// Hermitian-within-tol check followed by the spectrum of the hermitian part.
bool positive_within(const CMatrix& s, double tol, Eigen::VectorXd* evals,
                     CMatrix* evecs) {
  if ((s - s.adjoint()).norm() > tol) return false;
  const CMatrix herm = 0.5 * (s + s.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(herm);
  if (eig.eigenvalues().minCoeff() < -tol) return false;
  if (evals) *evals = eig.eigenvalues();
  if (evecs) *evecs = eig.eigenvectors();
  return true;
}

}  // namespace

PureStateCheck is_pure_state(const Functional& rho, double tol) {
  rho.validate();
  const std::vector<int> blocks = support(rho, tol);
  if (blocks.size() != 1) return {};
  const int b = blocks.front();
  const CMatrix& s = rho.reps[static_cast<std::size_t>(b)];

  Eigen::VectorXd evals;
  CMatrix evecs;
  if (!positive_within(s, tol, &evals, &evecs)) return {};
  if (std::abs(s.trace() - cdouble(1.0)) > tol) return {};
  // Eigenvalues come back ascending.
  const Eigen::Index n = evals.size();
  if (n > 1 && evals(n - 2) > tol) return {};

  CVector x = evecs.col(n - 1);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double mod = std::abs(x(i));
    if (mod > tol) {
      x *= std::conj(x(i)) / mod;
      break;
    }
  }
  return {true, b, x};
}

bool is_state(const Functional& rho, double tol) {
  rho.validate();
  cdouble total = 0.0;
  for (const auto& s : rho.reps) {
    if (!positive_within(s, tol, nullptr, nullptr)) return false;
    total += s.trace();
  }
  return std::abs(total - cdouble(1.0)) <= tol;
}

PolarFactorization polar_factorize(const Functional& rho, double tol) {
  const Extremity e = functional_extremity(rho, tol);
  const Extreme* ext = std::get_if<Extreme>(&e);
  if (!ext) {
    throw Error(ErrorCode::NotExtremal,
                std::string("functional is not extreme: ") +
                    std::string(to_string(std::get<NotExtreme>(e).reason)));
  }
  // S_b = left right^H, so rho(A) = right^H A left = <A left, right>.
  const CVector x = ext->left;
  const Eigen::Index n = x.size();
  PolarFactorization out;
  out.block_index = ext->block_index;
  out.x = x;
  out.v = complete_to_unitary(x, ext->right, n, std::max(tol, 1e-10));
  return out;
}

Functional compress_functional(const Functional& omega, const BlockElement& e,
                               double tol) {
  omega.validate();
  e.validate();
  require_same_shape(omega.shape, e.shape, "compress_functional");
  Functional out{omega.shape, {}};
  for (std::size_t i = 0; i < e.blocks.size(); ++i) {
    const CMatrix& p = e.blocks[i];
    if ((p * p - p).norm() > tol || (p - p.adjoint()).norm() > tol) {
      throw Error(ErrorCode::NotProjection,
                  "block " + std::to_string(i) + " is not an orthogonal projection");
    }
    out.reps.push_back(p * omega.reps[i] * p);
  }
  return out;
}

double extremal_distance(const Functional& rho1, const Functional& rho2) {
  require_same_shape(rho1.shape, rho2.shape, "extremal_distance");
  return (rho1 - rho2).norm();
}

std::array<CVector, 3> pure_state_chain(const CVector& omega, const CVector& z,
                                        double tol) {
  if (omega.size() != z.size()) {
    throw Error(ErrorCode::ShapeMismatch, "chain endpoints differ in length");
  }
  if (std::abs(omega.norm() - 1.0) > tol || std::abs(z.norm() - 1.0) > tol) {
    throw Error(ErrorCode::NotUnit, "chain endpoints must be unit vectors");
  }
  const cdouble overlap = inner(z, omega);
  const double mod = std::abs(overlap);
  const cdouble phase = mod > 0.0 ? std::conj(overlap) / mod : cdouble(1.0);
  const CVector target = phase * z;

  CVector residual = target - inner(target, omega) * omega;
  const double rn = residual.norm();
  if (rn <= 1e-12) return {omega, omega, target};
  if (omega.size() < 2) {
    throw Error(ErrorCode::DimTooSmall, "non-parallel vectors need dimension >= 2");
  }
  const CVector x = residual / rn;
  const CVector mid = (omega + x) / std::numbers::sqrt2;
  return {omega, mid, target};
}

}  // namespace extremap

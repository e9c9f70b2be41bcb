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

#include "extremap/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "extremap/error.hpp"
#include "extremap/kernels.hpp"

namespace extremap {

namespace {

std::span<const cdouble> flat(const CMatrix& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

std::span<const cdouble> flat(const CVector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace

void require_finite(const CMatrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::NonFinite, std::string(what) + " has non-finite entries");
  }
}

Eigen::VectorXd singular_values(const CMatrix& m) {
  if (m.size() == 0) return {};
  return Eigen::JacobiSVD<CMatrix>(m).singularValues();
}

double trace_norm(const CMatrix& m) { return singular_values(m).sum(); }

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  // The top Gram eigenvalue carries full relative precision; the small ones do not.
  const CMatrix g = m.rows() <= m.cols() ? CMatrix(m * m.adjoint()) : CMatrix(m.adjoint() * m);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

RankOneFactor rank_one_factor(const CMatrix& m, double tol) {
  require_finite(m, "rank_one_factor input");
  if (m.size() == 0 || m.norm() <= tol) {
    throw Error(ErrorCode::ZeroMatrix, "matrix is zero at tolerance");
  }
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();

  RankOneFactor f;
  f.sigma1 = s(0);
  f.sigma2 = s.size() > 1 ? s(1) : 0.0;
  f.left = svd.matrixU().col(0);
  f.right = svd.matrixV().col(0);

  for (Eigen::Index i = 0; i < f.right.size(); ++i) {
    const double mod = std::abs(f.right(i));
    if (mod > tol) {
      const cdouble gauge = std::conj(f.right(i)) / mod;
      f.right *= gauge;
      f.left *= gauge;
      break;
    }
  }
  f.accepted = std::abs(f.sigma1 - 1.0) <= tol && f.sigma2 <= tol;
  return f;
}

CMatrix complete_to_unitary(const CVector& x, const CVector& y, Eigen::Index n,
                            double tol) {
  if (x.size() != n || y.size() != n || n < 1) {
    throw Error(ErrorCode::ShapeMismatch, "vectors must both have length n");
  }
  if (std::abs(x.norm() - 1.0) > tol || std::abs(y.norm() - 1.0) > tol) {
    throw Error(ErrorCode::NotUnit, "complete_to_unitary needs unit vectors");
  }
  // Rotate y by a phase so that <x, phase*y> is real and nonnegative; the
  // Householder reflection through x - phase*y then swaps the two.
  const cdouble overlap = inner(x, y);
  const double mod = std::abs(overlap);
  const cdouble phase = mod > 0.0 ? overlap / mod : cdouble(1.0);
  const CVector target = phase * y;
  const CVector diff = x - target;
  const double dn = diff.norm();
  const cdouble undo = std::conj(phase);
  if (dn <= 1e-14) {
    return undo * CMatrix::Identity(n, n);
  }
  const CVector w = diff / dn;
  CMatrix h = CMatrix::Identity(n, n) - 2.0 * w * w.adjoint();
  return undo * h;
}

cdouble trace_product(const CMatrix& s, const CMatrix& a) {
  if (s.rows() != a.cols() || s.cols() != a.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "trace_product size mismatch");
  }
  const CMatrix at = a.transpose();
  return kernels::dotu(flat(s), flat(at));
}

double frobenius_distance(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "frobenius_distance size mismatch");
  }
  return std::sqrt(kernels::dist_sq(flat(a), flat(b)));
}

cdouble inner(const CVector& x, const CVector& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::ShapeMismatch, "inner product length mismatch");
  }
  return kernels::dotc(flat(y), flat(x));
}

bool parallel(const CVector& x, const CVector& y, double tol) {
  return std::abs(inner(x, y)) >= 1.0 - tol;
}

CMatrix nearest_isometry(const CMatrix& m) {
  if (m.rows() < m.cols()) {
    throw Error(ErrorCode::InvalidArgument, "nearest_isometry needs rows >= cols");
  }
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

bool is_unitary(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return has_orthonormal_columns(m, tol);
}

bool has_orthonormal_columns(const CMatrix& m, double tol) {
  const CMatrix gram = m.adjoint() * m;
  return (gram - CMatrix::Identity(m.cols(), m.cols())).norm() <= tol;
}

}  // namespace extremap

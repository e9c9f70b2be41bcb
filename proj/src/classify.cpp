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

#include <cmath>
#include <limits>
#include <string>

#include "extremap/error.hpp"
#include "extremap/extremal.hpp"

namespace extremap {

namespace {

constexpr double kCertTol = 1e-10;

CVector normalized(const CVector& v) {
  const double n = v.norm();
  return n > 0.0 ? CVector(v / n) : v;
}

// Closest matrix with orthonormal rows.
CMatrix nearest_coisometry(const CMatrix& m) {
  return nearest_isometry(m.adjoint()).adjoint();
}

// Fills the witness by an ordered search and records the structural reason.
SingleBlockResult reject(const BlockMap& map, RejectReason reason,
                         std::string detail, double tol) {
  Witness w = search_witness(map, tol);
  return {Rejected{reason, std::move(w), std::move(detail)},
          std::numeric_limits<double>::infinity()};
}

SingleBlockResult reject_at(const BlockMap& map, RejectReason reason,
                            std::string detail, const CVector& x,
                            const CVector& y, double tol) {
  const Functional rho{BlockShape({map.k}), {pullback(map, x, y)}};
  Witness w{0, x, y, extremity_defect(rho),
            !is_extreme(functional_extremity(rho, tol))};
  if (!w.replays) return reject(map, reason, std::move(detail), tol);
  return {Rejected{reason, std::move(w), std::move(detail)},
          std::numeric_limits<double>::infinity()};
}

SingleBlockResult finalize(const BlockMap& map, BlockCertificate cert,
                           double tol) {
  const BlockMap rebuilt = reconstruct(cert, map.k, map.h);
  const double residual = max_unit_residual(map, rebuilt);
  if (residual > 10.0 * tol) {
    return reject(map, RejectReason::ResidualTooLarge,
                  "certificate residual " + std::to_string(residual), tol);
  }
  return {std::visit([](auto&& c) -> BlockVerdict { return std::move(c); }, std::move(cert)),
          residual};
}

bool orthonormal_columns_within(const CMatrix& m, double tol) {
  return m.rows() >= m.cols() && has_orthonormal_columns(m, tol);
}

}  // namespace

int input_block_of(const BlockCertificate& cert) {
  return std::visit([](const auto& c) { return c.input_block; }, cert);
}

std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::NotRankOneUnit: return "NotRankOneUnit";
    case RejectReason::StructureMismatch: return "StructureMismatch";
    case RejectReason::PhaseDefect: return "PhaseDefect";
    case RejectReason::FrameNotOrthonormal: return "FrameNotOrthonormal";
    case RejectReason::DimensionObstruction: return "DimensionObstruction";
    case RejectReason::ResidualTooLarge: return "ResidualTooLarge";
    case RejectReason::MultiInputSupport: return "MultiInputSupport";
  }
  return "Unknown";
}

AdjointImages adjoint_images(const BlockMap& map) {
  map.validate();
  AdjointImages out;
  out.k = map.k;
  out.h = map.h;
  out.s.assign(static_cast<std::size_t>(map.h * map.h), CMatrix::Zero(map.k, map.k));
  for (int p = 0; p < map.k; ++p) {
    for (int q = 0; q < map.k; ++q) {
      const CMatrix& img = map.image(p, q);
      for (int i = 0; i < map.h; ++i) {
        for (int j = 0; j < map.h; ++j) {
          out.s[static_cast<std::size_t>(i * map.h + j)](q, p) = img(j, i);
        }
      }
    }
  }
  return out;
}

AdjointImages adjoint_images(const Superoperator& psi, int out_block,
                             double tol) {
  psi.validate();
  std::vector<int> contributing;
  for (int b = 0; b < psi.in_shape.count(); ++b) {
    const int n = psi.in_shape.dim(b);
    double worst = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        worst = std::max(worst, psi.image(b, p, q)
                                    .blocks[static_cast<std::size_t>(out_block)]
                                    .norm());
      }
    }
    if (worst > tol) contributing.push_back(b);
  }
  if (contributing.size() > 1) {
    throw MultiInputSupportError(out_block, contributing);
  }
  const int in_block = contributing.empty() ? 0 : contributing.front();
  AdjointImages out = adjoint_images(restrict_map(psi, in_block, out_block));
  out.input_block = in_block;
  return out;
}

SingleBlockResult classify_single_block(const BlockMap& map, double tol,
                                        int input_block) {
  const AdjointImages ai = adjoint_images(map);
  const int h = map.h;
  const int k = map.k;

  // (1) every matrix-unit functional must pull back to a rank-one unit.
  std::vector<RankOneFactor> f(static_cast<std::size_t>(h * h));
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < h; ++j) {
      const CMatrix& s = ai.at(i, j);
      RankOneFactor& out = f[static_cast<std::size_t>(i * h + j)];
      if (s.norm() > tol) out = rank_one_factor(s, tol);
      if (!out.accepted) {
        return reject_at(map, RejectReason::NotRankOneUnit,
                         "S(" + std::to_string(i) + "," + std::to_string(j) +
                             ") is not a rank-one unit",
                         CVector::Unit(h, i), CVector::Unit(h, j), tol);
      }
    }
  }
  auto factor = [&](int i, int j) -> const RankOneFactor& {
    return f[static_cast<std::size_t>(i * h + j)];
  };

  // (2) a single output dimension: both forms coincide, report Form 1.
  if (h == 1) {
    Form1Certificate c;
    c.input_block = input_block;
    c.u = factor(0, 0).right;
    c.v = normalized(ai.at(0, 0) * factor(0, 0).right);
    return finalize(map, std::move(c), tol);
  }

  // (3) shared left or right factor along row i = 0 and column j = 0.
  const RankOneFactor& f00 = factor(0, 0);
  const bool row_left = parallel(f00.left, factor(0, 1).left, tol);
  const bool row_right = parallel(f00.right, factor(0, 1).right, tol);
  const bool col_left = parallel(f00.left, factor(1, 0).left, tol);
  const bool col_right = parallel(f00.right, factor(1, 0).right, tol);
  if (row_left == row_right || col_left == col_right) {
    return reject(map, RejectReason::StructureMismatch,
                  "adjacent matrix-unit images violate the parallel/orthogonal "
                  "dichotomy",
                  tol);
  }

  if (row_left && col_right) {
    // S_ij = v_i u_j^H
    CMatrix u(k, h), v(k, h);
    const CVector u0 = f00.right;
    for (int i = 0; i < h; ++i) v.col(i) = normalized(ai.at(i, 0) * u0);
    for (int j = 0; j < h; ++j) u.col(j) = normalized(ai.at(0, j).adjoint() * v.col(0));
    if (!orthonormal_columns_within(u, 10 * tol) || !orthonormal_columns_within(v, 10 * tol)) {
      return reject(map, RejectReason::StructureMismatch,
                    "recovered Form 1 factors are not orthonormal", tol);
    }
    for (int i = 1; i < h; ++i) {
      for (int j = 1; j < h; ++j) {
        const cdouble eps = inner(ai.at(i, j) * u.col(j), v.col(i));
        if (std::abs(eps - 1.0) > 10 * tol) {
          CVector x = CVector::Zero(h), y = CVector::Zero(h);
          x(0) = x(i) = 1.0 / std::sqrt(2.0);
          y(0) = y(j) = 1.0 / std::sqrt(2.0);
          return reject_at(map, RejectReason::PhaseDefect,
                           "non-constant Schur phases at (" + std::to_string(i) +
                               "," + std::to_string(j) + ")",
                           x, y, tol);
        }
      }
    }
    Form1Certificate c{input_block, nearest_isometry(u), nearest_isometry(v), false};
    return finalize(map, std::move(c), tol);
  }

  if (row_right && col_left) {
    // S_ij = a_j b_i^H with a_j = conj(u_j), b_i = conj(v_i)
    CMatrix a(k, h), b(k, h);
    const CVector b0 = f00.right;
    for (int j = 0; j < h; ++j) a.col(j) = normalized(ai.at(0, j) * b0);
    for (int i = 0; i < h; ++i) b.col(i) = normalized(ai.at(i, 0).adjoint() * a.col(0));
    if (!orthonormal_columns_within(a, 10 * tol) || !orthonormal_columns_within(b, 10 * tol)) {
      return reject(map, RejectReason::StructureMismatch,
                    "recovered transposed Form 1 factors are not orthonormal", tol);
    }
    for (int i = 1; i < h; ++i) {
      for (int j = 1; j < h; ++j) {
        const cdouble eps = inner(ai.at(i, j) * b.col(i), a.col(j));
        if (std::abs(eps - 1.0) > 10 * tol) {
          CVector x = CVector::Zero(h), y = CVector::Zero(h);
          x(0) = x(i) = 1.0 / std::sqrt(2.0);
          y(0) = y(j) = 1.0 / std::sqrt(2.0);
          return reject_at(map, RejectReason::PhaseDefect,
                           "non-constant Schur phases at (" + std::to_string(i) +
                               "," + std::to_string(j) + ")",
                           x, y, tol);
        }
      }
    }
    Form1Certificate c{input_block, nearest_isometry(a.conjugate()),
                       nearest_isometry(b.conjugate()), true};
    return finalize(map, std::move(c), tol);
  }

  // Case 2: one side of every factor is a common vector w.
  if (k < h * h) {
    return reject(map, RejectReason::DimensionObstruction,
                  "rank-one-range form needs k >= h^2 (k=" + std::to_string(k) +
                      ", h=" + std::to_string(h) + ")",
                  tol);
  }
  const bool adjoint_variant = row_right && col_right;
  const CVector w = adjoint_variant ? f00.right : f00.left;
  CMatrix frame(h * h, k);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < h; ++j) {
      if (adjoint_variant) {
        // S_ij = conj(f_ij) w^H
        frame.row(i * h + j) = (ai.at(i, j) * w).adjoint();
      } else {
        // S_ij = w f_ji^T
        frame.row(j * h + i) = w.adjoint() * ai.at(i, j);
      }
    }
  }
  const CMatrix gram = frame * frame.adjoint();
  if ((gram - CMatrix::Identity(h * h, h * h)).norm() > 10 * tol) {
    return reject(map, RejectReason::FrameNotOrthonormal,
                  "recovered frame rows are not orthonormal", tol);
  }
  Form2Certificate c{input_block, normalized(w), nearest_coisometry(frame),
                     adjoint_variant};
  return finalize(map, std::move(c), tol);
}

BlockMap form1_map(const CMatrix& u, const CMatrix& v, bool transposed) {
  const int k = static_cast<int>(u.rows());
  const int h = static_cast<int>(u.cols());
  BlockMap m = BlockMap::zero(k, h);
  for (int p = 0; p < k; ++p) {
    for (int q = 0; q < k; ++q) {
      // U^H e_pq V = (U^H e_p)(e_q^T V); the transpose swaps p and q.
      const int r = transposed ? q : p;
      const int c = transposed ? p : q;
      m.image(p, q) = u.row(r).adjoint() * v.row(c);
    }
  }
  return m;
}

BlockMap form2_map(const CVector& w, const CMatrix& frame, bool adjoint_variant) {
  const int k = static_cast<int>(w.size());
  const int h = static_cast<int>(std::lround(std::sqrt(static_cast<double>(frame.rows()))));
  BlockMap m = BlockMap::zero(k, h);
  auto mat = [&](int col) {
    CMatrix out(h, h);
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < h; ++c) out(r, c) = frame(r * h + c, col);
    }
    return out;
  };
  for (int p = 0; p < k; ++p) {
    for (int q = 0; q < k; ++q) {
      if (adjoint_variant) {
        // (mat(F e_qp w))^H = conj(w_p) mat(F e_q)^H
        m.image(p, q) = std::conj(w(p)) * mat(q).adjoint();
      } else {
        m.image(p, q) = w(q) * mat(p);
      }
    }
  }
  return m;
}

namespace {

void check_form1(const CMatrix& u, const CMatrix& v, double tol, ErrorCode code) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.cols() < 1 ||
      u.rows() < u.cols()) {
    throw Error(code, "U and V must both be k x h with k >= h >= 1");
  }
  require_finite(u, "U");
  require_finite(v, "V");
  if (!has_orthonormal_columns(u, tol) || !has_orthonormal_columns(v, tol)) {
    throw Error(code, "U and V must have orthonormal columns");
  }
}

// Certificates report every violation as InvalidCertificate; generators
// distinguish a bad w (NotUnit) from a bad frame (InvalidFrame).
void check_form2(const CVector& w, const CMatrix& frame, double tol,
                 bool certificate) {
  const ErrorCode unit_code =
      certificate ? ErrorCode::InvalidCertificate : ErrorCode::NotUnit;
  const ErrorCode frame_code =
      certificate ? ErrorCode::InvalidCertificate : ErrorCode::InvalidFrame;
  require_finite(w, "w");
  require_finite(frame, "frame");
  if (w.size() < 1 || std::abs(w.norm() - 1.0) > tol) {
    throw Error(unit_code, "w must be a unit vector");
  }
  const auto rows = frame.rows();
  const auto h = std::lround(std::sqrt(static_cast<double>(rows)));
  if (h < 1 || h * h != rows || frame.cols() != w.size()) {
    throw Error(frame_code, "frame must be h^2 x k");
  }
  if (rows > frame.cols()) throw Error(frame_code, "frame needs k >= h^2");
  if ((frame * frame.adjoint() - CMatrix::Identity(rows, rows)).norm() > tol) {
    throw Error(frame_code, "frame rows must be orthonormal");
  }
}

}  // namespace

BlockMap reconstruct(const BlockCertificate& cert, int k, int h) {
  if (const auto* c1 = std::get_if<Form1Certificate>(&cert)) {
    check_form1(c1->u, c1->v, kCertTol, ErrorCode::InvalidCertificate);
    if (c1->u.rows() != k || c1->u.cols() != h) {
      throw Error(ErrorCode::InvalidCertificate, "certificate dims differ from k, h");
    }
    return form1_map(c1->u, c1->v, c1->transposed);
  }
  const auto& c2 = std::get<Form2Certificate>(cert);
  check_form2(c2.w, c2.frame, kCertTol, true);
  if (c2.w.size() != k || c2.frame.rows() != h * h) {
    throw Error(ErrorCode::InvalidCertificate, "certificate dims differ from k, h");
  }
  return form2_map(c2.w, c2.frame, c2.adjoint_variant);
}

Superoperator build_form1(const CMatrix& u, const CMatrix& v, bool transposed,
                          double tol) {
  check_form1(u, v, tol, ErrorCode::InvalidIsometry);
  return to_superoperator(form1_map(u, v, transposed));
}

Superoperator build_form2(const CVector& w, const CMatrix& frame,
                          bool adjoint_variant, double tol) {
  check_form2(w, frame, tol, false);
  return to_superoperator(form2_map(w, frame, adjoint_variant));
}

Superoperator schur_counterexample(int h) {
  if (h < 2) throw Error(ErrorCode::DimTooSmall, "Schur fixture needs h >= 2");
  BlockMap m = BlockMap::zero(h, h);
  for (int p = 0; p < h; ++p) {
    for (int q = 0; q < h; ++q) {
      m.image(p, q)(p, q) = (p == 1 && q == 1) ? -1.0 : 1.0;
    }
  }
  return to_superoperator(m);
}

}  // namespace extremap

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

// Classification of maps M_k -> M_h whose adjoint sends extreme points of
// the dual ball to extreme points. Accepted maps come with a structural
// certificate; rejected maps come with a functional that replays as a
// counterexample.
//
// Conventions. For the output functional B -> B_ji (representative
// e_i e_j^T) the pulled-back representative is S_ij, with
// (S_ij)_qp = <psi(e_pq) e_i, e_j>. The functional B -> <B x, y> pulls back
// to sum_ij x_i conj(y_j) S_ij. Canonical forms:
//
//   Form 1:            psi(T) = U^H T V        S_ij = v_i u_j^H
//   Form 1 transposed: psi(T) = U^H T^t V      S_ij = conj(u_j) v_i^T
//   Form 2:            psi(T) = mat(F T w)     S_ij = w f_ji^T
//   Form 2 adjoint:    psi(T) = mat(F T^H w)^H S_ij = conj(f_ij) w^H
//
// where mat(x)_rc = x[r h + c] and f_rc is row (r h + c) of the frame F.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "extremap/superoperator.hpp"

namespace extremap {

struct Form1Certificate {
  int input_block = 0;
  CMatrix u;  // k x h, orthonormal columns
  CMatrix v;  // k x h, orthonormal columns
  bool transposed = false;
};

struct Form2Certificate {
  int input_block = 0;
  CVector w;     // unit vector in C^k
  CMatrix frame; // h^2 x k, orthonormal rows
  bool adjoint_variant = false;
};

using BlockCertificate = std::variant<Form1Certificate, Form2Certificate>;

int input_block_of(const BlockCertificate& cert);

enum class RejectReason {
  NotRankOneUnit,
  StructureMismatch,
  PhaseDefect,
  FrameNotOrthonormal,
  DimensionObstruction,
  ResidualTooLarge,
  MultiInputSupport,
};

std::string_view to_string(RejectReason r);

// The output functional B -> <B_out x, y>. `replays` is true when its
// pull-back fails functional_extremity at the tolerance used for the search;
// `defect` measures how far the pull-back is from an extreme point.
struct Witness {
  int out_block = 0;
  CVector x;
  CVector y;
  double defect = 0.0;
  bool replays = false;
};

struct Rejected {
  RejectReason reason;
  Witness witness;
  std::string detail;
};

using BlockVerdict = std::variant<Form1Certificate, Form2Certificate, Rejected>;

inline bool is_rejected(const BlockVerdict& v) {
  return std::holds_alternative<Rejected>(v);
}

struct SingleBlockResult {
  BlockVerdict verdict;
  // Max matrix-unit residual of the reconstructed certificate; infinity when
  // no certificate was assembled.
  double residual;
};

// S_ij for all output indices, h*h of them, stored at i * h + j.
struct AdjointImages {
  int input_block = 0;
  int k = 0;
  int h = 0;
  std::vector<CMatrix> s;

  const CMatrix& at(int i, int j) const {
    return s[static_cast<std::size_t>(i * h + j)];
  }
};

AdjointImages adjoint_images(const BlockMap& map);
// Detects the unique contributing input block first. Throws
// MultiInputSupportError when two or more contribute above tol; a map that is
// zero on `out_block` yields the zero images over input block 0.
AdjointImages adjoint_images(const Superoperator& psi, int out_block,
                             double tol = kDefaultTol);

// Extremity defect of a functional: off-support mass plus deviation of the
// dominant block from a rank-one unit.
double extremity_defect(const Functional& rho);

SingleBlockResult classify_single_block(const BlockMap& map,
                                        double tol = kDefaultTol,
                                        int input_block = 0);

// Canonical-form images. Throws InvalidCertificate if the isometry or frame
// invariants fail at 1e-10.
BlockMap reconstruct(const BlockCertificate& cert, int k, int h);

BlockMap form1_map(const CMatrix& u, const CMatrix& v, bool transposed);
BlockMap form2_map(const CVector& w, const CMatrix& frame, bool adjoint_variant);

// Throw InvalidIsometry / InvalidFrame / NotUnit at tolerance `tol`.
Superoperator build_form1(const CMatrix& u, const CMatrix& v, bool transposed,
                          double tol = 1e-10);
Superoperator build_form2(const CVector& w, const CMatrix& frame,
                          bool adjoint_variant, double tol = 1e-10);

// Schur multiplication on M_h by eps with eps_11 = -1 (0-based) and 1
// elsewhere. Throws DimTooSmall for h < 2.
Superoperator schur_counterexample(int h);

// Random unit pairs per output block; the first pair whose pull-back is not
// extreme, or nothing.
std::optional<Witness> find_witness(const Superoperator& psi, int samples,
                                    std::uint64_t seed,
                                    double tol = kDefaultTol);

// Ordered search: matrix units, then two-index combinations
// (e_a + w e_b)/sqrt(2) with w in {1, i, -1, -i}, then `random_samples`
// random pairs. Always returns a witness; `replays` is false when none
// failed, in which case the candidate with the largest defect is returned.
Witness search_witness(const Superoperator& psi, int out_block, double tol,
                       std::uint64_t seed = 0, int random_samples = 256);
Witness search_witness(const BlockMap& map, double tol, std::uint64_t seed = 0,
                       int random_samples = 256);

// Pulls the witness back through psi and reruns functional_extremity.
bool replay_witness(const Superoperator& psi, const Witness& w, double tol);

}  // namespace extremap

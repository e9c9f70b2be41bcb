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

// Jordan *-morphism checks, the global decomposition of extremal-preserving
// maps into a degenerate part (rank-one-range blocks) and a non-degenerate
// part (a rotated compression of a Jordan map), and the pure-state-preserving
// special case.

#include <cstdint>
#include <optional>
#include <vector>

#include "extremap/extremal.hpp"

namespace extremap {

enum class BlockLabel { Homomorphism, Antihomomorphism, Both, Neither };

std::string_view to_string(BlockLabel l);

struct JordanReport {
  bool is_jordan = false;
  bool star_preserving = false;
  bool jordan_identity = false;
  bool unit_is_projection = false;
  bool compressed_by_unit = false;
  BlockElement unit_projection;  // psi(I)
  std::vector<BlockLabel> block_labels;
  double max_jordan_defect = 0.0;
};

// Checks *-preservation and psi(AB + BA) = psi(A)psi(B) + psi(B)psi(A) on
// all pairs of matrix units plus `trials` random pairs, and labels every
// output block. is_jordan additionally requires psi(I) to be a projection
// compressing every image and no block labelled Neither.
JordanReport is_jordan_morphism(const Superoperator& phi, int trials,
                                std::uint64_t seed, double tol = kDefaultTol);

struct HomAntiSplit {
  std::vector<int> hom;   // includes blocks labelled Both
  std::vector<int> anti;
};

HomAntiSplit split_hom_antihom(const JordanReport& report);
// Runs is_jordan_morphism first; throws NotJordan if it fails.
HomAntiSplit split_hom_antihom(const Superoperator& phi, double tol = kDefaultTol);

// Data of one output block in the non-degenerate part. The block lives in
// the summand M_k of R; with W = V U^H, E1 = W^H W = U U^H and
// E2 = W W^H = V V^H, the output block is psi_b(A) = V^H (E2 W phi(A) E2) V.
struct NondegenerateBlock {
  int out_block = 0;
  int in_block = 0;
  bool anti = false;
  CMatrix w;
  CMatrix e1;
  CMatrix e2;
  CMatrix embedding;  // V
};

struct GlobalCertificate {
  std::vector<int> e_blocks;           // non-degenerate output blocks
  std::vector<int> degenerate_blocks;  // complement
  std::vector<BlockCertificate> certificates;  // one per output block
  BlockShape target_shape;             // R = sum over e_blocks of M_k
  Superoperator phi;                   // Jordan map A -> R
  std::vector<NondegenerateBlock> nondegenerate;  // parallel to e_blocks
  double residual = 0.0;
};

struct GlobalClassification {
  bool accepted = false;
  std::vector<BlockVerdict> verdicts;  // one per output block
  std::vector<double> residuals;
  std::optional<GlobalCertificate> certificate;
  double residual = 0.0;
};

// Throws AssemblyError if a recovered (anti)representation fails its
// multiplicativity or density check.
GlobalClassification classify_extremal_global(const Superoperator& psi,
                                              double tol = kDefaultTol,
                                              std::uint64_t seed = 0);

// psi(A) as reconstructed from the certificate, for every input matrix unit.
Superoperator reconstruct_global(const GlobalCertificate& cert,
                                 const BlockShape& in_shape,
                                 const BlockShape& out_shape);

enum class PureRejectReason { DegenerateBlockPresent, RotationNontrivial, NotExtremal };

std::string_view to_string(PureRejectReason r);

struct PureWitness {
  int out_block = 0;
  CVector x;  // vector state B -> <B_out x, x> whose pull-back is not pure
};

struct PureCertificate {
  BlockShape target_shape;
  Superoperator phi;                     // Jordan map A -> R
  std::vector<CMatrix> range_projection; // E on each summand of R
  std::vector<CMatrix> embedding;        // U_b, psi_b(A) = U_b^H E phi(A) E U_b
  BlockElement unit;                     // psi(I)
  double residual = 0.0;
};

struct PureClassification {
  bool accepted = false;
  std::optional<PureCertificate> certificate;
  std::optional<PureRejectReason> reason;
  std::optional<PureWitness> witness;
  GlobalClassification global;
};

PureClassification classify_pure_preserving(const Superoperator& psi,
                                            double tol = kDefaultTol,
                                            std::uint64_t seed = 0);

struct PureSampleResult {
  bool preserved = true;
  std::optional<PureWitness> witness;
};

// Random pure states (uniform block, Haar vector) pulled back through psi
// and tested with is_pure_state.
PureSampleResult check_pure_preserving_sampled(const Superoperator& psi,
                                               int samples, std::uint64_t seed,
                                               double tol = kDefaultTol);

}  // namespace extremap

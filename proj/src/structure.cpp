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

#include "extremap/structure.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "extremap/error.hpp"
#include "extremap/random.hpp"

namespace extremap {

namespace {

struct UnitIndex {
  int block;
  int p;
  int q;
};

std::vector<UnitIndex> enumerate_units(const BlockShape& shape) {
  std::vector<UnitIndex> out;
  for (int b = 0; b < shape.count(); ++b) {
    const int n = shape.dim(b);
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) out.push_back({b, p, q});
    }
  }
  return out;
}

BlockElement random_element(Rng& rng, const BlockShape& shape) {
  BlockElement a = BlockElement::zero(shape);
  double total = 0.0;
  for (int b = 0; b < shape.count(); ++b) {
    a.blocks[static_cast<std::size_t>(b)] = random_gaussian(rng, shape.dim(b), shape.dim(b));
    total += a.blocks[static_cast<std::size_t>(b)].squaredNorm();
  }
  return (1.0 / std::sqrt(total)) * a;
}

}  // namespace

std::string_view to_string(BlockLabel l) {
  switch (l) {
    case BlockLabel::Homomorphism: return "Homomorphism";
    case BlockLabel::Antihomomorphism: return "Antihomomorphism";
    case BlockLabel::Both: return "Both";
    case BlockLabel::Neither: return "Neither";
  }
  return "Unknown";
}

std::string_view to_string(PureRejectReason r) {
  switch (r) {
    case PureRejectReason::DegenerateBlockPresent: return "DegenerateBlockPresent";
    case PureRejectReason::RotationNontrivial: return "RotationNontrivial";
    case PureRejectReason::NotExtremal: return "NotExtremal";
  }
  return "Unknown";
}

JordanReport is_jordan_morphism(const Superoperator& phi, int trials,
                                std::uint64_t seed, double tol) {
  phi.validate();
  const double band = 10.0 * tol;
  const int n_out = phi.out_shape.count();
  const std::vector<UnitIndex> units = enumerate_units(phi.in_shape);
  const std::size_t n_units = units.size();

  JordanReport rep;
  rep.unit_projection = BlockElement::zero(phi.out_shape);
  for (int b = 0; b < phi.in_shape.count(); ++b) {
    for (int p = 0; p < phi.in_shape.dim(b); ++p) {
      rep.unit_projection = rep.unit_projection + phi.image(b, p, p);
    }
  }

  // *-preservation on matrix units: phi(e_qp) = phi(e_pq)^H.
  double star_err = 0.0;
  for (const UnitIndex& u : units) {
    const BlockElement& a = phi.image(u.block, u.p, u.q);
    const BlockElement& at = phi.image(u.block, u.q, u.p);
    star_err = std::max(star_err, max_block_distance(at, a.adjoint()));
  }

  std::vector<std::vector<bool>> nonzero(n_units, std::vector<bool>(static_cast<std::size_t>(n_out)));
  for (std::size_t i = 0; i < n_units; ++i) {
    const BlockElement& img = phi.images[i];
    for (int o = 0; o < n_out; ++o) {
      nonzero[i][static_cast<std::size_t>(o)] = img.blocks[static_cast<std::size_t>(o)].norm() > 0.0;
    }
  }

  std::vector<double> hom_err(static_cast<std::size_t>(n_out), 0.0);
  std::vector<double> anti_err(static_cast<std::size_t>(n_out), 0.0);
  double jordan_err = 0.0;

  // Ordered pairs: (A, B) gives phi(AB) against phi(A)phi(B) and phi(B)phi(A);
  // the Jordan identity is checked once per unordered pair.
  for (std::size_t i = 0; i < n_units; ++i) {
    const UnitIndex& a = units[i];
    for (std::size_t j = 0; j < n_units; ++j) {
      const UnitIndex& b = units[j];
      const bool ab_nonzero = a.block == b.block && a.q == b.p;
      const bool ba_nonzero = a.block == b.block && b.q == a.p;
      for (int o = 0; o < n_out; ++o) {
        const auto os = static_cast<std::size_t>(o);
        const CMatrix& pa = phi.images[i].blocks[os];
        const CMatrix& pb = phi.images[j].blocks[os];
        const int h = phi.out_shape.dim(o);
        CMatrix prod_ab = CMatrix::Zero(h, h), prod_ba = CMatrix::Zero(h, h);
        if (nonzero[i][os] && nonzero[j][os]) {
          prod_ab.noalias() = pa * pb;
          prod_ba.noalias() = pb * pa;
        }
        CMatrix img_ab = CMatrix::Zero(h, h);
        if (ab_nonzero) img_ab = phi.image(a.block, a.p, b.q).blocks[os];
        hom_err[os] = std::max(hom_err[os], (img_ab - prod_ab).norm());
        anti_err[os] = std::max(anti_err[os], (img_ab - prod_ba).norm());
        if (j >= i) {
          CMatrix sym = img_ab;
          if (ba_nonzero) sym += phi.image(b.block, b.p, a.q).blocks[os];
          jordan_err = std::max(jordan_err, (sym - prod_ab - prod_ba).norm());
        }
      }
    }
  }

  const BlockElement& unit = rep.unit_projection;
  double proj_err = std::max(max_block_distance(unit * unit, unit),
                             max_block_distance(unit, unit.adjoint()));
  double compress_err = 0.0;
  for (const BlockElement& img : phi.images) {
    compress_err = std::max(compress_err, max_block_distance(unit * img * unit, img));
  }

  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const BlockElement a = random_element(rng, phi.in_shape);
    const BlockElement b = random_element(rng, phi.in_shape);
    const BlockElement pa = phi.apply(a), pb = phi.apply(b);
    const BlockElement pab = phi.apply(a * b), pba = phi.apply(b * a);
    const BlockElement ab_ = pa * pb, ba_ = pb * pa;
    jordan_err = std::max(jordan_err, max_block_distance(pab + pba, ab_ + ba_));
    star_err = std::max(star_err, max_block_distance(phi.apply(a.adjoint()), pa.adjoint()));
    compress_err = std::max(compress_err, max_block_distance(unit * pa * unit, pa));
    for (int o = 0; o < n_out; ++o) {
      const auto os = static_cast<std::size_t>(o);
      hom_err[os] = std::max(hom_err[os], frobenius_distance(pab.blocks[os], ab_.blocks[os]));
      anti_err[os] = std::max(anti_err[os], frobenius_distance(pab.blocks[os], ba_.blocks[os]));
    }
  }

  rep.star_preserving = star_err <= band;
  rep.jordan_identity = jordan_err <= band;
  rep.unit_is_projection = proj_err <= band;
  rep.compressed_by_unit = compress_err <= band;
  rep.max_jordan_defect = jordan_err;
  bool any_neither = false;
  for (int o = 0; o < n_out; ++o) {
    const bool hom = hom_err[static_cast<std::size_t>(o)] <= band;
    const bool anti = anti_err[static_cast<std::size_t>(o)] <= band;
    BlockLabel l = hom && anti ? BlockLabel::Both
                   : hom       ? BlockLabel::Homomorphism
                   : anti      ? BlockLabel::Antihomomorphism
                               : BlockLabel::Neither;
    any_neither = any_neither || l == BlockLabel::Neither;
    rep.block_labels.push_back(l);
  }
  rep.is_jordan = rep.star_preserving && rep.jordan_identity &&
                  rep.unit_is_projection && rep.compressed_by_unit && !any_neither;
  return rep;
}

HomAntiSplit split_hom_antihom(const JordanReport& report) {
  if (!report.is_jordan) throw Error(ErrorCode::NotJordan, "map is not a Jordan *-morphism");
  HomAntiSplit out;
  for (std::size_t o = 0; o < report.block_labels.size(); ++o) {
    const int b = static_cast<int>(o);
    if (report.block_labels[o] == BlockLabel::Antihomomorphism) {
      out.anti.push_back(b);
    } else {
      out.hom.push_back(b);
    }
  }
  return out;
}

HomAntiSplit split_hom_antihom(const Superoperator& phi, double tol) {
  return split_hom_antihom(is_jordan_morphism(phi, 8, 0, tol));
}

namespace {

// alpha(e_pq) = e_pq or e_qp on M_k.
BlockMap representation_map(int k, bool anti) {
  BlockMap m = BlockMap::zero(k, k);
  for (int p = 0; p < k; ++p) {
    for (int q = 0; q < k; ++q) {
      if (anti) {
        m.image(p, q)(q, p) = 1.0;
      } else {
        m.image(p, q)(p, q) = 1.0;
      }
    }
  }
  return m;
}

// Max defect of alpha(e_pq e_rs) against alpha(e_pq)alpha(e_rs) (or the
// reversed product for an antimorphism).
double multiplicativity_defect(const BlockMap& alpha, bool anti) {
  const int k = alpha.k;
  double worst = 0.0;
  for (int p = 0; p < k; ++p) {
    for (int q = 0; q < k; ++q) {
      for (int r = 0; r < k; ++r) {
        for (int s = 0; s < k; ++s) {
          const CMatrix prod = anti ? CMatrix(alpha.image(r, s) * alpha.image(p, q))
                                    : CMatrix(alpha.image(p, q) * alpha.image(r, s));
          const CMatrix lhs = q == r ? alpha.image(p, s) : CMatrix::Zero(alpha.h, alpha.h);
          worst = std::max(worst, (lhs - prod).norm());
        }
      }
    }
  }
  return worst;
}

// Dimension of span{alpha(e_pq)} through the rank of the stacked images.
int span_dimension(const BlockMap& alpha) {
  const int hh = alpha.h * alpha.h;
  CMatrix stacked(hh, static_cast<Eigen::Index>(alpha.images.size()));
  for (std::size_t i = 0; i < alpha.images.size(); ++i) {
    stacked.col(static_cast<Eigen::Index>(i)) =
        alpha.images[i].reshaped();
  }
  const Eigen::VectorXd s = singular_values(stacked);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > 1e-10 * std::max(1.0, s(0))) ++rank;
  }
  return rank;
}

}  // namespace

GlobalClassification classify_extremal_global(const Superoperator& psi,
                                              double tol, std::uint64_t seed) {
  psi.validate();
  GlobalClassification out;
  const int n_out = psi.out_shape.count();
  std::vector<int> in_blocks(static_cast<std::size_t>(n_out), 0);

  for (int o = 0; o < n_out; ++o) {
    int in_block = 0;
    try {
      in_block = adjoint_images(psi, o, tol).input_block;
    } catch (const MultiInputSupportError& e) {
      Witness w = search_witness(psi, o, tol, seed);
      out.verdicts.push_back(Rejected{RejectReason::MultiInputSupport, std::move(w), e.what()});
      out.residuals.push_back(std::numeric_limits<double>::infinity());
      continue;
    }
    in_blocks[static_cast<std::size_t>(o)] = in_block;
    SingleBlockResult r = classify_single_block(restrict_map(psi, in_block, o), tol, in_block);
    if (auto* rej = std::get_if<Rejected>(&r.verdict)) rej->witness.out_block = o;
    out.verdicts.push_back(std::move(r.verdict));
    out.residuals.push_back(r.residual);
  }

  bool any_rejected = false;
  for (const auto& v : out.verdicts) any_rejected = any_rejected || is_rejected(v);
  if (any_rejected) {
    out.accepted = false;
    out.residual = std::numeric_limits<double>::infinity();
    return out;
  }

  GlobalCertificate cert;
  std::vector<int> target_dims;
  for (int o = 0; o < n_out; ++o) {
    const BlockVerdict& v = out.verdicts[static_cast<std::size_t>(o)];
    if (const auto* c1 = std::get_if<Form1Certificate>(&v)) {
      cert.e_blocks.push_back(o);
      cert.certificates.emplace_back(*c1);
      target_dims.push_back(static_cast<int>(c1->u.rows()));
    } else {
      cert.degenerate_blocks.push_back(o);
      cert.certificates.emplace_back(std::get<Form2Certificate>(v));
    }
  }

  if (!target_dims.empty()) {
    cert.target_shape = BlockShape(target_dims);
    cert.phi = Superoperator::zero(psi.in_shape, cert.target_shape);
    for (std::size_t r = 0; r < cert.e_blocks.size(); ++r) {
      const int o = cert.e_blocks[r];
      const auto& c1 = std::get<Form1Certificate>(out.verdicts[static_cast<std::size_t>(o)]);
      const int k = static_cast<int>(c1.u.rows());
      const BlockMap alpha = representation_map(k, c1.transposed);
      if (multiplicativity_defect(alpha, c1.transposed) > 10.0 * tol) {
        throw Error(ErrorCode::AssemblyError,
                    "recovered representation for output block " + std::to_string(o) +
                        " is not (anti)multiplicative");
      }
      if (span_dimension(alpha) != k * k) {
        throw Error(ErrorCode::AssemblyError,
                    "recovered representation for output block " + std::to_string(o) +
                        " is not onto its block");
      }
      add_route(cert.phi, c1.input_block, static_cast<int>(r), alpha);

      NondegenerateBlock nd;
      nd.out_block = o;
      nd.in_block = c1.input_block;
      nd.anti = c1.transposed;
      nd.w = c1.v * c1.u.adjoint();
      nd.e1 = nd.w.adjoint() * nd.w;
      nd.e2 = nd.w * nd.w.adjoint();
      nd.embedding = c1.v;
      const double pi_err = (nd.e1 * nd.e1 - nd.e1).norm();
      if (pi_err > 1e-10) {
        throw Error(ErrorCode::AssemblyError,
                    "W is not a partial isometry on output block " + std::to_string(o));
      }
      cert.nondegenerate.push_back(std::move(nd));
    }
  }

  const Superoperator rebuilt = reconstruct_global(cert, psi.in_shape, psi.out_shape);
  cert.residual = max_unit_residual(psi, rebuilt);
  out.residual = cert.residual;
  out.accepted = cert.residual <= 10.0 * tol;
  out.certificate = std::move(cert);
  return out;
}

Superoperator reconstruct_global(const GlobalCertificate& cert,
                                 const BlockShape& in_shape,
                                 const BlockShape& out_shape) {
  Superoperator out = Superoperator::zero(in_shape, out_shape);
  for (std::size_t r = 0; r < cert.nondegenerate.size(); ++r) {
    const NondegenerateBlock& nd = cert.nondegenerate[r];
    const int k = in_shape.dim(nd.in_block);
    const int h = out_shape.dim(nd.out_block);
    BlockMap m = BlockMap::zero(k, h);
    for (int p = 0; p < k; ++p) {
      for (int q = 0; q < k; ++q) {
        const CMatrix& alpha = cert.phi.image(nd.in_block, p, q).blocks[r];
        m.image(p, q) = nd.embedding.adjoint() * nd.e2 * nd.w * alpha * nd.e2 * nd.embedding;
      }
    }
    add_route(out, nd.in_block, nd.out_block, m);
  }
  // Degenerate blocks come straight from their Form 2 certificates.
  for (int o : cert.degenerate_blocks) {
    const BlockCertificate& c = cert.certificates[static_cast<std::size_t>(o)];
    const int in_block = input_block_of(c);
    add_route(out, in_block, o, reconstruct(c, in_shape.dim(in_block), out_shape.dim(o)));
  }
  return out;
}

namespace {

bool pullback_pure(const Superoperator& psi, int out_block, const CVector& x, double tol) {
  return is_pure_state(pullback(psi, out_block, x, x), tol).pure;
}

// Basis vectors, then (e_a + w e_b)/sqrt(2), then random unit vectors.
std::optional<PureWitness> pure_witness(const Superoperator& psi, int out_block,
                                        double tol, std::uint64_t seed) {
  const int h = psi.out_shape.dim(out_block);
  for (int a = 0; a < h; ++a) {
    CVector x = CVector::Zero(h);
    x(a) = 1.0;
    if (!pullback_pure(psi, out_block, x, tol)) return PureWitness{out_block, x};
  }
  const cdouble omegas[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int a = 0; a < h; ++a) {
    for (int b = a + 1; b < h; ++b) {
      for (cdouble w : omegas) {
        CVector x = CVector::Zero(h);
        x(a) = M_SQRT1_2;
        x(b) = w * M_SQRT1_2;
        if (!pullback_pure(psi, out_block, x, tol)) return PureWitness{out_block, x};
      }
    }
  }
  Rng rng(seed);
  for (int t = 0; t < 64; ++t) {
    CVector x = random_unit_vector(rng, h);
    if (!pullback_pure(psi, out_block, x, tol)) return PureWitness{out_block, x};
  }
  return std::nullopt;
}

std::optional<PureWitness> any_pure_witness(const Superoperator& psi, double tol,
                                            std::uint64_t seed) {
  for (int o = 0; o < psi.out_shape.count(); ++o) {
    if (auto w = pure_witness(psi, o, tol, seed)) return w;
  }
  return std::nullopt;
}

}  // namespace

PureClassification classify_pure_preserving(const Superoperator& psi, double tol,
                                            std::uint64_t seed) {
  PureClassification out;
  out.global = classify_extremal_global(psi, tol, seed);
  auto reject = [&](PureRejectReason r, std::optional<PureWitness> w) {
    out.accepted = false;
    out.reason = r;
    out.witness = std::move(w);
    return out;
  };
  if (!out.global.accepted) {
    return reject(PureRejectReason::NotExtremal, any_pure_witness(psi, tol, seed));
  }
  const GlobalCertificate& g = *out.global.certificate;
  if (!g.degenerate_blocks.empty()) {
    const int o = g.degenerate_blocks.front();
    return reject(PureRejectReason::DegenerateBlockPresent, pure_witness(psi, o, tol, seed));
  }

  PureCertificate cert;
  cert.target_shape = g.target_shape;
  cert.phi = g.phi;
  for (const NondegenerateBlock& nd : g.nondegenerate) {
    const auto& c1 = std::get<Form1Certificate>(g.certificates[static_cast<std::size_t>(nd.out_block)]);
    const double scale = std::sqrt(static_cast<double>(c1.u.cols()));
    if ((c1.v - c1.u).norm() > 10.0 * tol * scale) {
      return reject(PureRejectReason::RotationNontrivial,
                    pure_witness(psi, nd.out_block, tol, seed));
    }
    cert.range_projection.push_back(c1.u * c1.u.adjoint());
    cert.embedding.push_back(c1.u);
  }

  Superoperator rebuilt = Superoperator::zero(psi.in_shape, psi.out_shape);
  for (std::size_t r = 0; r < g.nondegenerate.size(); ++r) {
    const NondegenerateBlock& nd = g.nondegenerate[r];
    const int k = psi.in_shape.dim(nd.in_block);
    BlockMap m = BlockMap::zero(k, psi.out_shape.dim(nd.out_block));
    const CMatrix& e = cert.range_projection[r];
    const CMatrix& u = cert.embedding[r];
    for (int p = 0; p < k; ++p) {
      for (int q = 0; q < k; ++q) {
        m.image(p, q) = u.adjoint() * e * g.phi.image(nd.in_block, p, q).blocks[r] * e * u;
      }
    }
    add_route(rebuilt, nd.in_block, nd.out_block, m);
  }
  cert.unit = BlockElement::zero(psi.out_shape);
  for (int b = 0; b < psi.in_shape.count(); ++b) {
    for (int p = 0; p < psi.in_shape.dim(b); ++p) cert.unit = cert.unit + psi.image(b, p, p);
  }
  cert.residual = max_unit_residual(psi, rebuilt);
  if (cert.residual > 10.0 * tol) {
    return reject(PureRejectReason::NotExtremal, any_pure_witness(psi, tol, seed));
  }
  out.accepted = true;
  out.certificate = std::move(cert);
  return out;
}

PureSampleResult check_pure_preserving_sampled(const Superoperator& psi, int samples,
                                               std::uint64_t seed, double tol) {
  psi.validate();
  PureSampleResult out;
  Rng rng(seed);
  const int n_out = psi.out_shape.count();
  for (int t = 0; t < samples; ++t) {
    const int o = uniform_int(rng, 0, n_out - 1);
    const CVector x = random_unit_vector(rng, psi.out_shape.dim(o));
    if (!pullback_pure(psi, o, x, tol)) {
      out.preserved = false;
      out.witness = PureWitness{o, x};
      return out;
    }
  }
  return out;
}

}  // namespace extremap

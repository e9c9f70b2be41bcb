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

#include <doctest.h>

#include <set>

#include "extremap/error.hpp"
#include "support.hpp"

using namespace extremap;
using namespace testsupport;

namespace {

CMatrix unit(int n, int p, int q) {
  CMatrix m = CMatrix::Zero(n, n);
  m(p, q) = 1.0;
  return m;
}

BlockMap map_from(int k, int h, const std::function<CMatrix(const CMatrix&)>& f) {
  BlockMap m = BlockMap::zero(k, h);
  for (int p = 0; p < k; ++p) {
    for (int q = 0; q < k; ++q) m.image(p, q) = f(unit(k, p, q));
  }
  return m;
}

const BlockMap& identity2() {
  static const BlockMap m = map_from(2, 2, [](const CMatrix& t) { return t; });
  return m;
}

const BlockMap& transpose2() {
  static const BlockMap m = map_from(2, 2, [](const CMatrix& t) { return CMatrix(t.transpose()); });
  return m;
}

template <class F>
ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an extremap::Error");
  return ErrorCode::InvalidArgument;
}

bool is_partial_isometry(const CMatrix& w, double tol) {
  const CMatrix e = w.adjoint() * w;
  return (e * e - e).norm() <= tol;
}

// Random map with one output block per entry, each fed by its own
// input block; forms "1", "1t", "2", "2a".
Superoperator mixed_map(Rng& rng, const std::vector<std::string>& forms, std::set<int>& e_blocks) {
  std::vector<GeneratedBlock> gs;
  std::vector<int> in, out;
  for (const std::string& f : forms) {
    gs.push_back(random_form_any(rng, f, 6, 2));
    if (gs.back().h == 1) gs.back() = random_form(rng, f, f[0] == '1' ? 3 : 4, 2);
    in.push_back(gs.back().k);
    out.push_back(gs.back().h);
  }
  Superoperator psi = Superoperator::zero(BlockShape(in), BlockShape(out));
  for (std::size_t i = 0; i < gs.size(); ++i) {
    add_route(psi, static_cast<int>(i), static_cast<int>(i), gs[i].map);
    if (forms[i][0] == '1') e_blocks.insert(static_cast<int>(i));
  }
  return psi;
}

}  // namespace

TEST_CASE("Jordan labels on identity, transpose and their sum") {
  const JordanReport id = is_jordan_morphism(to_superoperator(identity2()), 8, 1);
  CHECK(id.is_jordan);
  CHECK(id.block_labels == std::vector<BlockLabel>{BlockLabel::Homomorphism});

  const JordanReport tr = is_jordan_morphism(to_superoperator(transpose2()), 8, 1);
  CHECK(tr.is_jordan);
  CHECK(tr.block_labels == std::vector<BlockLabel>{BlockLabel::Antihomomorphism});
  const HomAntiSplit ts = split_hom_antihom(tr);
  CHECK(ts.hom.empty());
  CHECK(ts.anti == std::vector<int>{0});

  Superoperator both = Superoperator::zero(BlockShape({2}), BlockShape({2, 2}));
  add_route(both, 0, 0, identity2());
  add_route(both, 0, 1, transpose2());
  const JordanReport r = is_jordan_morphism(both, 8, 1);
  CHECK(r.is_jordan);
  CHECK(r.block_labels == std::vector<BlockLabel>{BlockLabel::Homomorphism, BlockLabel::Antihomomorphism});
  const HomAntiSplit s = split_hom_antihom(both);
  CHECK(s.hom == std::vector<int>{0});
  CHECK(s.anti == std::vector<int>{1});
}

TEST_CASE("half the identity is not Jordan") {
  const Superoperator half = to_superoperator(map_from(2, 2, [](const CMatrix& t) { return CMatrix(0.5 * t); }));
  const JordanReport r = is_jordan_morphism(half, 8, 1);
  CHECK_FALSE(r.is_jordan);
  CHECK_FALSE(r.jordan_identity);
  CHECK_FALSE(r.unit_is_projection);
  CHECK(error_code_of([&] { split_hom_antihom(half); }) == ErrorCode::NotJordan);
}

TEST_CASE("commutative range goes to the homomorphism side") {
  // C^2 -> diagonal of M_2.
  Superoperator diag = Superoperator::zero(BlockShape({1, 1}), BlockShape({2}));
  diag.image(0, 0, 0).blocks[0] = unit(2, 0, 0);
  diag.image(1, 0, 0).blocks[0] = unit(2, 1, 1);
  const JordanReport r = is_jordan_morphism(diag, 8, 1);
  CHECK(r.is_jordan);
  CHECK(r.block_labels == std::vector<BlockLabel>{BlockLabel::Both});
  const HomAntiSplit s = split_hom_antihom(r);
  CHECK(s.hom == std::vector<int>{0});
  CHECK(s.anti.empty());
}

TEST_CASE("non-unital corner embedding is Jordan with a projection unit") {
  Superoperator psi = Superoperator::zero(BlockShape({2}), BlockShape({3}));
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) psi.image(0, p, q).blocks[0] = unit(3, p, q);
  }
  const JordanReport r = is_jordan_morphism(psi, 8, 1);
  CHECK(r.is_jordan);
  CHECK(r.unit_is_projection);
  CHECK(r.compressed_by_unit);
  CMatrix e = CMatrix::Zero(3, 3);
  e(0, 0) = e(1, 1) = 1.0;
  CHECK((r.unit_projection.blocks[0] - e).norm() < 1e-15);
}

TEST_CASE("unitary conjugations with mixed hom and antihom blocks are Jordan") {
  Rng rng(61);
  for (int t = 0; t < 50; ++t) {
    const BlockShape in({uniform_int(rng, 1, 3), uniform_int(rng, 1, 3)});
    std::vector<JordanCompressionSpec> specs;
    const int n_out = uniform_int(rng, 1, 3);
    for (int o = 0; o < n_out; ++o) {
      const int b = uniform_int(rng, 0, 1);
      specs.push_back({b, uniform_int(rng, 0, 1) == 1, in.dim(b)});
    }
    const Superoperator psi = jordan_compression(rng, in, specs);
    const JordanReport r = is_jordan_morphism(psi, 8, static_cast<std::uint64_t>(t));
    CHECK(r.is_jordan);
    CHECK(r.star_preserving);
    for (int o = 0; o < n_out; ++o) {
      const BlockLabel l = r.block_labels[static_cast<std::size_t>(o)];
      if (in.dim(specs[static_cast<std::size_t>(o)].in_block) == 1) {
        CHECK(l == BlockLabel::Both);
      } else {
        CHECK(l == (specs[static_cast<std::size_t>(o)].anti ? BlockLabel::Antihomomorphism : BlockLabel::Homomorphism));
      }
    }
  }
}

TEST_CASE("identity on M2 + M3 is globally non-degenerate") {
  const BlockShape s({2, 3});
  Superoperator id = Superoperator::zero(s, s);
  for (int b = 0; b < 2; ++b) {
    for (int p = 0; p < s.dim(b); ++p) {
      for (int q = 0; q < s.dim(b); ++q) id.image(b, p, q) = BlockElement::matrix_unit(s, b, p, q);
    }
  }
  const GlobalClassification g = classify_extremal_global(id);
  REQUIRE(g.accepted);
  const GlobalCertificate& c = *g.certificate;
  CHECK(c.e_blocks == std::vector<int>{0, 1});
  CHECK(c.degenerate_blocks.empty());
  for (const NondegenerateBlock& nd : c.nondegenerate) {
    const int n = s.dim(nd.out_block);
    CHECK((nd.w - CMatrix::Identity(n, n)).norm() < 1e-12);
  }
  CHECK(c.target_shape == s);
  CHECK(max_unit_residual(c.phi, id) < 1e-15);
}

TEST_CASE("Form 1 and Form 2 blocks over one input block") {
  Rng rng(62);
  Superoperator psi = Superoperator::zero(BlockShape({4}), BlockShape({2, 2}));
  add_route(psi, 0, 0, form1_map(random_isometry(rng, 4, 2), random_isometry(rng, 4, 2), false));
  add_route(psi, 0, 1, form2_map(random_unit_vector(rng, 4), random_unitary(rng, 4), false));
  const GlobalClassification g = classify_extremal_global(psi);
  REQUIRE(g.accepted);
  CHECK(g.certificate->e_blocks == std::vector<int>{0});
  CHECK(g.certificate->degenerate_blocks == std::vector<int>{1});
  CHECK(g.residual <= 1e-8);
}

TEST_CASE("transposed Form 1 yields an antihomomorphic Jordan part") {
  Rng rng(63);
  const Superoperator psi = build_form1(random_isometry(rng, 3, 2), random_isometry(rng, 3, 2), true);
  const GlobalClassification g = classify_extremal_global(psi);
  REQUIRE(g.accepted);
  CHECK(certificate_form(g.verdicts[0]) == "1t");
  const JordanReport r = is_jordan_morphism(g.certificate->phi, 8, 1);
  CHECK(r.is_jordan);
  CHECK(r.block_labels == std::vector<BlockLabel>{BlockLabel::Antihomomorphism});
}

TEST_CASE("global classification recovers the E-partition of random mixtures") {
  Rng rng(64);
  const std::vector<std::string> all = {"1", "1t", "2", "2a"};
  for (int t = 0; t < 40; ++t) {
    std::vector<std::string> forms;
    const int n = uniform_int(rng, 1, 4);
    for (int i = 0; i < n; ++i) forms.push_back(all[static_cast<std::size_t>(uniform_int(rng, 0, 3))]);
    std::set<int> expect;
    const Superoperator psi = mixed_map(rng, forms, expect);
    const GlobalClassification g = classify_extremal_global(psi);
    REQUIRE(g.accepted);
    const GlobalCertificate& c = *g.certificate;
    CHECK(std::set<int>(c.e_blocks.begin(), c.e_blocks.end()) == expect);
    CHECK(c.e_blocks.size() + c.degenerate_blocks.size() == forms.size());
    CHECK(c.residual <= 1e-8);
    for (const NondegenerateBlock& nd : c.nondegenerate) {
      CHECK(is_partial_isometry(nd.w, 1e-10));
      CHECK((nd.e1 - nd.w.adjoint() * nd.w).norm() < 1e-12);
      CHECK((nd.e2 - nd.w * nd.w.adjoint()).norm() < 1e-12);
    }
    CHECK(oracle_unit_residual(reconstruct_global(c, psi.in_shape, psi.out_shape), psi) <= 1e-8);
    if (!c.e_blocks.empty()) CHECK(is_jordan_morphism(c.phi, 4, 1).is_jordan);
  }
}

TEST_CASE("an output block fed by two input blocks is rejected") {
  Rng rng(65);
  Superoperator psi = Superoperator::zero(BlockShape({2, 2}), BlockShape({2}));
  add_route(psi, 0, 0, form1_map(random_unitary(rng, 2), random_unitary(rng, 2), false));
  add_route(psi, 1, 0, form1_map(random_unitary(rng, 2), random_unitary(rng, 2), false));
  const GlobalClassification g = classify_extremal_global(psi);
  CHECK_FALSE(g.accepted);
  REQUIRE(is_rejected(g.verdicts[0]));
  const Rejected& r = std::get<Rejected>(g.verdicts[0]);
  CHECK(r.reason == RejectReason::MultiInputSupport);
  CHECK(replay_witness(psi, r.witness, kDefaultTol));
}

TEST_CASE("pure-state preserving examples") {
  Rng rng(66);
  const CMatrix u = random_isometry(rng, 3, 2);
  const Superoperator comp = build_form1(u, u, false);
  const PureClassification a = classify_pure_preserving(comp);
  REQUIRE(a.accepted);
  CHECK((a.certificate->range_projection[0] - u * u.adjoint()).norm() < 1e-9);
  CHECK(is_jordan_morphism(a.certificate->phi, 4, 1).block_labels == std::vector<BlockLabel>{BlockLabel::Homomorphism});
  CHECK(check_pure_preserving_sampled(comp, 1000, 1).preserved);

  // U e1 orthogonal to V e1.
  const CMatrix q = random_unitary(rng, 3);
  const CMatrix uq = q.leftCols(2);
  CMatrix vv(3, 2);
  vv.col(0) = q.col(2);
  vv.col(1) = q.col(0);
  REQUIRE(std::abs(uq.col(0).dot(vv.col(0))) < 1e-12);
  const Superoperator rot = build_form1(uq, vv, false);
  const PureClassification b = classify_pure_preserving(rot);
  CHECK_FALSE(b.accepted);
  CHECK(b.reason == PureRejectReason::RotationNontrivial);
  const PureSampleResult bs = check_pure_preserving_sampled(rot, 1000, 1);
  CHECK_FALSE(bs.preserved);
  REQUIRE(bs.witness.has_value());
  CHECK_FALSE(is_pure_state(oracle_pullback(rot, 0, bs.witness->x, bs.witness->x)).pure);

  const Superoperator deg = build_form2(random_unit_vector(rng, 4), random_unitary(rng, 4), false);
  const PureClassification c = classify_pure_preserving(deg);
  CHECK_FALSE(c.accepted);
  CHECK(c.reason == PureRejectReason::DegenerateBlockPresent);
}

TEST_CASE("a global phase on the rotation is not a pure-state preserver") {
  Rng rng(67);
  const CMatrix u = random_isometry(rng, 3, 2);
  const cdouble lambda = std::polar(1.0, 0.4);
  const Superoperator psi = build_form1(u, lambda * u, false);
  const PureClassification r = classify_pure_preserving(psi);
  CHECK_FALSE(r.accepted);
  CHECK(r.reason == PureRejectReason::RotationNontrivial);
  CHECK_FALSE(check_pure_preserving_sampled(psi, 200, 1).preserved);
}

TEST_CASE("sampled pure-state check examples") {
  const Superoperator sym = to_superoperator(
      map_from(2, 2, [](const CMatrix& t) { return CMatrix(0.5 * (t + t.transpose())); }));
  const PureSampleResult s = check_pure_preserving_sampled(sym, 1000, 1);
  CHECK_FALSE(s.preserved);
  CVector x(2);
  x << 1.0, cdouble(0, 1);
  x /= std::sqrt(2.0);
  const Functional rho = oracle_pullback(sym, 0, x, x);
  CHECK_FALSE(is_pure_state(rho).pure);
  // The pull-back is the maximally mixed state.
  CHECK((rho.reps[0] - 0.5 * CMatrix::Identity(2, 2)).norm() < 1e-12);

  const Superoperator zero = Superoperator::zero(BlockShape({2}), BlockShape({2}));
  CHECK_FALSE(check_pure_preserving_sampled(zero, 10, 1).preserved);
}

TEST_CASE("pure acceptance agrees with the sampled oracle") {
  Rng rng(68);
  for (int t = 0; t < 60; ++t) {
    const BlockShape in({uniform_int(rng, 1, 4), uniform_int(rng, 2, 4)});
    Superoperator psi;
    switch (t % 4) {
      case 0:
      case 1: {
        std::vector<JordanCompressionSpec> specs;
        for (int o = 0; o < uniform_int(rng, 1, 3); ++o) {
          const int b = uniform_int(rng, 0, 1);
          specs.push_back({b, uniform_int(rng, 0, 1) == 1, uniform_int(rng, 1, in.dim(b))});
        }
        psi = jordan_compression(rng, in, specs);
        break;
      }
      case 2: {
        const int k = in.dim(1), h = uniform_int(rng, 1, k);
        psi = build_form1(random_isometry(rng, k, h), random_isometry(rng, k, h), t % 8 == 2);
        break;
      }
      default: {
        const GeneratedBlock g = random_form(rng, uniform_int(rng, 0, 1) ? "2" : "2a", 4, 2);
        psi = to_superoperator(g.map);
        break;
      }
    }
    const PureClassification c = classify_pure_preserving(psi);
    const PureSampleResult s = check_pure_preserving_sampled(psi, 2000, static_cast<std::uint64_t>(t));
    CAPTURE(t);
    CHECK(c.accepted == s.preserved);
    if (c.accepted) CHECK(classify_extremal_global(psi).accepted);
  }
}

TEST_CASE("accepted pure certificates compress the Jordan part") {
  Rng rng(69);
  for (int t = 0; t < 40; ++t) {
    const BlockShape in({uniform_int(rng, 1, 4), uniform_int(rng, 1, 4)});
    std::vector<JordanCompressionSpec> specs;
    for (int o = 0; o < uniform_int(rng, 1, 3); ++o) {
      const int b = uniform_int(rng, 0, 1);
      specs.push_back({b, uniform_int(rng, 0, 1) == 1, uniform_int(rng, 1, in.dim(b))});
    }
    const Superoperator psi = jordan_compression(rng, in, specs);
    const PureClassification c = classify_pure_preserving(psi);
    REQUIRE(c.accepted);
    const PureCertificate& pc = *c.certificate;
    CHECK(pc.residual <= 1e-8);
    const BlockElement& unit_el = pc.unit;
    CHECK(max_block_distance(unit_el * unit_el, unit_el) <= 1e-8);
    CHECK(max_block_distance(unit_el, unit_el.adjoint()) <= 1e-8);
    const GlobalCertificate& g = *c.global.certificate;
    for (std::size_t r = 0; r < pc.range_projection.size(); ++r) {
      const CMatrix& e = pc.range_projection[r];
      const CMatrix& u = pc.embedding[r];
      CHECK((e * e - e).norm() <= 1e-8);
      CHECK((e - e.adjoint()).norm() <= 1e-8);
      const int o = g.nondegenerate[r].out_block;
      CHECK((u.adjoint() * e * u - unit_el.blocks[static_cast<std::size_t>(o)]).norm() <= 1e-8);
      const int b = g.nondegenerate[r].in_block;
      for (int p = 0; p < in.dim(b); ++p) {
        for (int q = 0; q < in.dim(b); ++q) {
          const CMatrix& phi = g.phi.image(b, p, q).blocks[r];
          const CMatrix approx = u.adjoint() * e * phi * e * u;
          CHECK((approx - psi.image(b, p, q).blocks[static_cast<std::size_t>(o)]).norm() <= 1e-8);
        }
      }
    }
  }
}

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

#include <numbers>
#include <random>

#include "extremap/disc.hpp"
#include "extremap/error.hpp"

using namespace extremap;

namespace {

constexpr double kPi = std::numbers::pi;

cdouble oracle_blaschke(double phase, const std::vector<cdouble>& zeros, cdouble z) {
  cdouble num = 1.0, den = 1.0;
  for (cdouble a : zeros) {
    num *= z - a;
    den *= 1.0 - std::conj(a) * z;
  }
  return std::exp(cdouble(0, phase)) * num / den;
}

BlaschkeProduct random_blaschke(std::mt19937_64& rng, int max_degree) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> deg(0, max_degree);
  BlaschkeProduct b;
  b.phase = 2 * kPi * u(rng);
  const int n = deg(rng);
  for (int i = 0; i < n; ++i) b.zeros.push_back(std::polar(0.98 * std::sqrt(u(rng)), 2 * kPi * u(rng)));
  return b;
}

BlaschkeProduct z_power(int n) {
  return BlaschkeProduct{0.0, std::vector<cdouble>(static_cast<std::size_t>(n), 0.0)};
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

}  // namespace

TEST_CASE("blaschke_eval examples") {
  CHECK(std::abs(blaschke_eval(BlaschkeProduct{}, cdouble(0, 1)) - 1.0) < 1e-15);
  const BlaschkeProduct half{0.0, {0.5}};
  CHECK(std::abs(blaschke_eval(half, 0.0) + 0.5) < 1e-15);
  const cdouble at_one = blaschke_eval(half, 1.0);
  CHECK(std::abs(at_one - 1.0) < 1e-15);
  CHECK(std::abs(at_one) == 1.0);
  CHECK(error_code_of([&] { blaschke_eval(half, 1.1); }) == ErrorCode::OutsideDisc);
  CHECK_NOTHROW(blaschke_eval(half, 1.0 + 5e-13));
  CHECK(error_code_of([] { BlaschkeProduct{0.0, {1.2}}.validate(); }) == ErrorCode::ZeroOutsideDisc);
  CHECK(error_code_of([] { BlaschkeProduct{0.0, {cdouble(0.0, 1.0 - 1e-13)}}.validate(); }) ==
        ErrorCode::ZeroOutsideDisc);
}

TEST_CASE("batch evaluation agrees with the product formula") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const BlaschkeProduct b = random_blaschke(rng, 6);
    std::vector<cdouble> z(37);
    for (auto& p : z) p = std::polar(std::sqrt(u(rng)), 2 * kPi * u(rng));
    const std::vector<cdouble> batch = blaschke_eval(b, z);
    for (std::size_t i = 0; i < z.size(); ++i) {
      const cdouble ref = oracle_blaschke(b.phase, b.zeros, z[i]);
      CHECK(std::abs(batch[i] - ref) < 1e-12);
      CHECK(std::abs(blaschke_eval(b, z[i]) - ref) < 1e-12);
    }
  }
}

TEST_CASE("finite Blaschke products are inner on the boundary") {
  std::mt19937_64 rng(72);
  const std::vector<cdouble> grid = boundary_grid(4096);
  for (int t = 0; t < 200; ++t) {
    const BlaschkeProduct b = random_blaschke(rng, 6);
    double worst = 0.0;
    for (cdouble v : blaschke_eval(b, grid)) worst = std::max(worst, std::abs(std::abs(v) - 1.0));
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("boundary_extremality_check examples") {
  const DiscCompositionOp id{BlaschkeProduct::identity(), BlaschkeProduct::identity()};
  const BoundaryCheck a = boundary_extremality_check(id, 64, 1e-10);
  CHECK(a.accepted);
  CHECK(a.max_deviation <= 1e-12);

  const DiscCompositionOp half{SampledFunction{[](cdouble z) { return (1.0 + z) / 2.0; }, "(1+z)/2"},
                              BlaschkeProduct::identity()};
  const BoundaryCheck b = boundary_extremality_check(half, 4096, 1e-10);
  CHECK_FALSE(b.accepted);
  CHECK(std::abs(b.worst_t - kPi) < 1e-3);
  CHECK(b.max_deviation == doctest::Approx(1.0).epsilon(1e-12));

  const DiscCompositionOp c{BlaschkeProduct{0.0, {cdouble(0.3, 0.4)}},
                           BlaschkeProduct{0.0, {0.5, cdouble(0.0, -0.2)}}};
  CHECK(boundary_extremality_check(c, 4096, 1e-10).accepted);

  CHECK(error_code_of([&] { boundary_extremality_check(id, 7, 1e-10); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("random Blaschke composition operators pass the boundary check") {
  std::mt19937_64 rng(73);
  for (int t = 0; t < 200; ++t) {
    const DiscCompositionOp op{random_blaschke(rng, 6), random_blaschke(rng, 6)};
    const BoundaryCheck r = boundary_extremality_check(op, 4096, 1e-10);
    CHECK(r.accepted);
  }
}

TEST_CASE("adjoint on point evaluations examples") {
  const DiscCompositionOp plain{BlaschkeProduct{}, BlaschkeProduct::identity()};
  const auto [l0, x0] = comp_op_adjoint_on_evaluation(plain, 1.0, 1.0);
  CHECK(std::abs(l0 - 1.0) < 1e-15);
  CHECK(std::abs(x0 - 1.0) < 1e-15);

  const DiscCompositionOp zz{BlaschkeProduct::identity(), z_power(2)};
  const cdouble w = std::polar(1.0, kPi / 3);
  const auto [l1, x1] = comp_op_adjoint_on_evaluation(zz, 1.0, w);
  CHECK(std::abs(l1 - w) < 1e-15);
  CHECK(std::abs(x1 - std::polar(1.0, 2 * kPi / 3)) < 1e-15);

  const DiscCompositionOp mob{BlaschkeProduct{0.0, {0.5}}, z_power(3)};
  const auto [l2, x2] = comp_op_adjoint_on_evaluation(mob, 1.0, 1.0);
  CHECK(std::abs(l2 - 1.0) < 1e-15);
  CHECK(std::abs(x2 - 1.0) < 1e-15);

  CHECK(error_code_of([&] { comp_op_adjoint_on_evaluation(zz, 1.1, 1.0); }) == ErrorCode::NotUnimodular);
  CHECK(error_code_of([&] { comp_op_adjoint_on_evaluation(zz, 1.0, 0.5); }) == ErrorCode::NotBoundary);
}

TEST_CASE("adjoint maps boundary evaluations to boundary evaluations") {
  std::mt19937_64 rng(74);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const DiscCompositionOp op{random_blaschke(rng, 6), random_blaschke(rng, 6)};
  REQUIRE(boundary_extremality_check(op, 4096, 1e-10).accepted);
  for (int t = 0; t < 4096; ++t) {
    const cdouble lambda = std::polar(1.0, 2 * kPi * u(rng));
    const cdouble x = std::polar(1.0, 2 * kPi * u(rng));
    const auto [l, y] = comp_op_adjoint_on_evaluation(op, lambda, x);
    CHECK(std::abs(std::abs(l) - 1.0) <= 1e-10);
    CHECK(std::abs(std::abs(y) - 1.0) <= 1e-10);
  }
}

TEST_CASE("comp_op_apply examples") {
  const std::vector<cdouble> pts = boundary_grid(16);
  const DiscCompositionOp zz{BlaschkeProduct::identity(), z_power(2)};
  const std::vector<cdouble> f_z = {0.0, 1.0};
  const auto a = comp_op_apply(zz, f_z, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(std::abs(a[i] - std::pow(pts[i], 3)) < 1e-14);

  const std::vector<cdouble> one = {1.0};
  const auto b = comp_op_apply(zz, one, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(std::abs(b[i] - pts[i]) < 1e-15);

  const DiscCompositionOp mob{BlaschkeProduct{}, BlaschkeProduct{0.0, {0.5}}};
  const auto c = comp_op_apply(mob, f_z, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(std::abs(c[i] - (pts[i] - 0.5) / (1.0 - 0.5 * pts[i])) < 1e-14);
  }

  const std::vector<cdouble> too_long(258, 1.0);
  CHECK(error_code_of([&] { comp_op_apply(zz, too_long, pts); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("Blaschke composition operators do not increase the sampled sup norm") {
  std::mt19937_64 rng(75);
  std::normal_distribution<double> g(0.0, 1.0);
  const std::vector<cdouble> grid = boundary_grid(1024);
  for (int t = 0; t < 100; ++t) {
    const DiscCompositionOp op{random_blaschke(rng, 4), random_blaschke(rng, 4)};
    std::vector<cdouble> coeffs(static_cast<std::size_t>(1 + t % 12));
    for (auto& c : coeffs) c = {g(rng), g(rng)};
    const auto out = comp_op_apply(op, coeffs, grid);
    // sup |f| over the grid and the points phi lands on.
    const std::vector<cdouble> phi = blaschke_eval(std::get<BlaschkeProduct>(op.symbol), grid);
    double sup_f = 0.0, sup_out = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      sup_f = std::max({sup_f, std::abs(polynomial_eval(coeffs, grid[i])), std::abs(polynomial_eval(coeffs, phi[i]))});
      sup_out = std::max(sup_out, std::abs(out[i]));
    }
    CHECK(sup_out <= sup_f + 1e-9);
  }
}

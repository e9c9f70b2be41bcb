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

#include "extremap/disc.hpp"

#include <cmath>
#include <numbers>

#include "extremap/error.hpp"
#include "extremap/kernels.hpp"

namespace extremap {

namespace {

constexpr double kBoundaryTol = 1e-12;
constexpr int kMaxPolyDegree = 256;

std::string format_complex(cdouble z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

}  // namespace

BlaschkeProduct BlaschkeProduct::identity() { return BlaschkeProduct{0.0, {cdouble(0.0)}}; }

void BlaschkeProduct::validate() const {
  if (!std::isfinite(phase)) throw Error(ErrorCode::NonFinite, "Blaschke phase is not finite");
  for (cdouble a : zeros) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw Error(ErrorCode::NonFinite, "Blaschke zero is not finite");
    }
    if (std::abs(a) >= 1.0 - kBoundaryTol) {
      throw Error(ErrorCode::ZeroOutsideDisc, "zero " + format_complex(a) + " is not inside the disc");
    }
  }
}

cdouble blaschke_eval(const BlaschkeProduct& b, cdouble z) {
  if (std::abs(z) > 1.0 + kBoundaryTol) {
    throw Error(ErrorCode::OutsideDisc, "point " + format_complex(z) + " lies outside the closed disc");
  }
  cdouble v = std::polar(1.0, b.phase);
  for (cdouble a : b.zeros) v *= (z - a) / (1.0 - std::conj(a) * z);
  return v;
}

std::vector<cdouble> blaschke_eval(const BlaschkeProduct& b, std::span<const cdouble> z) {
  std::vector<double> re(z.size()), im(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (std::abs(z[i]) > 1.0 + kBoundaryTol) {
      throw Error(ErrorCode::OutsideDisc, "point " + format_complex(z[i]) + " lies outside the closed disc");
    }
    re[i] = z[i].real();
    im[i] = z[i].imag();
  }
  std::vector<double> out_re(z.size()), out_im(z.size());
  kernels::active().blaschke(re.data(), im.data(), z.size(), b.zeros.data(), b.zeros.size(),
                             std::polar(1.0, b.phase), out_re.data(), out_im.data());
  std::vector<cdouble> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = {out_re[i], out_im[i]};
  return out;
}

std::vector<cdouble> evaluate(const BoundaryFunction& f, std::span<const cdouble> z) {
  if (const auto* b = std::get_if<BlaschkeProduct>(&f)) return blaschke_eval(*b, z);
  const auto& s = std::get<SampledFunction>(f);
  std::vector<cdouble> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = s.f(z[i]);
  return out;
}

void DiscCompositionOp::validate() const {
  for (const BoundaryFunction* f : {&multiplier, &symbol}) {
    if (const auto* b = std::get_if<BlaschkeProduct>(f)) {
      b->validate();
    } else if (!std::get<SampledFunction>(*f).f) {
      throw Error(ErrorCode::InvalidArgument, "sampled function is empty");
    }
  }
}

std::vector<cdouble> boundary_grid(int n) {
  std::vector<cdouble> out(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    out[static_cast<std::size_t>(m)] = std::polar(1.0, 2.0 * std::numbers::pi * m / n);
  }
  return out;
}

BoundaryCheck boundary_extremality_check(const DiscCompositionOp& op, int grid, double tol) {
  if (grid < 8) throw Error(ErrorCode::InvalidArgument, "grid must have at least 8 points");
  op.validate();
  const std::vector<cdouble> pts = boundary_grid(grid);
  const std::vector<cdouble> psi = evaluate(op.multiplier, pts);
  const std::vector<cdouble> phi = evaluate(op.symbol, pts);
  BoundaryCheck out;
  int worst = 0;
  for (int m = 0; m < grid; ++m) {
    const auto i = static_cast<std::size_t>(m);
    const double dpsi = std::abs(std::abs(psi[i]) - 1.0);
    const double dphi = std::abs(std::abs(phi[i]) - 1.0);
    out.multiplier_deviation = std::max(out.multiplier_deviation, dpsi);
    out.symbol_deviation = std::max(out.symbol_deviation, dphi);
    const double d = std::max(dpsi, dphi);
    if (d > out.max_deviation) {
      out.max_deviation = d;
      worst = m;
    }
  }
  out.worst_t = 2.0 * std::numbers::pi * worst / grid;
  out.worst_point = pts[static_cast<std::size_t>(worst)];
  out.accepted = out.max_deviation <= tol;
  return out;
}

std::pair<cdouble, cdouble> comp_op_adjoint_on_evaluation(const DiscCompositionOp& op,
                                                          cdouble lambda, cdouble x) {
  if (std::abs(std::abs(lambda) - 1.0) > kBoundaryTol) {
    throw Error(ErrorCode::NotUnimodular, "scalar " + format_complex(lambda) + " is not unimodular");
  }
  if (std::abs(std::abs(x) - 1.0) > kBoundaryTol) {
    throw Error(ErrorCode::NotBoundary, "point " + format_complex(x) + " is not on the unit circle");
  }
  op.validate();
  const cdouble pt[1] = {x};
  return {lambda * evaluate(op.multiplier, pt)[0], evaluate(op.symbol, pt)[0]};
}

cdouble polynomial_eval(std::span<const cdouble> coeffs, cdouble z) {
  cdouble acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<cdouble> comp_op_apply(const DiscCompositionOp& op,
                                   std::span<const cdouble> coeffs,
                                   std::span<const cdouble> points) {
  if (coeffs.size() > static_cast<std::size_t>(kMaxPolyDegree) + 1) {
    throw Error(ErrorCode::InvalidArgument, "polynomial degree exceeds 256");
  }
  op.validate();
  const std::vector<cdouble> psi = evaluate(op.multiplier, points);
  const std::vector<cdouble> phi = evaluate(op.symbol, points);
  std::vector<cdouble> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = psi[i] * polynomial_eval(coeffs, phi[i]);
  return out;
}

}  // namespace extremap

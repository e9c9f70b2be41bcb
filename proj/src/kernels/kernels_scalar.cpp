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

#include "extremap/kernels.hpp"

namespace extremap::kernels::detail {

cdouble dotu_scalar(const cdouble* a, const cdouble* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br - ai * bi;
    im += ar * bi + ai * br;
  }
  return {re, im};
}

cdouble dotc_scalar(const cdouble* a, const cdouble* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double dist_sq_scalar(const cdouble* a, const cdouble* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dr = a[i].real() - b[i].real();
    const double di = a[i].imag() - b[i].imag();
    acc += dr * dr + di * di;
  }
  return acc;
}

void blaschke_scalar(const double* z_re, const double* z_im, std::size_t n,
                     const cdouble* zeros, std::size_t n_zeros, cdouble unit,
                     double* out_re, double* out_im) {
  for (std::size_t i = 0; i < n; ++i) {
    const double zr = z_re[i], zi = z_im[i];
    double pr = unit.real(), pi = unit.imag();
    for (std::size_t j = 0; j < n_zeros; ++j) {
      const double ar = zeros[j].real(), ai = zeros[j].imag();
      // numerator z - a, denominator 1 - conj(a) z
      const double nr = zr - ar, ni = zi - ai;
      const double dr = 1.0 - (ar * zr + ai * zi);
      const double di = -(ar * zi - ai * zr);
      const double inv = 1.0 / (dr * dr + di * di);
      // (n * conj(d)) / |d|^2
      const double fr = (nr * dr + ni * di) * inv;
      const double fi = (ni * dr - nr * di) * inv;
      const double tr = pr * fr - pi * fi;
      const double ti = pr * fi + pi * fr;
      pr = tr;
      pi = ti;
    }
    out_re[i] = pr;
    out_im[i] = pi;
  }
}

}  // namespace extremap::kernels::detail

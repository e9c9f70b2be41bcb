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

// Built with -mavx2 -mfma. Nothing in here may be called unless the
// dispatcher has confirmed CPU support.

#include <immintrin.h>

#include "extremap/kernels.hpp"

namespace extremap::kernels::detail {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// (even lanes) - (odd lanes)
inline double hsum_alternating(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_sub_sd(s, _mm_unpackhi_pd(s, s)));
}

// Accumulates lane products a*b and a*swap(b) over interleaved complex data.
inline void complex_products(const cdouble* a, const cdouble* b,
                             std::size_t n, __m256d& direct,
                             __m256d& crossed) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d d0 = _mm256_setzero_pd(), d1 = _mm256_setzero_pd();
  __m256d c0 = _mm256_setzero_pd(), c1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va0 = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb0 = _mm256_loadu_pd(pb + 2 * i);
    const __m256d va1 = _mm256_loadu_pd(pa + 2 * i + 4);
    const __m256d vb1 = _mm256_loadu_pd(pb + 2 * i + 4);
    d0 = _mm256_fmadd_pd(va0, vb0, d0);
    d1 = _mm256_fmadd_pd(va1, vb1, d1);
    c0 = _mm256_fmadd_pd(va0, _mm256_permute_pd(vb0, 0b0101), c0);
    c1 = _mm256_fmadd_pd(va1, _mm256_permute_pd(vb1, 0b0101), c1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    d0 = _mm256_fmadd_pd(va, vb, d0);
    c0 = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), c0);
  }
  if (i < n) {
    const __m128d va = _mm_loadu_pd(pa + 2 * i);
    const __m128d vb = _mm_loadu_pd(pb + 2 * i);
    const __m256d wa = _mm256_insertf128_pd(_mm256_setzero_pd(), va, 0);
    const __m256d wb = _mm256_insertf128_pd(_mm256_setzero_pd(), vb, 0);
    d1 = _mm256_fmadd_pd(wa, wb, d1);
    c1 = _mm256_fmadd_pd(wa, _mm256_permute_pd(wb, 0b0101), c1);
  }
  direct = _mm256_add_pd(d0, d1);
  crossed = _mm256_add_pd(c0, c1);
}

}  // namespace

cdouble dotu_avx2(const cdouble* a, const cdouble* b, std::size_t n) {
  __m256d direct, crossed;
  complex_products(a, b, n, direct, crossed);
  return {hsum_alternating(direct), hsum(crossed)};
}

cdouble dotc_avx2(const cdouble* a, const cdouble* b, std::size_t n) {
  __m256d direct, crossed;
  complex_products(a, b, n, direct, crossed);
  return {hsum(direct), hsum_alternating(crossed)};
}

double dist_sq_avx2(const cdouble* a, const cdouble* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  const std::size_t m = 2 * n;
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= m; i += 8) {
    const __m256d d0 =
        _mm256_sub_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(pa + i + 4),
                                     _mm256_loadu_pd(pb + i + 4));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  double tail = 0.0;
  for (; i < m; ++i) {
    const double d = pa[i] - pb[i];
    tail += d * d;
  }
  return hsum(_mm256_add_pd(acc0, acc1)) + tail;
}

void blaschke_avx2(const double* z_re, const double* z_im, std::size_t n,
                   const cdouble* zeros, std::size_t n_zeros, cdouble unit,
                   double* out_re, double* out_im) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d neg_zero = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d zr = _mm256_loadu_pd(z_re + i);
    const __m256d zi = _mm256_loadu_pd(z_im + i);
    __m256d pr = _mm256_set1_pd(unit.real());
    __m256d pi = _mm256_set1_pd(unit.imag());
    for (std::size_t j = 0; j < n_zeros; ++j) {
      const __m256d ar = _mm256_set1_pd(zeros[j].real());
      const __m256d ai = _mm256_set1_pd(zeros[j].imag());
      const __m256d nr = _mm256_sub_pd(zr, ar);
      const __m256d ni = _mm256_sub_pd(zi, ai);
      const __m256d dr =
          _mm256_sub_pd(one, _mm256_fmadd_pd(ar, zr, _mm256_mul_pd(ai, zi)));
      const __m256d di = _mm256_xor_pd(
          _mm256_fmsub_pd(ar, zi, _mm256_mul_pd(ai, zr)), neg_zero);
      const __m256d inv = _mm256_div_pd(
          one, _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di)));
      const __m256d fr =
          _mm256_mul_pd(_mm256_fmadd_pd(nr, dr, _mm256_mul_pd(ni, di)), inv);
      const __m256d fi =
          _mm256_mul_pd(_mm256_fmsub_pd(ni, dr, _mm256_mul_pd(nr, di)), inv);
      const __m256d tr = _mm256_fmsub_pd(pr, fr, _mm256_mul_pd(pi, fi));
      const __m256d ti = _mm256_fmadd_pd(pr, fi, _mm256_mul_pd(pi, fr));
      pr = tr;
      pi = ti;
    }
    _mm256_storeu_pd(out_re + i, pr);
    _mm256_storeu_pd(out_im + i, pi);
  }
  if (i < n) {
    blaschke_scalar(z_re + i, z_im + i, n - i, zeros, n_zeros, unit,
                    out_re + i, out_im + i);
  }
}

}  // namespace extremap::kernels::detail

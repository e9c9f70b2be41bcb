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

// aarch64 always has Advanced SIMD with double-precision lanes, so no runtime
// feature probe is needed beyond the build-time architecture check.

#include <arm_neon.h>

#include "extremap/kernels.hpp"

namespace extremap::kernels::detail {

cdouble dotu_neon(const cdouble* a, const cdouble* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  float64x2_t direct = vdupq_n_f64(0.0);
  float64x2_t crossed = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t va = vld1q_f64(pa + 2 * i);
    const float64x2_t vb = vld1q_f64(pb + 2 * i);
    direct = vfmaq_f64(direct, va, vb);
    crossed = vfmaq_f64(crossed, va, vextq_f64(vb, vb, 1));
  }
  return {vgetq_lane_f64(direct, 0) - vgetq_lane_f64(direct, 1),
          vaddvq_f64(crossed)};
}

cdouble dotc_neon(const cdouble* a, const cdouble* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  float64x2_t direct = vdupq_n_f64(0.0);
  float64x2_t crossed = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t va = vld1q_f64(pa + 2 * i);
    const float64x2_t vb = vld1q_f64(pb + 2 * i);
    direct = vfmaq_f64(direct, va, vb);
    crossed = vfmaq_f64(crossed, va, vextq_f64(vb, vb, 1));
  }
  return {vaddvq_f64(direct),
          vgetq_lane_f64(crossed, 0) - vgetq_lane_f64(crossed, 1)};
}

double dist_sq_neon(const cdouble* a, const cdouble* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  float64x2_t acc0 = vdupq_n_f64(0.0), acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d0 = vsubq_f64(vld1q_f64(pa + 2 * i), vld1q_f64(pb + 2 * i));
    const float64x2_t d1 =
        vsubq_f64(vld1q_f64(pa + 2 * i + 2), vld1q_f64(pb + 2 * i + 2));
    acc0 = vfmaq_f64(acc0, d0, d0);
    acc1 = vfmaq_f64(acc1, d1, d1);
  }
  if (i < n) {
    const float64x2_t d = vsubq_f64(vld1q_f64(pa + 2 * i), vld1q_f64(pb + 2 * i));
    acc0 = vfmaq_f64(acc0, d, d);
  }
  return vaddvq_f64(vaddq_f64(acc0, acc1));
}

void blaschke_neon(const double* z_re, const double* z_im, std::size_t n,
                   const cdouble* zeros, std::size_t n_zeros, cdouble unit,
                   double* out_re, double* out_im) {
  const float64x2_t one = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t zr = vld1q_f64(z_re + i);
    const float64x2_t zi = vld1q_f64(z_im + i);
    float64x2_t pr = vdupq_n_f64(unit.real());
    float64x2_t pi = vdupq_n_f64(unit.imag());
    for (std::size_t j = 0; j < n_zeros; ++j) {
      const float64x2_t ar = vdupq_n_f64(zeros[j].real());
      const float64x2_t ai = vdupq_n_f64(zeros[j].imag());
      const float64x2_t nr = vsubq_f64(zr, ar);
      const float64x2_t ni = vsubq_f64(zi, ai);
      const float64x2_t dr = vsubq_f64(one, vfmaq_f64(vmulq_f64(ai, zi), ar, zr));
      const float64x2_t di = vnegq_f64(vfmsq_f64(vmulq_f64(ar, zi), ai, zr));
      const float64x2_t inv =
          vdivq_f64(one, vfmaq_f64(vmulq_f64(di, di), dr, dr));
      const float64x2_t fr = vmulq_f64(vfmaq_f64(vmulq_f64(ni, di), nr, dr), inv);
      const float64x2_t fi = vmulq_f64(vfmsq_f64(vmulq_f64(ni, dr), nr, di), inv);
      const float64x2_t tr = vfmsq_f64(vmulq_f64(pr, fr), pi, fi);
      const float64x2_t ti = vfmaq_f64(vmulq_f64(pr, fi), pi, fr);
      pr = tr;
      pi = ti;
    }
    vst1q_f64(out_re + i, pr);
    vst1q_f64(out_im + i, pi);
  }
  if (i < n) {
    blaschke_scalar(z_re + i, z_im + i, n - i, zeros, n_zeros, unit,
                    out_re + i, out_im + i);
  }
}

}  // namespace extremap::kernels::detail

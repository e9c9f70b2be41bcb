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

// Data-parallel inner loops used throughout the library. Every kernel has a
// scalar reference implementation; AVX2+FMA (x86-64) and NEON (aarch64)
// variants are compiled into separate translation units and picked at
// runtime. All variants must agree with the scalar reference up to
// floating-point reassociation.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace extremap::kernels {

using cdouble = std::complex<double>;

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

struct Table {
  Isa isa;
  // sum_i a_i * b_i
  cdouble (*dotu)(const cdouble* a, const cdouble* b, std::size_t n);
  // sum_i conj(a_i) * b_i
  cdouble (*dotc)(const cdouble* a, const cdouble* b, std::size_t n);
  // sum_i |a_i - b_i|^2
  double (*dist_sq)(const cdouble* a, const cdouble* b, std::size_t n);
  // Evaluates unit * prod_j (z - a_j) / (1 - conj(a_j) z) at n points given
  // in split (re, im) layout; writes split output.
  void (*blaschke)(const double* z_re, const double* z_im, std::size_t n,
                   const cdouble* zeros, std::size_t n_zeros, cdouble unit,
                   double* out_re, double* out_im);
};

const Table& scalar_table();
// Null when the ISA was not compiled in or the CPU lacks it.
const Table* table_for(Isa isa);
std::vector<Isa> available();

// The table in use. Defaults to the widest supported ISA; the environment
// variable EXTREMAP_ISA=scalar|avx2|neon overrides the default.
const Table& active();
// Returns false (and changes nothing) if `isa` is unavailable.
bool select(Isa isa);

inline cdouble dotu(std::span<const cdouble> a, std::span<const cdouble> b) {
  return active().dotu(a.data(), b.data(), a.size());
}
inline cdouble dotc(std::span<const cdouble> a, std::span<const cdouble> b) {
  return active().dotc(a.data(), b.data(), a.size());
}
inline double dist_sq(std::span<const cdouble> a, std::span<const cdouble> b) {
  return active().dist_sq(a.data(), b.data(), a.size());
}

namespace detail {
cdouble dotu_scalar(const cdouble* a, const cdouble* b, std::size_t n);
cdouble dotc_scalar(const cdouble* a, const cdouble* b, std::size_t n);
double dist_sq_scalar(const cdouble* a, const cdouble* b, std::size_t n);
void blaschke_scalar(const double* z_re, const double* z_im, std::size_t n,
                     const cdouble* zeros, std::size_t n_zeros, cdouble unit,
                     double* out_re, double* out_im);
#if defined(EXTREMAP_HAVE_AVX2)
cdouble dotu_avx2(const cdouble* a, const cdouble* b, std::size_t n);
cdouble dotc_avx2(const cdouble* a, const cdouble* b, std::size_t n);
double dist_sq_avx2(const cdouble* a, const cdouble* b, std::size_t n);
void blaschke_avx2(const double* z_re, const double* z_im, std::size_t n,
                   const cdouble* zeros, std::size_t n_zeros, cdouble unit,
                   double* out_re, double* out_im);
#endif
#if defined(EXTREMAP_HAVE_NEON)
cdouble dotu_neon(const cdouble* a, const cdouble* b, std::size_t n);
cdouble dotc_neon(const cdouble* a, const cdouble* b, std::size_t n);
double dist_sq_neon(const cdouble* a, const cdouble* b, std::size_t n);
void blaschke_neon(const double* z_re, const double* z_im, std::size_t n,
                   const cdouble* zeros, std::size_t n_zeros, cdouble unit,
                   double* out_re, double* out_im);
#endif
}  // namespace detail

}  // namespace extremap::kernels

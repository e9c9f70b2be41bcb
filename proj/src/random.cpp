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

#include "extremap/random.hpp"

#include <cmath>
#include <numbers>

#include "extremap/error.hpp"

namespace extremap {

CMatrix random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols,
                        double scale) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = scale * cdouble(re, im);
    }
  }
  return m;
}

CVector random_unit_vector(Rng& rng, Eigen::Index n) {
  CVector v = random_gaussian(rng, n, 1);
  double nrm = v.norm();
  while (nrm < 1e-6) {
    v = random_gaussian(rng, n, 1);
    nrm = v.norm();
  }
  return v / nrm;
}

CMatrix random_isometry(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  if (rows < cols) {
    throw Error(ErrorCode::InvalidArgument, "isometry needs rows >= cols");
  }
  const CMatrix g = random_gaussian(rng, rows, cols);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  const CMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  // Fix the phase ambiguity of QR so the distribution is Haar.
  for (Eigen::Index j = 0; j < cols; ++j) {
    const cdouble d = r(j, j);
    const double mod = std::abs(d);
    if (mod > 0.0) q.col(j) *= d / mod;
  }
  return q;
}

CMatrix random_unitary(Rng& rng, Eigen::Index n) {
  return random_isometry(rng, n, n);
}

cdouble random_phase(Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, angle(rng));
}

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace extremap

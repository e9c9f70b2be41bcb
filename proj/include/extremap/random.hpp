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

// Seeded random generators for vectors, isometries and frames. Every routine
// draws from a caller-owned engine so results are reproducible per seed.

#include <cstdint>
#include <random>

#include "extremap/numkit.hpp"

namespace extremap {

using Rng = std::mt19937_64;

// Standard complex Gaussian entries (real and imaginary parts N(0, 1/2)),
// scaled by `scale`.
CMatrix random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols,
                        double scale = 1.0);

CVector random_unit_vector(Rng& rng, Eigen::Index n);

// Haar-distributed rows x cols matrix with orthonormal columns (rows >= cols).
CMatrix random_isometry(Rng& rng, Eigen::Index rows, Eigen::Index cols);

CMatrix random_unitary(Rng& rng, Eigen::Index n);

cdouble random_phase(Rng& rng);

int uniform_int(Rng& rng, int lo, int hi);

}  // namespace extremap

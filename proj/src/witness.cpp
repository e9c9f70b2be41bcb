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

#include <cmath>
#include <functional>
#include <numbers>

#include "extremap/error.hpp"
#include "extremap/extremal.hpp"
#include "extremap/random.hpp"

namespace extremap {

namespace {

using Pullback = std::function<Functional(const CVector&, const CVector&)>;

std::vector<CVector> structured_candidates(int h) {
  std::vector<CVector> out;
  for (int a = 0; a < h; ++a) out.push_back(CVector::Unit(h, a));
  const cdouble phases[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int a = 0; a < h; ++a) {
    for (int b = a + 1; b < h; ++b) {
      for (cdouble w : phases) {
        CVector v = CVector::Zero(h);
        v(a) = 1.0 / std::numbers::sqrt2;
        v(b) = w / std::numbers::sqrt2;
        out.push_back(std::move(v));
      }
    }
  }
  return out;
}

struct Search {
  const Pullback& pull;
  int out_block;
  double tol;
  Witness best;
  bool have_best = false;

  // True when the candidate fails extremity (search stops).
  bool consider(const CVector& x, const CVector& y) {
    const Functional rho = pull(x, y);
    const bool fails = !is_extreme(functional_extremity(rho, tol));
    const double defect = extremity_defect(rho);
    if (fails || !have_best || defect > best.defect) {
      best = Witness{out_block, x, y, defect, fails};
      have_best = true;
    }
    return fails;
  }
};

Witness run_search(const Pullback& pull, int out_block, int h, double tol,
                   std::uint64_t seed, int random_samples) {
  Search s{pull, out_block, tol, {}, false};
  const std::vector<CVector> cands = structured_candidates(h);
  // Matrix units first.
  for (int a = 0; a < h; ++a) {
    for (int b = 0; b < h; ++b) {
      if (s.consider(cands[static_cast<std::size_t>(a)], cands[static_cast<std::size_t>(b)])) return s.best;
    }
  }
  for (std::size_t a = 0; a < cands.size(); ++a) {
    for (std::size_t b = 0; b < cands.size(); ++b) {
      if (a < static_cast<std::size_t>(h) && b < static_cast<std::size_t>(h)) continue;
      if (s.consider(cands[a], cands[b])) return s.best;
    }
  }
  Rng rng(seed);
  for (int i = 0; i < random_samples; ++i) {
    const CVector x = random_unit_vector(rng, h);
    const CVector y = random_unit_vector(rng, h);
    if (s.consider(x, y)) return s.best;
  }
  return s.best;
}

}  // namespace

double extremity_defect(const Functional& rho) {
  int dominant = -1;
  double dominant_norm = -1.0;
  double total = 0.0;
  for (int b = 0; b < rho.shape.count(); ++b) {
    const double t = trace_norm(rho.reps[static_cast<std::size_t>(b)]);
    total += t;
    if (t > dominant_norm) {
      dominant_norm = t;
      dominant = b;
    }
  }
  if (dominant < 0 || dominant_norm <= 0.0) return 1.0;
  const Eigen::VectorXd s =
      singular_values(rho.reps[static_cast<std::size_t>(dominant)]);
  const double off_block = total - dominant_norm;
  const double tail = dominant_norm - s(0);
  return off_block + tail + std::abs(s(0) - 1.0);
}

Witness search_witness(const Superoperator& psi, int out_block, double tol,
                       std::uint64_t seed, int random_samples) {
  const Pullback pull = [&](const CVector& x, const CVector& y) {
    return pullback(psi, out_block, x, y);
  };
  return run_search(pull, out_block, psi.out_shape.dim(out_block), tol, seed,
                    random_samples);
}

Witness search_witness(const BlockMap& map, double tol, std::uint64_t seed,
                       int random_samples) {
  const BlockShape shape({map.k});
  const Pullback pull = [&](const CVector& x, const CVector& y) {
    return Functional{shape, {pullback(map, x, y)}};
  };
  return run_search(pull, 0, map.h, tol, seed, random_samples);
}

std::optional<Witness> find_witness(const Superoperator& psi, int samples,
                                    std::uint64_t seed, double tol) {
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "samples must be >= 1");
  Rng rng(seed);
  for (int b = 0; b < psi.out_shape.count(); ++b) {
    const int h = psi.out_shape.dim(b);
    for (int i = 0; i < samples; ++i) {
      const CVector x = random_unit_vector(rng, h);
      const CVector y = random_unit_vector(rng, h);
      const Functional rho = pullback(psi, b, x, y);
      if (!is_extreme(functional_extremity(rho, tol))) {
        return Witness{b, x, y, extremity_defect(rho), true};
      }
    }
  }
  return std::nullopt;
}

bool replay_witness(const Superoperator& psi, const Witness& w, double tol) {
  const Functional rho = pullback(psi, w.out_block, w.x, w.y);
  return !is_extreme(functional_extremity(rho, tol));
}

}  // namespace extremap

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

// Linear maps between block algebras, stored as the images of all input
// matrix units.

#include <vector>

#include "extremap/algebra.hpp"

namespace extremap {

// A map M_k -> M_h between single blocks; images[p * k + q] = psi(e_pq).
struct BlockMap {
  int k = 0;
  int h = 0;
  std::vector<CMatrix> images;

  static BlockMap zero(int k, int h);

  const CMatrix& image(int p, int q) const {
    return images[static_cast<std::size_t>(p * k + q)];
  }
  CMatrix& image(int p, int q) { return images[static_cast<std::size_t>(p * k + q)]; }

  CMatrix apply(const CMatrix& t) const;
  void validate() const;
};

// Max over matrix units of the Frobenius distance between images.
double max_unit_residual(const BlockMap& a, const BlockMap& b);

// Representative (k x k) of the pull-back of B -> <B x, y> through the map.
CMatrix pullback(const BlockMap& map, const CVector& x, const CVector& y);

struct Superoperator {
  BlockShape in_shape;
  BlockShape out_shape;
  // Indexed by in_shape.unit_offset(b) + p * n_b + q.
  std::vector<BlockElement> images;

  static Superoperator zero(const BlockShape& in, const BlockShape& out);

  const BlockElement& image(int block, int p, int q) const;
  BlockElement& image(int block, int p, int q);

  BlockElement apply(const BlockElement& a) const;
  void validate() const;
};

double max_unit_residual(const Superoperator& a, const Superoperator& b);

// psi restricted to input block `in_block` and projected on `out_block`.
BlockMap restrict_map(const Superoperator& psi, int in_block, int out_block);

// Single-block superoperator [k] -> [h].
Superoperator to_superoperator(const BlockMap& map);

// Adds `map` into psi on the route in_block -> out_block.
void add_route(Superoperator& psi, int in_block, int out_block,
               const BlockMap& map);

// psi^*(rho): the functional A -> rho(psi(A)).
Functional pullback(const Superoperator& psi, const Functional& rho);
// psi^* of B -> <B_out x, y>.
Functional pullback(const Superoperator& psi, int out_block, const CVector& x,
                    const CVector& y);

}  // namespace extremap

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

#include "extremap/superoperator.hpp"

#include <string>

#include "extremap/error.hpp"

namespace extremap {

BlockMap BlockMap::zero(int k, int h) {
  if (k < 1 || h < 1) throw Error(ErrorCode::InvalidArgument, "block map dims must be >= 1");
  BlockMap m{k, h, {}};
  m.images.assign(static_cast<std::size_t>(k * k), CMatrix::Zero(h, h));
  return m;
}

CMatrix BlockMap::apply(const CMatrix& t) const {
  if (t.rows() != k || t.cols() != k) {
    throw Error(ErrorCode::ShapeMismatch, "BlockMap::apply input size");
  }
  CMatrix out = CMatrix::Zero(h, h);
  for (int p = 0; p < k; ++p) {
    for (int q = 0; q < k; ++q) {
      if (t(p, q) != cdouble(0.0)) out += t(p, q) * image(p, q);
    }
  }
  return out;
}

void BlockMap::validate() const {
  if (k < 1 || h < 1 || images.size() != static_cast<std::size_t>(k * k)) {
    throw Error(ErrorCode::ShapeMismatch, "BlockMap image count");
  }
  for (const auto& m : images) {
    if (m.rows() != h || m.cols() != h) {
      throw Error(ErrorCode::ShapeMismatch, "BlockMap image size");
    }
    require_finite(m, "BlockMap image");
  }
}

double max_unit_residual(const BlockMap& a, const BlockMap& b) {
  if (a.k != b.k || a.h != b.h) {
    throw Error(ErrorCode::ShapeMismatch, "max_unit_residual dims");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.images.size(); ++i) {
    worst = std::max(worst, frobenius_distance(a.images[i], b.images[i]));
  }
  return worst;
}

CMatrix pullback(const BlockMap& map, const CVector& x, const CVector& y) {
  if (x.size() != map.h || y.size() != map.h) {
    throw Error(ErrorCode::ShapeMismatch, "pullback vector length");
  }
  // (S)_{qp} = <psi(e_pq) x, y> = y^H psi(e_pq) x
  CMatrix s(map.k, map.k);
  for (int p = 0; p < map.k; ++p) {
    for (int q = 0; q < map.k; ++q) {
      const CVector bx = map.image(p, q) * x;
      s(q, p) = inner(bx, y);
    }
  }
  return s;
}

Superoperator Superoperator::zero(const BlockShape& in, const BlockShape& out) {
  Superoperator s{in, out, {}};
  s.images.assign(static_cast<std::size_t>(in.unit_count()), BlockElement::zero(out));
  return s;
}

const BlockElement& Superoperator::image(int block, int p, int q) const {
  const int n = in_shape.dim(block);
  return images.at(static_cast<std::size_t>(in_shape.unit_offset(block) + p * n + q));
}

BlockElement& Superoperator::image(int block, int p, int q) {
  const int n = in_shape.dim(block);
  return images.at(static_cast<std::size_t>(in_shape.unit_offset(block) + p * n + q));
}

BlockElement Superoperator::apply(const BlockElement& a) const {
  if (!(a.shape == in_shape)) {
    throw Error(ErrorCode::ShapeMismatch, "Superoperator::apply input shape");
  }
  BlockElement out = BlockElement::zero(out_shape);
  for (int b = 0; b < in_shape.count(); ++b) {
    const CMatrix& t = a.blocks[static_cast<std::size_t>(b)];
    const int n = in_shape.dim(b);
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        const cdouble c = t(p, q);
        if (c == cdouble(0.0)) continue;
        const BlockElement& img = image(b, p, q);
        for (std::size_t o = 0; o < out.blocks.size(); ++o) {
          out.blocks[o] += c * img.blocks[o];
        }
      }
    }
  }
  return out;
}

void Superoperator::validate() const {
  if (images.size() != static_cast<std::size_t>(in_shape.unit_count())) {
    throw Error(ErrorCode::ShapeMismatch,
                "superoperator needs one image per input matrix unit");
  }
  for (const auto& img : images) {
    if (!(img.shape == out_shape)) {
      throw Error(ErrorCode::ShapeMismatch, "image shape differs from out_shape");
    }
    img.validate();
  }
}

double max_unit_residual(const Superoperator& a, const Superoperator& b) {
  if (!(a.in_shape == b.in_shape) || !(a.out_shape == b.out_shape)) {
    throw Error(ErrorCode::ShapeMismatch, "max_unit_residual shapes");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.images.size(); ++i) {
    worst = std::max(worst, max_block_distance(a.images[i], b.images[i]));
  }
  return worst;
}

BlockMap restrict_map(const Superoperator& psi, int in_block, int out_block) {
  const int k = psi.in_shape.dim(in_block);
  const int h = psi.out_shape.dim(out_block);
  BlockMap m = BlockMap::zero(k, h);
  for (int p = 0; p < k; ++p) {
    for (int q = 0; q < k; ++q) {
      m.image(p, q) = psi.image(in_block, p, q).blocks[static_cast<std::size_t>(out_block)];
    }
  }
  return m;
}

Superoperator to_superoperator(const BlockMap& map) {
  Superoperator s = Superoperator::zero(BlockShape({map.k}), BlockShape({map.h}));
  add_route(s, 0, 0, map);
  return s;
}

void add_route(Superoperator& psi, int in_block, int out_block,
               const BlockMap& map) {
  if (psi.in_shape.dim(in_block) != map.k || psi.out_shape.dim(out_block) != map.h) {
    throw Error(ErrorCode::ShapeMismatch,
                "route " + std::to_string(in_block) + "->" +
                    std::to_string(out_block) + " does not match map dims");
  }
  for (int p = 0; p < map.k; ++p) {
    for (int q = 0; q < map.k; ++q) {
      psi.image(in_block, p, q).blocks[static_cast<std::size_t>(out_block)] +=
          map.image(p, q);
    }
  }
}

Functional pullback(const Superoperator& psi, const Functional& rho) {
  if (!(rho.shape == psi.out_shape)) {
    throw Error(ErrorCode::ShapeMismatch, "pullback functional shape");
  }
  Functional out = Functional::zero(psi.in_shape);
  for (int b = 0; b < psi.in_shape.count(); ++b) {
    const int n = psi.in_shape.dim(b);
    CMatrix& s = out.reps[static_cast<std::size_t>(b)];
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        s(q, p) = functional_apply(rho, psi.image(b, p, q));
      }
    }
  }
  return out;
}

Functional pullback(const Superoperator& psi, int out_block, const CVector& x,
                    const CVector& y) {
  const int h = psi.out_shape.dim(out_block);
  if (x.size() != h || y.size() != h) {
    throw Error(ErrorCode::ShapeMismatch, "pullback vector length");
  }
  Functional out = Functional::zero(psi.in_shape);
  for (int b = 0; b < psi.in_shape.count(); ++b) {
    const int n = psi.in_shape.dim(b);
    CMatrix& s = out.reps[static_cast<std::size_t>(b)];
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        const CMatrix& img =
            psi.image(b, p, q).blocks[static_cast<std::size_t>(out_block)];
        s(q, p) = inner(img * x, y);
      }
    }
  }
  return out;
}

}  // namespace extremap

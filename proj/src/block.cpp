/*
 * Copyright 2026 The fracspec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fracspec/block.hpp"

#include <algorithm>

#include "fracspec/error.hpp"

namespace fracspec {

namespace {

void add_into(std::optional<BandedMat>& acc, const BandedMat& m) {
  if (acc) {
    *acc += m;
  } else {
    acc = m;
  }
}

}  // namespace

BlockOp BlockOp::diagonal(BandedMat a, BandedMat b, SpacePair domain, SpacePair range) {
  if (a.rows() != b.rows()) throw ShapeMismatch("diagonal blocks differ in size");
  BlockOp op;
  op.n = a.rows();
  op.blocks[0][0] = std::move(a);
  op.blocks[1][1] = std::move(b);
  op.domain = domain;
  op.range = range;
  return op;
}

BlockOp BlockOp::section(std::size_t size) const {
  BlockOp out = *this;
  out.n = size;
  for (auto& row : out.blocks) {
    for (auto& b : row) {
      if (b) b = b->section(size);
    }
  }
  return out;
}

BlockOp operator*(const BlockOp& a, const BlockOp& b) {
  if (a.domain != b.range) {
    throw SpaceMismatch("composing operator on " + a.domain.str() + " with operator into " +
                        b.range.str());
  }
  if (a.n != b.n) throw ShapeMismatch("composing block operators of different sizes");
  BlockOp out;
  out.n = a.n;
  out.domain = b.domain;
  out.range = a.range;
  out.upper_dense = a.upper_dense || b.upper_dense;
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) {
      for (int r = 0; r < 2; ++r) {
        if (a.blocks[p][r] && b.blocks[r][q]) add_into(out.blocks[p][q], *a.blocks[p][r] * *b.blocks[r][q]);
      }
    }
  }
  return out;
}

BlockOp operator+(const BlockOp& a, const BlockOp& b) {
  if (a.domain != b.domain || a.range != b.range) {
    throw SpaceMismatch("adding operators " + a.domain.str() + " -> " + a.range.str() + " and " +
                        b.domain.str() + " -> " + b.range.str());
  }
  if (a.n != b.n) throw ShapeMismatch("adding block operators of different sizes");
  BlockOp out = a;
  out.upper_dense = a.upper_dense || b.upper_dense;
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) {
      if (b.blocks[p][q]) add_into(out.blocks[p][q], *b.blocks[p][q]);
    }
  }
  return out;
}

BlockOp operator*(Scalar s, const BlockOp& a) {
  BlockOp out = a;
  for (auto& row : out.blocks) {
    for (auto& b : row) {
      if (b) *b *= s;
    }
  }
  return out;
}

BlockOp truncate(const BlockOp& op, std::size_t n) { return op.section(n); }

BandedMat interleave_matrix(const BlockOp& op) {
  const std::size_t n = op.n;
  std::size_t lower = 0;
  std::size_t upper = 0;
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) {
      const auto& b = op.blocks[p][q];
      if (!b) continue;
      if (b->rows() != n || b->cols() != n) throw ShapeMismatch("block is not n x n");
      lower = std::max<std::size_t>(lower, 2 * b->lower() + (p > q ? 1 : 0));
      upper = std::max<std::size_t>(upper, 2 * b->upper() + (q > p ? 1 : 0));
    }
  }
  BandedMat out(2 * n, 2 * n, lower, upper);
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) {
      const auto& b = op.blocks[p][q];
      if (!b) continue;
      for (const auto& e : sparsity(*b)) {
        out.at(2 * e.row + static_cast<std::size_t>(p), 2 * e.col + static_cast<std::size_t>(q)) = e.value;
      }
    }
  }
  return out;
}

std::variant<BandedMat, LowerBandedMat> interleave(const BlockOp& op) {
  BandedMat m = interleave_matrix(op);
  if (op.upper_dense) return LowerBandedMat(m);
  return m;
}

Vector interleave_vectors(const Vector& a, const Vector& b) {
  const std::size_t n = std::max(a.size(), b.size());
  Vector out(2 * n, Scalar{});
  for (std::size_t i = 0; i < a.size(); ++i) out[2 * i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[2 * i + 1] = b[i];
  return out;
}

std::array<Vector, 2> deinterleave(const Vector& v) {
  std::array<Vector, 2> out;
  out[0].reserve(v.size() / 2 + 1);
  out[1].reserve(v.size() / 2);
  for (std::size_t i = 0; i < v.size(); ++i) out[i % 2].push_back(v[i]);
  return out;
}

}  // namespace fracspec

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

#ifndef FRACSPEC_BLOCK_HPP
#define FRACSPEC_BLOCK_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <variant>

#include "fracspec/banded.hpp"
#include "fracspec/space.hpp"

namespace fracspec {

/**
 * 2x2 block operator between direct sums. Absent blocks are zero. Every
 * present block is n x n. upper_dense marks operators carrying connection
 * blocks, whose interleaved form is only lower banded.
 */
struct BlockOp {
  std::array<std::array<std::optional<BandedMat>, 2>, 2> blocks;
  SpacePair domain;
  SpacePair range;
  std::size_t n = 0;
  bool upper_dense = false;

  const std::optional<BandedMat>& block(int p, int q) const { return blocks[p][q]; }

  /// Block-diagonal operator.
  static BlockOp diagonal(BandedMat a, BandedMat b, SpacePair domain, SpacePair range);

  /// Leading n x n section of every block.
  BlockOp section(std::size_t n) const;
};

/// Composition a*b; a.domain must equal b.range.
BlockOp operator*(const BlockOp& a, const BlockOp& b);
/// Sum of operators with identical domain and range.
BlockOp operator+(const BlockOp& a, const BlockOp& b);
BlockOp operator*(Scalar s, const BlockOp& a);

/// Same as section(n); named for the finite-section step.
BlockOp truncate(const BlockOp& op, std::size_t n);

/// Interleaves (a_0, b_0, a_1, b_1, ...): entry (2i+p, 2j+q) is
/// block[p][q](i,j). Banded blocks with bandwidths <= (l,u) give bandwidths
/// <= (2l+1, 2u+1).
BandedMat interleave_matrix(const BlockOp& op);

/// interleave_matrix, returned as LowerBandedMat when op.upper_dense.
std::variant<BandedMat, LowerBandedMat> interleave(const BlockOp& op);

Vector interleave_vectors(const Vector& a, const Vector& b);
/// Splits an interleaved vector into its even and odd entries.
std::array<Vector, 2> deinterleave(const Vector& v);

}  // namespace fracspec

#endif  // FRACSPEC_BLOCK_HPP

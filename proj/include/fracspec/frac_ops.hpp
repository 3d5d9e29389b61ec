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

#ifndef FRACSPEC_FRAC_OPS_HPP
#define FRACSPEC_FRAC_OPS_HPP

#include <cstddef>
#include <optional>

#include "fracspec/banded.hpp"
#include "fracspec/block.hpp"
#include "fracspec/space.hpp"
#include "fracspec/ultraspherical.hpp"

namespace fracspec {

/// Which half of the solution space an operator acts on: Legendre P or
/// sqrt(1+x) U.
enum class Part { kP, kUhalf };

/// Half-integral P -> U_{1/2}. Bandwidths (0, 1).
BandedMat op_Qhalf_P(std::size_t n);

/// Half-integral U_{1/2} -> P. Bandwidths (1, 0).
BandedMat op_Qhalf_U(std::size_t n);

/// Q^order on the given part. Half-integer orders alternate between P and
/// U_{1/2}, integer orders map a part to itself.
BandedMat op_Q_power(Part part, HalfInt order, std::size_t n);

/// Riemann-Liouville half-derivative: P -> U_{-1/2} or U_{1/2} -> C^(3/2).
BandedMat op_Dhalf(Part part, std::size_t n);

/// d^m/dx^m on P, into C^(m+1/2). m >= 1.
BandedMat op_D_P_int(int m, std::size_t n);

/// D^{m+1/2} on U_{1/2}, into C^(m+3/2). m >= 0.
BandedMat op_D_Uhalf_halfint(int m, std::size_t n);

/// d/dx as C^(lambda)_mu -> C^(lambda+1)_{mu-1}. Bandwidths (0, 2).
BandedMat op_D_weighted(HalfInt mu, HalfInt lambda, std::size_t n);

/// d^m/dx^m on U_{1/2}, into C^(m+1)_{-m+1/2}. m >= 1.
BandedMat op_D_Uhalf_int(int m, std::size_t n);

/// D^{m+1/2} on P, into C^(m+1)_{-m-1/2}. m >= 0.
BandedMat op_D_P_halfint(int m, std::size_t n);

/// Q^order on P (+) U_{1/2}.
BlockOp op_block_Q(HalfInt order, std::size_t n);

/// Riemann-Liouville D^order on P (+) U_{1/2}, into the level-order range.
BlockOp op_block_D(HalfInt order, std::size_t n);

/// Conversion from the level below `level` (level - 1/2) up to `level`.
BlockOp op_block_E(HalfInt level, std::size_t n);

/// E_top E_{top-1/2} ... E_{from+1/2}; identity when from == top.
BlockOp op_block_E_chain(HalfInt from, HalfInt top, std::size_t n);

/// Multiplication by r + sqrt(1+x) s on the level range space. r and s are
/// given in Chebyshev T (lambda = 0) or an ultraspherical basis reachable
/// by conversion. s is only allowed at level 0, where the off-diagonal
/// blocks are dense above the diagonal.
BlockOp op_block_mult(HalfInt level, const Fun& r, const std::optional<Fun>& s, std::size_t n);

/// Identity on the level range space.
BlockOp op_block_identity(HalfInt level, std::size_t n);

/// Interleaved row evaluating an element of `spaces` at x: entry 2k is the
/// first basis function k, entry 2k+1 the second.
FunctionalRow boundary_row(const SpacePair& spaces, double x, std::size_t n);

/// Coefficients of f in C^(lambda) (unweighted).
Vector coeffs_in(const Fun& f, HalfInt lambda);

}  // namespace fracspec

#endif  // FRACSPEC_FRAC_OPS_HPP

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

#ifndef FRACSPEC_OPERATORS_HPP
#define FRACSPEC_OPERATORS_HPP

#include <cstddef>
#include <span>

#include "fracspec/banded.hpp"
#include "fracspec/space.hpp"

namespace fracspec {

// Every factory returns the leading n x n section of the infinite operator.

/// Conversion C^(lambda)_gamma -> C^(lambda+1)_gamma. Bandwidths (0, 2).
BandedMat op_S(HalfInt lambda, std::size_t n);

/// Multiplication by (1+x) viewed as C^(lambda)_gamma -> C^(lambda)_{gamma-1}.
/// Tridiagonal.
BandedMat op_R(HalfInt lambda, std::size_t n);

/// Multiplication by x in C^(lambda). Tridiagonal with zero diagonal.
BandedMat op_J(HalfInt lambda, std::size_t n);

/// Multiplication by p = sum p_coeffs[k] C_k^(lambda). Bandwidth deg p.
BandedMat op_mult(HalfInt lambda, std::span<const Scalar> p_coeffs, std::size_t n);

/// m-th derivative C^(lambda) -> C^(lambda+m): 2^m (lambda)_m on the m-th
/// superdiagonal.
BandedMat op_D_int(HalfInt lambda, int m, std::size_t n);

/// Legendre -> Chebyshev U coefficients of the same polynomial.
/// Dense upper triangular.
BandedMat op_connect_P_to_U(std::size_t n);

/// Chebyshev U -> Legendre. Dense upper triangular.
BandedMat op_connect_U_to_P(std::size_t n);

}  // namespace fracspec

#endif  // FRACSPEC_OPERATORS_HPP

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

#ifndef FRACSPEC_TRANSFORMS_HPP
#define FRACSPEC_TRANSFORMS_HPP

#include <cstddef>
#include <functional>

#include "fracspec/scalar.hpp"
#include "fracspec/space.hpp"

namespace fracspec {

using PointFn = std::function<Scalar(double)>;

/// Chebyshev T coefficients of f, sampled on 9, 17, 33, ... second-kind
/// points until the trailing max(3, d/50) coefficients fall below
/// tol * max|c|. Trailing coefficients below that level are dropped.
/// Throws NoConvergence past max_points samples.
Vector chebT_coeffs_adaptive(const PointFn& f, double tol, std::size_t max_points = 65537);

/// T -> U coefficients: T_0 = U_0, T_1 = U_1/2, T_n = (U_n - U_{n-2})/2.
Vector convert_T_to_U(const Vector& t);

/// T -> Legendre coefficients. O(d^2), exact up to rounding.
Vector cheb_to_legendre(const Vector& t);

/// Legendre -> T coefficients. O(d^2).
Vector legendre_to_cheb(const Vector& p);

/// T coefficients -> C^(lambda) coefficients of the same polynomial, for
/// lambda in {1/2, 1, 3/2, 2, ...}; lambda = 0 returns the input.
Vector cheb_to_ultra(const Vector& t, HalfInt lambda);

/// T coefficients of (1+x) p(x).
Vector cheb_times_one_plus_x(const Vector& t);

}  // namespace fracspec

#endif  // FRACSPEC_TRANSFORMS_HPP

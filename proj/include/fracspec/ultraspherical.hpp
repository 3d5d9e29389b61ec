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

#ifndef FRACSPEC_ULTRASPHERICAL_HPP
#define FRACSPEC_ULTRASPHERICAL_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "fracspec/scalar.hpp"
#include "fracspec/space.hpp"

namespace fracspec {

/// Sum of coeffs[n] C_n^(lambda)(x) by Clenshaw's backward recurrence.
/// lambda = 0 selects Chebyshev T.
Scalar eval_ultra(HalfInt lambda, std::span<const Scalar> coeffs, double x);

/// Sum of coeffs[n] T_n(x).
Scalar eval_chebT(std::span<const Scalar> coeffs, double x);

/// C_0^(lambda)(x), ..., C_{n-1}^(lambda)(x) by forward recurrence
/// (T_n when lambda = 0).
std::vector<double> ultra_values(HalfInt lambda, std::size_t n, double x);

/// An expansion sum c_n (1+x)^gamma C_n^(lambda)(x).
struct Fun {
  SpaceDesc space;
  Vector coeffs;

  /// Drops trailing coefficients with |c| <= tol * max|c|.
  Fun& trim(double tol);
};

/// Direct-sum element first + second.
struct SumFun {
  Fun first;
  Fun second;
};

/// Evaluates f at x, including the (1+x)^gamma weight. Throws
/// WeightSingularity for gamma < 0 at x = -1.
Scalar eval_fun(const Fun& f, double x);

Scalar eval_sumfun(const SumFun& u, double x);

/// Drops trailing entries with |c| <= tol * max|c| (keeps at least one).
void trim_trailing(Vector& c, double tol);

}  // namespace fracspec

#endif  // FRACSPEC_ULTRASPHERICAL_HPP

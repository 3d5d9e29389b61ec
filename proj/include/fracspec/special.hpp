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

#ifndef FRACSPEC_SPECIAL_HPP
#define FRACSPEC_SPECIAL_HPP

#include <cstdint>

namespace fracspec {

/// Complementary error function for z >= 0. Throws DomainError for z < 0.
double erfc(double z);

/// Error function, any real z.
double erf(double z);

/// erfc extended to negative arguments by erfc(-z) = 2 - erfc(z).
double erfc_any(double z);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational operator*(Rational a, Rational b);

enum class GammaForm {
  kHalf,        ///< Gamma(m+1/2)/sqrt(pi)
  kThreeHalves  ///< Gamma(m+3/2)/sqrt(pi)
};

/// Exact Gamma(m+1/2)/sqrt(pi) = (2m)!/(4^m m!) or Gamma(m+3/2)/sqrt(pi).
/// Throws InvalidParameter if the result overflows 64-bit integers.
Rational gamma_half_ratio(int m, GammaForm form);

}  // namespace fracspec

#endif  // FRACSPEC_SPECIAL_HPP

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

#include "fracspec/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "fracspec/error.hpp"

namespace fracspec {

namespace {

constexpr double kTwoOverSqrtPi = 2.0 * std::numbers::inv_sqrtpi;
constexpr double kSeriesLimit = 0.5;

// Maclaurin series sum (-1)^n z^(2n+1) / (n! (2n+1)), scaled by 2/sqrt(pi).
double erf_series(double z) {
  const double z2 = z * z;
  double term = z;
  double sum = z;
  for (int n = 1; n < 60; ++n) {
    term *= -z2 / n;
    const double add = term / (2 * n + 1);
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
  }
  return kTwoOverSqrtPi * sum;
}

// exp(-z^2) with the rounding error of z*z folded back in.
double exp_minus_square(double z) {
  const double hi = z * z;
  const double lo = std::fma(z, z, -hi);
  return std::exp(-hi) * (1.0 - lo);
}

// Continued fraction erfc z = exp(-z^2)/sqrt(pi) / (z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))),
// evaluated bottom up.
double erfc_fraction(double z) {
  const double depth = 0.5 * std::pow(40.0 / z, 2.0) + 16.0;
  const int n = static_cast<int>(std::min(depth, 20000.0));
  double t = z;
  for (int k = n; k >= 1; --k) t = z + 0.5 * k / t;
  return exp_minus_square(z) * std::numbers::inv_sqrtpi / t;
}

bool mul_ok(std::int64_t a, std::int64_t b, std::int64_t& out) {
  return !__builtin_mul_overflow(a, b, &out);
}

}  // namespace

double erfc(double z) {
  if (std::isnan(z)) return z;
  if (z < 0) throw DomainError("erfc: argument " + std::to_string(z) + " is negative");
  if (z <= kSeriesLimit) return 1.0 - erf_series(z);
  if (z > 27.3) return 0.0;
  return erfc_fraction(z);
}

double erf(double z) {
  if (std::isnan(z)) return z;
  if (z < 0) return -erf(-z);
  if (z <= 1.0) return erf_series(z);
  return 1.0 - erfc(z);
}

double erfc_any(double z) { return z < 0 ? 2.0 - erfc(-z) : erfc(z); }

Rational operator*(Rational a, Rational b) {
  const std::int64_t g1 = std::gcd(a.num, b.den);
  const std::int64_t g2 = std::gcd(b.num, a.den);
  if (g1 > 1) {
    a.num /= g1;
    b.den /= g1;
  }
  if (g2 > 1) {
    b.num /= g2;
    a.den /= g2;
  }
  Rational r;
  if (!mul_ok(a.num, b.num, r.num) || !mul_ok(a.den, b.den, r.den)) {
    throw InvalidParameter("rational overflow");
  }
  return r;
}

Rational gamma_half_ratio(int m, GammaForm form) {
  if (m < 0) throw InvalidParameter("gamma_half_ratio: m must be nonnegative");
  const int top = form == GammaForm::kHalf ? m : m + 1;
  Rational r{1, 1};
  // Gamma(k+3/2) = (k+1/2) Gamma(k+1/2)
  for (int k = 0; k < top; ++k) r = r * Rational{2 * k + 1, 2};
  return r;
}

}  // namespace fracspec

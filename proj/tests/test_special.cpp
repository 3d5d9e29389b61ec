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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fracspec/error.hpp"
#include "fracspec/special.hpp"
#include "test_support.hpp"

using namespace fracspec;
namespace ft = fracspec::testing;

TEST_SUITE("special") {
  TEST_CASE("erfc reference values") {
    CHECK(fracspec::erfc(0.0) == 1.0);
    CHECK(std::abs(fracspec::erfc(1.0) - 0.15729920705028513) <= 1e-15 * 0.15729920705028513);
    CHECK(std::abs(std::exp(1.0) * fracspec::erfc(1.0) - 0.4275835761558070) < 1e-15);
    CHECK_THROWS_AS(fracspec::erfc(-0.1), DomainError);
    CHECK(fracspec::erfc(30.0) == 0.0);
  }

  TEST_CASE("erfc against the system library on [0, 6]") {
    double prev = 2.0;
    for (int k = 0; k <= 600; ++k) {
      const double z = 0.01 * k;
      const double v = fracspec::erfc(z);
      const double ref = std::erfc(z);
      CHECK(std::abs(v - ref) <= 1e-15 * ref);
      CHECK(v < prev);
      prev = v;
    }
  }

  TEST_CASE("erfc + erf = 1 with an independent series") {
    for (int k = 0; k < 20; ++k) {
      const double z = 2.0 * k / 19.0;
      CHECK(std::abs(fracspec::erfc(z) + ft::erf_series(z) - 1.0) < 1e-14);
      CHECK(std::abs(fracspec::erf(z) - ft::erf_series(z)) < 1e-14);
    }
    CHECK(std::abs(erfc_any(-0.5) - std::erfc(-0.5)) < 1e-15);
  }

  TEST_CASE("half-integer gamma ratios") {
    CHECK(gamma_half_ratio(0, GammaForm::kHalf) == Rational{1, 1});
    CHECK(gamma_half_ratio(1, GammaForm::kHalf) == Rational{1, 2});
    CHECK(gamma_half_ratio(2, GammaForm::kThreeHalves) == Rational{15, 8});
    for (int m = 0; m < 12; ++m) {
      // ratio(m+1) = (m + 1/2) ratio(m), exactly
      CHECK(gamma_half_ratio(m + 1, GammaForm::kHalf) ==
            gamma_half_ratio(m, GammaForm::kHalf) * Rational{2 * m + 1, 2});
      CHECK(gamma_half_ratio(m, GammaForm::kThreeHalves) == gamma_half_ratio(m + 1, GammaForm::kHalf));
      CHECK(gamma_half_ratio(m, GammaForm::kHalf).value() ==
            doctest::Approx(std::tgamma(m + 0.5) / std::sqrt(std::numbers::pi)).epsilon(1e-14));
    }
  }
}

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

// Worked problems shared by the unit and acceptance tests.

#ifndef FRACSPEC_TESTS_EXAMPLES_HPP
#define FRACSPEC_TESTS_EXAMPLES_HPP

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracspec/solver.hpp"
#include "fracspec/special.hpp"

namespace fracspec::testing {

inline constexpr HalfInt kOneHalf = HalfInt::from_twice(1);

/// e^{1+x} erfc(sqrt(1+x)), the shared relaxation solution.
inline double relaxation_exact(double x) { return std::exp(1 + x) * fracspec::erfc(std::sqrt(1 + x)); }

/// u + Q^{1/2} u = 1.
inline ProblemSpec abel() {
  ProblemSpec p;
  p.terms = {Term::identity(), Term::integral(kOneHalf)};
  p.rhs = CoeffFn::constant(1.0);
  return p;
}

/// u + e^{-(1+x)/2} Q^{1/2}[e^{(1+x)/2} u] = e^{-(1+x)/2}.
inline ProblemSpec abel_exponential() {
  const auto decay = [](double x) { return Scalar(std::exp(-(1 + x) / 2)); };
  const auto growth = [](double x) { return Scalar(std::exp((1 + x) / 2)); };
  ProblemSpec p;
  p.terms = {Term::identity(), Term::integral(kOneHalf, CoeffFn::function(decay), CoeffFn::function(growth))};
  p.rhs = CoeffFn::function(decay);
  return p;
}

inline double abel_exponential_exact(double x) {
  return std::exp((1 + x) / 2) * fracspec::erfc(std::sqrt(1 + x));
}

/// u + (-1 + erf(sqrt(1+x))) Q^{1/2} u = 1, written with the weighted part
/// sqrt(1+x) * erf(sqrt(1+x)) / sqrt(1+x).
inline ProblemSpec abel_weighted() {
  const auto s = [](double x) {
    const double t = std::sqrt(1 + x);
    return Scalar(t < 1e-8 ? 2 / std::sqrt(std::numbers::pi) : fracspec::erf(t) / t);
  };
  ProblemSpec p;
  p.terms = {Term::identity(), Term::integral(kOneHalf, CoeffFn::split(Scalar(-1.0), PointFn(s)))};
  p.rhs = CoeffFn::constant(1.0);
  return p;
}

/// u - Q^{1/2}u + Q u - Q^{3/2}u + Q^2 u = 1.
inline ProblemSpec integral_chain() {
  ProblemSpec p;
  p.terms = {Term::identity(), Term::integral(kOneHalf, CoeffFn::constant(-1.0)),
             Term::integral(HalfInt::integer(1)), Term::integral(HalfInt::from_twice(3), CoeffFn::constant(-1.0)),
             Term::integral(HalfInt::integer(2))};
  p.rhs = CoeffFn::constant(1.0);
  return p;
}

/// u + D^{1/2} u = 1 / (sqrt(pi) sqrt(1+x)).
inline ProblemSpec relaxation_rl() {
  ProblemSpec p;
  p.terms = {Term::identity(), Term::rl(kOneHalf)};
  p.rhs = CoeffFn::split(std::monostate{}, Scalar(1 / std::sqrt(std::numbers::pi)));
  return p;
}

/// u + D^{1/2} u + u' = 0, u(-1) = 1.
inline ProblemSpec relaxation_first_order() {
  ProblemSpec p;
  p.terms = {Term::identity(), Term::rl(kOneHalf), Term::rl(HalfInt::integer(1))};
  p.constraints = {{-1.0, 1.0, {}, "u(-1)"}};
  return p;
}

/// u + cD^{1/2} u = 0, u(-1) = 1.
inline ProblemSpec relaxation_caputo() {
  ProblemSpec p;
  p.terms = {Term::identity(), Term::caputo(kOneHalf)};
  p.constraints = {{-1.0, 1.0, {}, "u(-1)"}};
  return p;
}

/// u'' + D^{1/2} u + u = 0, u(-1) = 1, u(1) = 0.
inline ProblemSpec bagley_torvik_rl() {
  ProblemSpec p;
  p.terms = {Term::rl(HalfInt::integer(2)), Term::rl(kOneHalf), Term::identity()};
  p.constraints = {{-1.0, 1.0, {}, "u(-1)"}, {1.0, 0.0, {}, "u(1)"}};
  return p;
}

inline ProblemSpec bagley_torvik_caputo() {
  ProblemSpec p = bagley_torvik_rl();
  p.terms = {Term::caputo(HalfInt::integer(2)), Term::caputo(kOneHalf), Term::identity()};
  return p;
}

/// eps i^{3/2} D^{3/2} u - x u = 0, u(-1) = 0, u(1) = 1.
inline ProblemSpec fractional_airy(double eps = 1e-4) {
  ProblemSpec p;
  p.terms = {Term::rl(HalfInt::from_twice(3), CoeffFn::constant(eps * std::pow(Scalar(0, 1), 1.5))),
             Term::identity(CoeffFn::function([](double x) { return Scalar(-x); }))};
  p.constraints = {{-1.0, 0.0, {}, "u(-1)"}, {1.0, 1.0, {}, "u(1)"}};
  p.tolerance = 1e-10;
  return p;
}

/// Max |u - exact| on the 100-point grid, skipping x = -1 when `open_left`.
template <class F>
double grid_error(const Solution& u, F exact, bool open_left = false) {
  double worst = 0;
  for (double x : equispaced_grid(100)) {
    if (open_left && x == -1.0) continue;
    worst = std::max(worst, std::abs(u(x) - exact(x)));
  }
  return worst;
}

}  // namespace fracspec::testing

#endif  // FRACSPEC_TESTS_EXAMPLES_HPP

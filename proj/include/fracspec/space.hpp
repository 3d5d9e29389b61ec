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

#ifndef FRACSPEC_SPACE_HPP
#define FRACSPEC_SPACE_HPP

#include <compare>
#include <string>

namespace fracspec {

/// Exact half-integer k/2, stored as the integer k.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  static constexpr HalfInt integer(int value) { return HalfInt(2 * value); }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  /// Smallest integer >= this value.
  constexpr int ceil() const { return twice_ >= 0 ? (twice_ + 1) / 2 : twice_ / 2; }
  /// Largest integer <= this value.
  constexpr int floor() const { return twice_ >= 0 ? twice_ / 2 : -((-twice_ + 1) / 2); }

  constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }
  constexpr HalfInt operator-() const { return HalfInt(-twice_); }
  constexpr auto operator<=>(const HalfInt&) const = default;

  std::string str() const;

 private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

constexpr HalfInt kHalf = HalfInt::from_twice(1);

/// A weighted ultraspherical basis (1+x)^gamma C_n^(lambda)(x).
///
/// lambda = 1/2 is Legendre, lambda = 1 is Chebyshev U. lambda = 0 is
/// reserved for Chebyshev T, which only appears inside coefficient
/// transforms.
struct SpaceDesc {
  HalfInt lambda;
  HalfInt gamma;

  constexpr auto operator<=>(const SpaceDesc&) const = default;

  bool weighted() const { return gamma.twice() != 0; }
  bool unbounded_at_left() const { return gamma.twice() < 0; }
  std::string str() const;

  static constexpr SpaceDesc legendre() { return {kHalf, HalfInt()}; }
  static constexpr SpaceDesc cheb_u(HalfInt gamma = HalfInt()) {
    return {HalfInt::integer(1), gamma};
  }
  static constexpr SpaceDesc ultra(HalfInt lambda, HalfInt gamma = HalfInt()) {
    return {lambda, gamma};
  }
};

/// Ordered pair of spaces forming a direct sum.
struct SpacePair {
  SpaceDesc first;
  SpaceDesc second;

  constexpr auto operator<=>(const SpacePair&) const = default;
  std::string str() const;
};

/// P (+) sqrt(1+x) U, the solution space.
SpacePair solution_space();

/// Range of operators of the given half-integer level: level 0 is the
/// solution space, level m is C^(m+1/2) (+) C^(m+1)_{-m+1/2} and level m+1/2
/// is C^(m+3/2) (+) C^(m+1)_{-m-1/2}.
SpacePair level_space(HalfInt level);

/// True for the solution space and every level range space.
bool is_sanctioned(const SpacePair& pair);

}  // namespace fracspec

#endif  // FRACSPEC_SPACE_HPP

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

#include "fracspec/space.hpp"

#include "fracspec/error.hpp"

namespace fracspec {

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

std::string SpaceDesc::str() const {
  std::string s = "C(" + lambda.str() + ")";
  if (weighted()) s += "_{" + gamma.str() + "}";
  return s;
}

std::string SpacePair::str() const { return first.str() + " + " + second.str(); }

SpacePair solution_space() {
  return {SpaceDesc::legendre(), SpaceDesc::cheb_u(kHalf)};
}

SpacePair level_space(HalfInt level) {
  if (level.twice() < 0) throw InvalidLevel("negative operator level " + level.str());
  const int m = level.floor();
  if (level.is_integer()) {
    return {SpaceDesc::ultra(HalfInt::integer(m) + kHalf),
            SpaceDesc::ultra(HalfInt::integer(m + 1), kHalf - HalfInt::integer(m))};
  }
  return {SpaceDesc::ultra(HalfInt::integer(m + 1) + kHalf),
          SpaceDesc::ultra(HalfInt::integer(m + 1), -(HalfInt::integer(m) + kHalf))};
}

bool is_sanctioned(const SpacePair& pair) {
  if (pair == solution_space()) return true;
  const int top = pair.first.lambda.twice();
  if (top < 1 || top % 2 == 0) return false;
  // first component C^(m+1/2) is level m, C^(m+3/2) is level m+1/2
  const int m_int = (top - 1) / 2;
  if (pair == level_space(HalfInt::integer(m_int))) return true;
  if (m_int >= 1 && pair == level_space(HalfInt::integer(m_int - 1) + kHalf)) return true;
  return false;
}

}  // namespace fracspec

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

#ifndef FRACSPEC_SCALAR_HPP
#define FRACSPEC_SCALAR_HPP

#include <complex>
#include <vector>

namespace fracspec {

/// Coefficients and matrix entries are complex; real data embeds with zero
/// imaginary part.
using Scalar = std::complex<double>;
using Vector = std::vector<Scalar>;

}  // namespace fracspec

#endif  // FRACSPEC_SCALAR_HPP

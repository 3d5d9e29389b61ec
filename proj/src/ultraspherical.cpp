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

#include "fracspec/ultraspherical.hpp"

#include <algorithm>
#include <cmath>

#include "fracspec/error.hpp"

namespace fracspec {

Scalar eval_chebT(std::span<const Scalar> coeffs, double x) {
  if (coeffs.empty()) return {};
  Scalar b1{};
  Scalar b2{};
  for (std::size_t k = coeffs.size(); k-- > 1;) {
    const Scalar b0 = coeffs[k] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coeffs[0] + x * b1 - b2;
}

Scalar eval_ultra(HalfInt lambda, std::span<const Scalar> coeffs, double x) {
  if (lambda.twice() == 0) return eval_chebT(coeffs, x);
  const double lam = lambda.value();
  // C_{k+1} = alpha_k C_k - beta_k C_{k-1},
  // alpha_k = 2(k+lam)x/(k+1), beta_k = (k+2lam-1)/(k+1).
  Scalar b1{};
  Scalar b2{};
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const double kd = static_cast<double>(k);
    const double alpha = 2.0 * (kd + lam) * x / (kd + 1.0);
    const double beta_next = (kd + 2.0 * lam) / (kd + 2.0);
    const Scalar b0 = coeffs[k] + alpha * b1 - beta_next * b2;
    b2 = b1;
    b1 = b0;
  }
  return b1;
}

std::vector<double> ultra_values(HalfInt lambda, std::size_t n, double x) {
  std::vector<double> c(n, 0.0);
  if (n == 0) return c;
  c[0] = 1.0;
  if (n == 1) return c;
  const double lam = lambda.value();
  if (lambda.twice() == 0) {
    c[1] = x;
    for (std::size_t k = 1; k + 1 < n; ++k) c[k + 1] = 2.0 * x * c[k] - c[k - 1];
    return c;
  }
  c[1] = 2.0 * lam * x;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double kd = static_cast<double>(k);
    c[k + 1] = (2.0 * (kd + lam) * x * c[k] - (kd + 2.0 * lam - 1.0) * c[k - 1]) / (kd + 1.0);
  }
  return c;
}

void trim_trailing(Vector& c, double tol) {
  double big = 0.0;
  for (const auto& v : c) big = std::max(big, std::abs(v));
  std::size_t len = c.size();
  while (len > 1 && std::abs(c[len - 1]) <= tol * big) --len;
  c.resize(len);
}

Fun& Fun::trim(double tol) {
  trim_trailing(coeffs, tol);
  return *this;
}

Scalar eval_fun(const Fun& f, double x) {
  const int g2 = f.space.gamma.twice();
  if (g2 < 0 && x <= -1.0) {
    throw WeightSingularity("evaluating " + f.space.str() + " expansion at x = -1");
  }
  const Scalar s = eval_ultra(f.space.lambda, f.coeffs, x);
  if (g2 == 0) return s;
  return std::pow(1.0 + x, 0.5 * g2) * s;
}

Scalar eval_sumfun(const SumFun& u, double x) {
  return eval_fun(u.first, x) + eval_fun(u.second, x);
}

}  // namespace fracspec

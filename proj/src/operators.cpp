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

#include "fracspec/operators.hpp"

#include "fracspec/error.hpp"

namespace fracspec {

namespace {

void require_positive(HalfInt lambda, const char* what) {
  if (lambda.twice() <= 0) {
    throw InvalidParameter(std::string(what) + ": lambda must be positive, got " + lambda.str());
  }
}

// Column n+1 of a connection matrix from columns n and n-1, using the
// three-term recurrence p_{n+1} = (a x p_n - b p_{n-1}) / c and the Jacobi
// operator of the target basis.
void next_column(const BandedMat& jac, BandedMat& out, std::size_t n, double a, double b,
                 double c) {
  const std::size_t size = out.rows();
  Vector prev(size, Scalar{});
  for (std::size_t i = 0; i <= n; ++i) prev[i] = out(i, n);
  const Vector xp = jac.apply(prev);
  for (std::size_t i = 0; i <= n + 1 && i < size; ++i) {
    Scalar v = a * xp[i];
    if (n >= 1) v -= b * out(i, n - 1);
    out.at(i, n + 1) = v / c;
  }
}

}  // namespace

BandedMat op_S(HalfInt lambda, std::size_t n) {
  require_positive(lambda, "op_S");
  const double lam = lambda.value();
  BandedMat s(n, n, 0, 2);
  for (std::size_t k = 0; k < n; ++k) {
    const double kd = static_cast<double>(k);
    s.at(k, k) = k == 0 ? 1.0 : lam / (kd + lam);
    if (k + 2 < n) s.at(k, k + 2) = -lam / (kd + 2.0 + lam);
  }
  return s;
}

BandedMat op_R(HalfInt lambda, std::size_t n) {
  require_positive(lambda, "op_R");
  BandedMat r = op_J(lambda, n);
  for (std::size_t k = 0; k < n; ++k) r.at(k, k) = 1.0;
  return r;
}

BandedMat op_J(HalfInt lambda, std::size_t n) {
  require_positive(lambda, "op_J");
  const double lam = lambda.value();
  BandedMat j(n, n, 1, 1);
  for (std::size_t k = 0; k < n; ++k) {
    const double kd = static_cast<double>(k);
    if (k + 1 < n) j.at(k + 1, k) = (kd + 1.0) / (2.0 * (kd + lam));
    if (k >= 1) j.at(k - 1, k) = (kd + 2.0 * lam - 1.0) / (2.0 * (kd + lam));
  }
  return j;
}

BandedMat op_mult(HalfInt lambda, std::span<const Scalar> p_coeffs, std::size_t n) {
  require_positive(lambda, "op_mult");
  std::size_t len = p_coeffs.size();
  while (len > 1 && p_coeffs[len - 1] == Scalar{}) --len;
  if (len == 0) return BandedMat(n, n, 0, 0);
  const std::size_t d = len - 1;
  const std::size_t w = n + d;
  const double lam = lambda.value();
  const BandedMat jac = op_J(lambda, w);

  BandedMat prev;                      // Pi[C_{k-1}]
  BandedMat cur = BandedMat::identity(w);  // Pi[C_k]
  BandedMat sum = p_coeffs[0] * cur;
  for (std::size_t k = 0; k < d; ++k) {
    const double kd = static_cast<double>(k);
    BandedMat next = (2.0 * (kd + lam) / (kd + 1.0)) * (jac * cur);
    if (k >= 1) next = next - ((kd + 2.0 * lam - 1.0) / (kd + 1.0)) * prev;
    prev = std::move(cur);
    cur = std::move(next);
    if (p_coeffs[k + 1] != Scalar{}) sum += p_coeffs[k + 1] * cur;
  }
  return sum.section(n).widened(d, d);
}

BandedMat op_D_int(HalfInt lambda, int m, std::size_t n) {
  require_positive(lambda, "op_D_int");
  if (m < 1) throw InvalidParameter("op_D_int: derivative order must be >= 1");
  double factor = 1.0;
  for (int i = 0; i < m; ++i) factor *= 2.0 * (lambda.value() + i);
  const auto shift = static_cast<std::size_t>(m);
  BandedMat d(n, n, 0, shift);
  for (std::size_t k = shift; k < n; ++k) d.at(k - shift, k) = factor;
  return d;
}

BandedMat op_connect_P_to_U(std::size_t n) {
  BandedMat out(n, n, 0, n == 0 ? 0 : n - 1);
  if (n == 0) return out;
  const BandedMat jac = op_J(HalfInt::integer(1), n);
  out.at(0, 0) = 1.0;
  // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double kd = static_cast<double>(k);
    next_column(jac, out, k, 2.0 * kd + 1.0, kd, kd + 1.0);
  }
  return out;
}

BandedMat op_connect_U_to_P(std::size_t n) {
  BandedMat out(n, n, 0, n == 0 ? 0 : n - 1);
  if (n == 0) return out;
  const BandedMat jac = op_J(kHalf, n);
  out.at(0, 0) = 1.0;
  // U_{k+1} = 2 x U_k - U_{k-1}
  for (std::size_t k = 0; k + 1 < n; ++k) next_column(jac, out, k, 2.0, 1.0, 1.0);
  return out;
}

}  // namespace fracspec

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

#include "fracspec/transforms.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>

#include "fracspec/error.hpp"
#include "fracspec/operators.hpp"

namespace fracspec {

namespace {

// FFTW's planner is not thread safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Chebyshev coefficients from values at x_j = cos(pi j/(n-1)), j = 0..n-1.
std::vector<double> dct_coeffs(std::vector<double> values) {
  const std::size_t n = values.size();
  std::vector<double> out(n, 0.0);
  if (n == 1) {
    out[0] = values[0];
    return out;
  }
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_r2r_1d(static_cast<int>(n), values.data(), out.data(), FFTW_REDFT00,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  const double scale = 1.0 / static_cast<double>(n - 1);
  for (auto& v : out) v *= scale;
  out.front() *= 0.5;
  out.back() *= 0.5;
  return out;
}

// f at x, stepping inward a few ulps when an endpoint value is not finite
// (removable singularities such as erf(sqrt(1+x))/sqrt(1+x) at -1).
Scalar sample(const PointFn& f, double x) {
  Scalar v = f(x);
  const double inward = x > 0 ? -1.0 : 1.0;
  double step = 4.0 * std::numeric_limits<double>::epsilon();
  for (int tries = 0; tries < 8 && !(std::isfinite(v.real()) && std::isfinite(v.imag()));
       ++tries) {
    if (std::abs(x) < 1.0) break;
    v = f(x + inward * step);
    step *= 4.0;
  }
  return v;
}

}  // namespace

Vector chebT_coeffs_adaptive(const PointFn& f, double tol, std::size_t max_points) {
  if (!(tol > 0)) throw InvalidParameter("chebT_coeffs_adaptive: tolerance must be positive");
  for (std::size_t n = 9; n <= max_points; n = 2 * n - 1) {
    std::vector<double> re(n);
    std::vector<double> im(n);
    bool complex = false;
    for (std::size_t j = 0; j < n; ++j) {
      double x = std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(n - 1));
      if (2 * j + 1 == n) x = 0.0;
      const Scalar v = sample(f, x);
      if (!(std::isfinite(v.real()) && std::isfinite(v.imag()))) {
        throw NoConvergence("function is not finite at x = " + std::to_string(x));
      }
      re[j] = v.real();
      im[j] = v.imag();
      complex = complex || v.imag() != 0.0;
    }
    const std::vector<double> cr = dct_coeffs(std::move(re));
    std::vector<double> ci(n, 0.0);
    if (complex) ci = dct_coeffs(std::move(im));

    Vector c(n);
    double big = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      c[k] = {cr[k], ci[k]};
      big = std::max(big, std::abs(c[k]));
    }
    if (big == 0.0) return {Scalar{}};
    const std::size_t tail = std::max<std::size_t>(3, n / 50);
    double tail_max = 0.0;
    for (std::size_t k = n - tail; k < n; ++k) tail_max = std::max(tail_max, std::abs(c[k]));
    if (tail_max <= tol * big) {
      std::size_t len = n;
      while (len > 1 && std::abs(c[len - 1]) <= tol * big) --len;
      c.resize(len);
      return c;
    }
  }
  throw NoConvergence("Chebyshev expansion not resolved with " + std::to_string(max_points) +
                      " samples");
}

Vector convert_T_to_U(const Vector& t) {
  Vector u(t.size(), Scalar{});
  for (std::size_t n = 0; n < t.size(); ++n) {
    if (n == 0) {
      u[0] += t[0];
    } else if (n == 1) {
      u[1] += 0.5 * t[1];
    } else {
      u[n] += 0.5 * t[n];
      u[n - 2] -= 0.5 * t[n];
    }
  }
  return u;
}

Vector cheb_to_legendre(const Vector& t) {
  const std::size_t d = t.size();
  Vector out(d, Scalar{});
  if (d == 0) return out;
  // Legendre coefficients of T_k; x P_k = ((k+1) P_{k+1} + k P_{k-1}) / (2k+1).
  auto times_x = [](const std::vector<double>& c, std::size_t deg) {
    std::vector<double> r(deg + 2, 0.0);
    for (std::size_t k = 0; k <= deg; ++k) {
      if (c[k] == 0.0) continue;
      const double kd = static_cast<double>(k);
      r[k + 1] += c[k] * (kd + 1.0) / (2.0 * kd + 1.0);
      if (k >= 1) r[k - 1] += c[k] * kd / (2.0 * kd + 1.0);
    }
    return r;
  };
  std::vector<double> prev;
  std::vector<double> cur{1.0};
  for (std::size_t n = 0; n < d; ++n) {
    for (std::size_t k = 0; k <= n && k < cur.size(); ++k) out[k] += t[n] * cur[k];
    std::vector<double> next = times_x(cur, n);
    if (n >= 1) {
      for (auto& v : next) v *= 2.0;
      for (std::size_t k = 0; k < prev.size(); ++k) next[k] -= prev[k];
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

Vector legendre_to_cheb(const Vector& p) {
  const std::size_t d = p.size();
  Vector out(d, Scalar{});
  if (d == 0) return out;
  // x T_0 = T_1, x T_k = (T_{k+1} + T_{k-1}) / 2.
  auto times_x = [](const std::vector<double>& c, std::size_t deg) {
    std::vector<double> r(deg + 2, 0.0);
    for (std::size_t k = 0; k <= deg; ++k) {
      if (c[k] == 0.0) continue;
      if (k == 0) {
        r[1] += c[0];
      } else {
        r[k + 1] += 0.5 * c[k];
        r[k - 1] += 0.5 * c[k];
      }
    }
    return r;
  };
  std::vector<double> prev;
  std::vector<double> cur{1.0};
  for (std::size_t n = 0; n < d; ++n) {
    for (std::size_t k = 0; k <= n && k < cur.size(); ++k) out[k] += p[n] * cur[k];
    // (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}
    const double nd = static_cast<double>(n);
    std::vector<double> next = times_x(cur, n);
    for (auto& v : next) v *= (2.0 * nd + 1.0) / (nd + 1.0);
    for (std::size_t k = 0; k < prev.size(); ++k) next[k] -= nd / (nd + 1.0) * prev[k];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

Vector cheb_to_ultra(const Vector& t, HalfInt lambda) {
  if (lambda.twice() < 0) throw InvalidParameter("negative ultraspherical parameter");
  if (lambda.twice() == 0) return t;
  Vector c;
  HalfInt base;
  if (lambda.is_integer()) {
    c = convert_T_to_U(t);
    base = HalfInt::integer(1);
  } else {
    c = cheb_to_legendre(t);
    base = kHalf;
  }
  for (HalfInt l = base; l < lambda; l = l + HalfInt::integer(1)) {
    c = op_S(l, c.size()).apply(c);
  }
  return c;
}

Vector cheb_times_one_plus_x(const Vector& t) {
  Vector r(t.size() + 1, Scalar{});
  for (std::size_t k = 0; k < t.size(); ++k) {
    r[k] += t[k];
    if (k == 0) {
      r[1] += t[0];
    } else {
      r[k + 1] += 0.5 * t[k];
      r[k - 1] += 0.5 * t[k];
    }
  }
  return r;
}

}  // namespace fracspec

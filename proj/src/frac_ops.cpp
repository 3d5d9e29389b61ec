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

#include "fracspec/frac_ops.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fracspec/error.hpp"
#include "fracspec/operators.hpp"
#include "fracspec/special.hpp"
#include "fracspec/transforms.hpp"

namespace fracspec {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

void require_order(HalfInt order, HalfInt min, const char* what) {
  if (order < min) {
    throw InvalidOrder(std::string(what) + ": order " + order.str() + " is below " + min.str());
  }
}

// Upper bidiagonal with ones on diagonals `shift` and `shift+1`.
BandedMat shifted_bidiagonal(std::size_t shift, std::size_t n, double value) {
  BandedMat m(n, n, 0, shift + 1);
  for (std::size_t k = shift; k < n; ++k) {
    m.at(k - shift, k) = value;
    if (k >= shift + 1) m.at(k - shift - 1, k) = value;
  }
  return m;
}

}  // namespace

BandedMat op_Qhalf_P(std::size_t n) {
  const double c = 2.0 * std::numbers::inv_sqrtpi;
  BandedMat q(n, n, 0, 1);
  for (std::size_t k = 0; k < n; ++k) {
    const double v = c / (2.0 * static_cast<double>(k) + 1.0);
    q.at(k, k) = v;
    if (k >= 1) q.at(k - 1, k) = -v;
  }
  return q;
}

BandedMat op_Qhalf_U(std::size_t n) {
  const double c = 0.5 * kSqrtPi;
  BandedMat q(n, n, 1, 0);
  for (std::size_t k = 0; k < n; ++k) {
    q.at(k, k) = c;
    if (k + 1 < n) q.at(k + 1, k) = c;
  }
  return q;
}

BandedMat op_Q_power(Part part, HalfInt order, std::size_t n) {
  require_order(order, kHalf, "op_Q_power");
  const int j = order.twice();
  // Each Q_U factor has one subdiagonal; pad so cropped columns are exact.
  const std::size_t w = n + static_cast<std::size_t>(j) + 1;
  const BandedMat qp = op_Qhalf_P(w);
  const BandedMat qu = op_Qhalf_U(w);
  // Factors applied right to left, starting with the operator acting on `part`.
  BandedMat acc = BandedMat::identity(w);
  bool on_p = part == Part::kP;
  for (int i = 0; i < j; ++i) {
    acc = (on_p ? qp : qu) * acc;
    on_p = !on_p;
  }
  return acc.section(n);
}

BandedMat op_Dhalf(Part part, std::size_t n) {
  const double c = part == Part::kP ? std::numbers::inv_sqrtpi : 0.5 * kSqrtPi;
  return shifted_bidiagonal(0, n, c);
}

BandedMat op_D_P_int(int m, std::size_t n) {
  if (m < 1) throw InvalidOrder("op_D_P_int: order must be >= 1");
  const double c = std::ldexp(gamma_half_ratio(m, GammaForm::kHalf).value(), m);
  const auto shift = static_cast<std::size_t>(m);
  BandedMat d(n, n, 0, shift);
  for (std::size_t k = shift; k < n; ++k) d.at(k - shift, k) = c;
  return d;
}

BandedMat op_D_Uhalf_halfint(int m, std::size_t n) {
  if (m < 0) throw InvalidOrder("op_D_Uhalf_halfint: m must be >= 0");
  const double c = std::ldexp(gamma_half_ratio(m, GammaForm::kThreeHalves).value(), m) * kSqrtPi;
  return shifted_bidiagonal(static_cast<std::size_t>(m), n, c);
}

BandedMat op_D_weighted(HalfInt mu, HalfInt lambda, std::size_t n) {
  if (lambda.twice() <= 0) throw InvalidParameter("op_D_weighted: lambda must be positive");
  if (mu.twice() == 0) throw InvalidParameter("op_D_weighted: mu must be nonzero");
  const double lam = lambda.value();
  const double diff = mu.value() - lam;
  BandedMat d(n, n, 0, 2);
  for (std::size_t k = 0; k < n; ++k) {
    const double ratio = diff / (static_cast<double>(k) + lam);
    d.at(k, k) = lam * (1.0 + ratio);
    if (k >= 1) d.at(k - 1, k) = 2.0 * lam;
    if (k >= 2) d.at(k - 2, k) = lam * (1.0 - ratio);
  }
  return d;
}

BandedMat op_D_Uhalf_int(int m, std::size_t n) {
  if (m < 1) throw InvalidOrder("op_D_Uhalf_int: order must be >= 1");
  // D_{-k+1/2, k+1} for k = 0..m-1, applied right to left. All factors are
  // upper triangular, so the product of sections is the section of the product.
  BandedMat acc = BandedMat::identity(n);
  for (int k = 0; k < m; ++k) {
    acc = op_D_weighted(kHalf - HalfInt::integer(k), HalfInt::integer(k + 1), n) * acc;
  }
  return acc;
}

BandedMat op_D_P_halfint(int m, std::size_t n) {
  if (m < 0) throw InvalidOrder("op_D_P_halfint: m must be >= 0");
  BandedMat acc = op_Dhalf(Part::kP, n);
  for (int k = 0; k < m; ++k) {
    acc = op_D_weighted(-(HalfInt::integer(k) + kHalf), HalfInt::integer(k + 1), n) * acc;
  }
  return acc;
}

BlockOp op_block_Q(HalfInt order, std::size_t n) {
  require_order(order, kHalf, "op_block_Q");
  BlockOp op;
  op.n = n;
  op.domain = solution_space();
  op.range = solution_space();
  if (order.is_integer()) {
    op.blocks[0][0] = op_Q_power(Part::kP, order, n);
    op.blocks[1][1] = op_Q_power(Part::kUhalf, order, n);
  } else {
    op.blocks[0][1] = op_Q_power(Part::kUhalf, order, n);
    op.blocks[1][0] = op_Q_power(Part::kP, order, n);
  }
  return op;
}

BlockOp op_block_D(HalfInt order, std::size_t n) {
  require_order(order, kHalf, "op_block_D");
  BlockOp op;
  op.n = n;
  op.domain = solution_space();
  op.range = level_space(order);
  const int m = order.floor();
  if (order.is_integer()) {
    op.blocks[0][0] = op_D_P_int(m, n);
    op.blocks[1][1] = op_D_Uhalf_int(m, n);
  } else {
    op.blocks[0][1] = op_D_Uhalf_halfint(m, n);
    op.blocks[1][0] = op_D_P_halfint(m, n);
  }
  return op;
}

BlockOp op_block_E(HalfInt level, std::size_t n) {
  if (level < kHalf) throw InvalidLevel("op_block_E: level " + level.str() + " is below 1/2");
  const SpacePair from = level_space(level - kHalf);
  const SpacePair to = level_space(level);
  const int m = level.floor();
  if (level.is_integer()) {
    return BlockOp::diagonal(BandedMat::identity(n), op_S(HalfInt::integer(m), n), from, to);
  }
  return BlockOp::diagonal(op_S(HalfInt::integer(m) + kHalf, n),
                           op_R(HalfInt::integer(m + 1), n), from, to);
}

BlockOp op_block_identity(HalfInt level, std::size_t n) {
  const SpacePair s = level_space(level);
  return BlockOp::diagonal(BandedMat::identity(n), BandedMat::identity(n), s, s);
}

BlockOp op_block_E_chain(HalfInt from, HalfInt top, std::size_t n) {
  if (top < from) throw InvalidLevel("cannot lower level " + from.str() + " to " + top.str());
  BlockOp acc = op_block_identity(from, n);
  for (HalfInt l = from + kHalf; l <= top; l = l + kHalf) acc = op_block_E(l, n) * acc;
  return acc;
}

Vector coeffs_in(const Fun& f, HalfInt lambda) {
  if (f.space.weighted()) throw SpaceMismatch("expected an unweighted expansion, got " + f.space.str());
  const HalfInt from = f.space.lambda;
  if (from.twice() == 0) return cheb_to_ultra(f.coeffs, lambda);
  if (from > lambda || !(lambda - from).is_integer()) {
    throw SpaceMismatch("cannot convert " + f.space.str() + " coefficients to C(" + lambda.str() + ")");
  }
  Vector c = f.coeffs;
  for (HalfInt l = from; l < lambda; l = l + HalfInt::integer(1)) c = op_S(l, c.size()).apply(c);
  return c;
}

BlockOp op_block_mult(HalfInt level, const Fun& r, const std::optional<Fun>& s, std::size_t n) {
  const SpacePair spaces = level_space(level);
  const HalfInt l1 = spaces.first.lambda;
  const HalfInt l2 = spaces.second.lambda;
  BlockOp op = BlockOp::diagonal(op_mult(l1, coeffs_in(r, l1), n), op_mult(l2, coeffs_in(r, l2), n),
                                 spaces, spaces);
  if (!s) return op;
  if (level.twice() != 0) {
    throw UnsupportedWeightedCoefficient("sqrt(1+x)-weighted coefficient at operator level " +
                                         level.str());
  }
  if (s->space.lambda.twice() != 0 || s->space.weighted()) {
    throw SpaceMismatch("weighted coefficient must be given in Chebyshev T coefficients");
  }
  const Vector su = convert_T_to_U(s->coeffs);
  const Vector s1u = convert_T_to_U(cheb_times_one_plus_x(s->coeffs));
  const std::size_t w = n + s1u.size() + 1;
  const HalfInt one = HalfInt::integer(1);
  // (1+x) s b lands in U; sqrt(1+x) s a needs a in U first.
  BandedMat upper = (op_connect_U_to_P(w) * op_mult(one, s1u, w)).section(n);
  BandedMat lower = (op_mult(one, su, w) * op_connect_P_to_U(w)).section(n);
  op.blocks[0][1] = std::move(upper);
  op.blocks[1][0] = std::move(lower);
  op.upper_dense = true;
  return op;
}

FunctionalRow boundary_row(const SpacePair& spaces, double x, std::size_t n) {
  if (x < -1.0 || x > 1.0) throw InvalidParameter("constraint point outside [-1, 1]");
  FunctionalRow row;
  row.entries.assign(2 * n, Scalar{});
  row.label = "u(" + format_real(x) + ")";
  const SpaceDesc parts[2] = {spaces.first, spaces.second};
  for (int p = 0; p < 2; ++p) {
    const SpaceDesc& sp = parts[p];
    double weight = 1.0;
    if (sp.weighted()) {
      if (x == -1.0) {
        if (sp.unbounded_at_left()) {
          throw WeightSingularity("functional at x = -1 on " + sp.str());
        }
        continue;
      }
      weight = std::pow(1.0 + x, sp.gamma.value());
    }
    const std::vector<double> v = ultra_values(sp.lambda, n, x);
    for (std::size_t k = 0; k < n; ++k) row.entries[2 * k + static_cast<std::size_t>(p)] = weight * v[k];
  }
  return row;
}

}  // namespace fracspec

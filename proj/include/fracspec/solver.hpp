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

#ifndef FRACSPEC_SOLVER_HPP
#define FRACSPEC_SOLVER_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fracspec/banded.hpp"
#include "fracspec/space.hpp"
#include "fracspec/transforms.hpp"
#include "fracspec/ultraspherical.hpp"

namespace fracspec {

/// One part of a coefficient function: absent (zero), a constant, a
/// pointwise evaluator, or Chebyshev T coefficients.
using CoeffPart = std::variant<std::monostate, Scalar, PointFn, Vector>;

/// r(x) + sqrt(1+x) s(x). The default is the constant 1.
struct CoeffFn {
  CoeffPart smooth = Scalar{1.0};
  CoeffPart weighted;

  static CoeffFn constant(Scalar c) { return {c, {}}; }
  static CoeffFn zero() { return {std::monostate{}, {}}; }
  static CoeffFn function(PointFn f) { return {std::move(f), {}}; }
  static CoeffFn chebyshev(Vector t) { return {std::move(t), {}}; }
  static CoeffFn split(CoeffPart smooth, CoeffPart weighted) {
    return {std::move(smooth), std::move(weighted)};
  }
};

enum class TermKind { kIdentity, kIntegral, kDerivativeRL, kDerivativeCaputo };

/// left(x) * Op^order [ right(x) u ](x).
struct Term {
  TermKind kind = TermKind::kIdentity;
  HalfInt order;
  CoeffFn left;
  CoeffFn right;

  static Term identity(CoeffFn left = {}) { return {TermKind::kIdentity, HalfInt(), std::move(left), {}}; }
  static Term integral(HalfInt order, CoeffFn left = {}, CoeffFn right = {}) {
    return {TermKind::kIntegral, order, std::move(left), std::move(right)};
  }
  static Term rl(HalfInt order, CoeffFn left = {}, CoeffFn right = {}) {
    return {TermKind::kDerivativeRL, order, std::move(left), std::move(right)};
  }
  static Term caputo(HalfInt order, CoeffFn left = {}) {
    return {TermKind::kDerivativeCaputo, order, std::move(left), {}};
  }
};

/// u(point) = value, or a general functional when `functional` is set. The
/// functional receives N and returns a row over the interleaved solution
/// coefficients (length 2N).
struct Constraint {
  double point = -1.0;
  Scalar value;
  std::function<Vector(std::size_t)> functional;
  std::string label;
};

enum class EquationKind { kFie, kFdeRL, kFdeCaputo };

/**
 * A linear equation sum_k Term_k[u] = rhs with side constraints.
 *
 * The rhs is e(x) + w(x) f(x) with e = rhs.smooth and f = rhs.weighted,
 * where w(x) = sqrt(1+x) for integral and Caputo equations and
 * w(x) = 1/sqrt(1+x) for Riemann-Liouville equations.
 */
struct ProblemSpec {
  std::vector<Term> terms;
  std::vector<Constraint> constraints;
  CoeffFn rhs = CoeffFn::zero();
  double tolerance = 1e-12;
  /// Tolerance for resolving coefficient functions and the rhs.
  double coeff_tolerance = 1e-15;
  /// Fixed truncation; automatic when absent.
  std::optional<std::size_t> N;
};

/// Kind implied by the terms. Throws InvalidSpec for mixed RL/Caputo.
EquationKind equation_kind(const ProblemSpec& spec);

/// The truncated system with the constraint rows on top.
struct AssembledSystem {
  AlmostBandedMat matrix;
  Vector rhs;
  std::size_t N = 0;
  /// Number of leading polynomial unknowns (Caputo only).
  std::size_t aux_count = 0;
  /// True when the body is banded below and dense above the diagonal.
  bool lower_banded = false;
  EquationKind kind = EquationKind::kFie;
  /// Level of the common range space.
  HalfInt top_level;
};

struct Solution {
  SumFun u;
  /// Polynomial coefficients c_j of the Caputo reformulation.
  Vector aux;
  double error_estimate = 0.0;
  std::size_t N_used = 0;
  /// Ratio of largest to smallest pivot of the factorisation.
  double condition_estimate = 1.0;

  Scalar operator()(double x) const { return eval_sumfun(u, x); }
};

/// rhs as e in range.first plus f in range.second.
SumFun decompose_rhs(const CoeffFn& rhs, const SpacePair& range, double tol);

AssembledSystem assemble_fie(const ProblemSpec& spec, std::size_t N);
AssembledSystem assemble_fde_rl(const ProblemSpec& spec, std::size_t N);
AssembledSystem assemble_fde_caputo(const ProblemSpec& spec, std::size_t N);
/// Dispatches on equation_kind.
AssembledSystem assemble(const ProblemSpec& spec, std::size_t N);

/// Solves the assembled system and maps the unknowns back to a Solution
/// (error_estimate left at zero).
Solution solve_system(const AssembledSystem& system);

/// Solve at a fixed truncation N (ignores spec.N), without error estimate.
Solution solve_at(const ProblemSpec& spec, std::size_t N);

/// Solve at spec.N, or grow N until estimate_error < spec.tolerance.
Solution solve(const ProblemSpec& spec);

/// 2-norm difference of interleaved solution coefficients at N and ceil(1.1 N).
double estimate_error(const ProblemSpec& spec, std::size_t N);

/// Interleaved coefficients (a_0, b_0, a_1, b_1, ...) of a solution.
Vector interleaved_coefficients(const Solution& s);

struct ConvergenceRow {
  std::size_t N = 0;
  double estimate = 0.0;
  std::optional<double> true_error;
};

/// One row per N. true_error is the max deviation from `reference` on a
/// 100-point equispaced grid of [-1, 1] (points where the reference is not
/// finite are skipped).
std::vector<ConvergenceRow> convergence_study(const ProblemSpec& spec,
                                              const std::vector<std::size_t>& Ns,
                                              const PointFn& reference = {});

/// n equispaced points from -1 to 1.
std::vector<double> equispaced_grid(std::size_t n);

}  // namespace fracspec

#endif  // FRACSPEC_SOLVER_HPP

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

#include "fracspec/solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>

#include "fracspec/block.hpp"
#include "fracspec/error.hpp"
#include "fracspec/frac_ops.hpp"
#include "fracspec/operators.hpp"

namespace fracspec {

namespace {

constexpr std::size_t kMaxN = std::size_t{1} << 14;
constexpr std::size_t kFirstN = 16;

const SpaceDesc kChebT{HalfInt(), HalfInt()};

std::optional<Vector> resolve_part(const CoeffPart& part, double tol) {
  if (std::holds_alternative<std::monostate>(part)) return std::nullopt;
  if (const auto* c = std::get_if<Scalar>(&part)) return Vector{*c};
  if (const auto* v = std::get_if<Vector>(&part)) {
    if (v->empty()) return std::nullopt;
    Vector t = *v;
    trim_trailing(t, 0.0);
    return t;
  }
  const auto& f = std::get<PointFn>(part);
  if (!f) return std::nullopt;
  return chebT_coeffs_adaptive(f, tol);
}

struct ResolvedCoeff {
  Vector r{Scalar{1.0}};
  std::optional<Vector> s;

  bool is_one() const { return !s && r.size() == 1 && r[0] == Scalar{1.0}; }
  std::size_t spread() const { return r.size() + (s ? s->size() + 2 : 0); }
};

ResolvedCoeff resolve(const CoeffFn& c, double tol) {
  ResolvedCoeff out;
  auto r = resolve_part(c.smooth, tol);
  out.r = r ? *r : Vector{Scalar{}};
  out.s = resolve_part(c.weighted, tol);
  return out;
}

BlockOp mult_op(HalfInt level, const ResolvedCoeff& c, std::size_t n) {
  std::optional<Fun> s;
  if (c.s) s = Fun{kChebT, *c.s};
  return op_block_mult(level, Fun{kChebT, c.r}, s, n);
}

struct PreparedTerm {
  TermKind kind;
  HalfInt order;
  ResolvedCoeff left;
  ResolvedCoeff right;
};

struct Prepared {
  EquationKind kind = EquationKind::kFie;
  std::vector<PreparedTerm> terms;
  std::vector<Constraint> constraints;
  Vector rhs_smooth;
  Vector rhs_weighted;
  HalfInt top;
  int caputo_order = 0;  // M = ceil of the highest Caputo order
  std::size_t pad = 0;
};

Prepared prepare(const ProblemSpec& spec) {
  Prepared p;
  p.kind = equation_kind(spec);
  p.constraints = spec.constraints;
  for (const auto& t : spec.terms) {
    if (t.kind == TermKind::kIdentity && t.order.twice() != 0) {
      throw InvalidSpec("identity term with nonzero order " + t.order.str());
    }
    if (t.kind != TermKind::kIdentity && t.order < kHalf) {
      throw InvalidOrder("term order " + t.order.str() + " must be at least 1/2");
    }
    PreparedTerm pt{t.kind, t.order, resolve(t.left, spec.coeff_tolerance),
                    resolve(t.right, spec.coeff_tolerance)};
    if (t.kind == TermKind::kDerivativeCaputo && !pt.right.is_one()) {
      throw InvalidSpec("Caputo terms do not take a coefficient inside the derivative");
    }
    if (t.kind == TermKind::kDerivativeRL) p.top = std::max(p.top, t.order);
    if (t.kind == TermKind::kDerivativeCaputo) p.caputo_order = std::max(p.caputo_order, t.order.ceil());
    p.terms.push_back(std::move(pt));
  }
  if (p.terms.empty()) throw InvalidSpec("equation has no terms");
  const auto e = resolve_part(spec.rhs.smooth, spec.coeff_tolerance);
  const auto f = resolve_part(spec.rhs.weighted, spec.coeff_tolerance);
  p.rhs_smooth = e ? *e : Vector{};
  p.rhs_weighted = f ? *f : Vector{};

  std::size_t spread = 0;
  for (const auto& t : p.terms) {
    spread = std::max(spread, t.left.spread() + t.right.spread() +
                                  static_cast<std::size_t>(t.order.twice()) + 2);
  }
  p.pad = spread + 2 * static_cast<std::size_t>(p.top.twice()) +
          2 * static_cast<std::size_t>(p.caputo_order) + 8;
  return p;
}

// alpha Op[beta .] on the solution space, for identity and integral terms.
BlockOp level0_term(const PreparedTerm& t, std::size_t w) {
  BlockOp op = t.kind == TermKind::kIntegral ? op_block_Q(t.order, w) : op_block_identity(HalfInt(), w);
  if (!t.right.is_one()) op = op * mult_op(HalfInt(), t.right, w);
  if (!t.left.is_one()) op = mult_op(HalfInt(), t.left, w) * op;
  return op;
}

BlockOp accumulate(std::optional<BlockOp> acc, BlockOp term) {
  if (!acc) return term;
  return *acc + term;
}

std::pair<Vector, Vector> apply_block(const BlockOp& op, const Vector& a, const Vector& b) {
  Vector out[2] = {Vector(op.n, Scalar{}), Vector(op.n, Scalar{})};
  const Vector* in[2] = {&a, &b};
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) {
      if (!op.blocks[p][q]) continue;
      const Vector y = op.blocks[p][q]->apply(*in[q]);
      for (std::size_t i = 0; i < op.n; ++i) out[p][i] += y[i];
    }
  }
  return {out[0], out[1]};
}

Vector head(const Vector& v, std::size_t n) {
  Vector out(n, Scalar{});
  std::copy_n(v.begin(), std::min(n, v.size()), out.begin());
  return out;
}

FunctionalRow constraint_row(const Constraint& c, std::size_t n) {
  if (!c.functional) {
    FunctionalRow row = boundary_row(solution_space(), c.point, n);
    if (!c.label.empty()) row.label = c.label;
    return row;
  }
  FunctionalRow row{c.functional(n), c.label.empty() ? std::string("functional") : c.label};
  if (row.entries.size() != 2 * n) {
    throw ShapeMismatch("functional '" + row.label + "' has length " +
                        std::to_string(row.entries.size()) + ", expected " + std::to_string(2 * n));
  }
  return row;
}

SumFun decompose_prepared(const Prepared& p, const SpacePair& range) {
  ProblemSpec tmp;
  tmp.rhs = CoeffFn::split(p.rhs_smooth.empty() ? CoeffPart{} : CoeffPart{p.rhs_smooth},
                           p.rhs_weighted.empty() ? CoeffPart{} : CoeffPart{p.rhs_weighted});
  return decompose_rhs(tmp.rhs, range, 1e-16);
}

// Constraint rows on top, then the leading operator rows.
AssembledSystem finish(const Prepared& p, const BlockOp& op_w, std::size_t n) {
  const std::size_t k = p.constraints.size();
  if (k > 2 * n) throw InvalidSpec("more constraints than unknowns");
  const BlockOp op = op_w.section(n);
  const BandedMat a = interleave_matrix(op);

  AssembledSystem sys;
  sys.N = n;
  sys.kind = p.kind;
  sys.top_level = p.top;
  sys.lower_banded = op.upper_dense;
  sys.matrix.body = a.section(2 * n - k, 2 * n);
  for (const auto& c : p.constraints) sys.matrix.border.push_back(constraint_row(c, n));

  const SumFun rhs = decompose_prepared(p, op.range);
  const Vector r = interleave_vectors(head(rhs.first.coeffs, n), head(rhs.second.coeffs, n));
  for (const auto& c : p.constraints) sys.rhs.push_back(c.value);
  sys.rhs.insert(sys.rhs.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(2 * n - k));
  return sys;
}

AssembledSystem assemble_fie(const Prepared& p, std::size_t n) {
  const std::size_t w = n + p.pad;
  std::optional<BlockOp> acc;
  for (const auto& t : p.terms) {
    if (t.kind != TermKind::kIdentity && t.kind != TermKind::kIntegral) {
      throw InvalidSpec("integral equation contains a derivative term");
    }
    acc = accumulate(acc, level0_term(t, w));
  }
  return finish(p, *acc, n);
}

AssembledSystem assemble_rl(const Prepared& p, std::size_t n) {
  const std::size_t w = n + p.pad;
  std::optional<BlockOp> acc;
  for (const auto& t : p.terms) {
    if (t.kind == TermKind::kDerivativeCaputo) {
      throw InvalidSpec("Caputo term in a Riemann-Liouville equation");
    }
    BlockOp op;
    HalfInt level;
    if (t.kind == TermKind::kDerivativeRL) {
      level = t.order;
      op = op_block_D(t.order, w);
      if (!t.right.is_one()) op = op * mult_op(HalfInt(), t.right, w);
      if (!t.left.is_one()) op = mult_op(level, t.left, w) * op;
    } else {
      op = level0_term(t, w);
    }
    if (level < p.top) op = op_block_E_chain(level, p.top, w) * op;
    acc = accumulate(acc, std::move(op));
  }
  return finish(p, *acc, n);
}

// Legendre coefficients of the k-th derivative of sum c_j P_j.
Vector legendre_derivative(const Vector& c, int k) {
  Vector y = op_D_int(kHalf, k, c.size()).apply(c);
  // y is in C^(k+1/2); undo the conversions S_{k-1/2} ... S_{1/2} by back substitution.
  for (int i = k - 1; i >= 0; --i) {
    const HalfInt lam = HalfInt::integer(i) + kHalf;
    const BandedMat s = op_S(lam, y.size());
    Vector x(y.size(), Scalar{});
    for (std::size_t r = y.size(); r-- > 0;) {
      Scalar v = y[r];
      if (r + 2 < y.size()) v -= s(r, r + 2) * x[r + 2];
      x[r] = v / s(r, r);
    }
    y = std::move(x);
  }
  return y;
}

AssembledSystem assemble_caputo(const Prepared& p, std::size_t n) {
  const auto m = static_cast<std::size_t>(p.caputo_order);
  const HalfInt big_m = HalfInt::integer(p.caputo_order);
  const std::size_t w = n + p.pad;
  const BlockOp qm = op_block_Q(big_m, w);

  std::optional<BlockOp> acc;
  std::vector<std::pair<Vector, Vector>> poly_cols(m, {Vector(w, Scalar{}), Vector(w, Scalar{})});
  for (const auto& t : p.terms) {
    if (t.kind == TermKind::kDerivativeRL) throw InvalidSpec("Riemann-Liouville term in a Caputo equation");
    if (t.kind == TermKind::kDerivativeCaputo) {
      // C D^mu u = Q^{k-mu} u^(k) with u = Q^M v + sum c_j P_j, k = ceil(mu).
      const int k = t.order.ceil();
      const HalfInt rest = big_m - t.order;
      BlockOp op = rest.twice() == 0 ? op_block_identity(HalfInt(), w) : op_block_Q(rest, w);
      const bool fractional = !t.order.is_integer();
      if (!t.left.is_one()) op = mult_op(HalfInt(), t.left, w) * op;
      acc = accumulate(acc, std::move(op));
      for (std::size_t j = static_cast<std::size_t>(k); j < m; ++j) {
        Vector e(w, Scalar{});
        e[j] = 1.0;
        std::pair<Vector, Vector> col{legendre_derivative(e, k), Vector(w, Scalar{})};
        if (fractional) col = apply_block(op_block_Q(kHalf, w), col.first, col.second);
        if (!t.left.is_one()) col = apply_block(mult_op(HalfInt(), t.left, w), col.first, col.second);
        for (std::size_t i = 0; i < w; ++i) {
          poly_cols[j].first[i] += col.first[i];
          poly_cols[j].second[i] += col.second[i];
        }
      }
    } else {
      const BlockOp op = level0_term(t, w);
      acc = accumulate(acc, op * qm);
      for (std::size_t j = 0; j < m; ++j) {
        Vector e(w, Scalar{});
        e[j] = 1.0;
        const auto col = apply_block(op, e, Vector(w, Scalar{}));
        for (std::size_t i = 0; i < w; ++i) {
          poly_cols[j].first[i] += col.first[i];
          poly_cols[j].second[i] += col.second[i];
        }
      }
    }
  }

  const std::size_t k = p.constraints.size();
  if (k < m) {
    throw InsufficientConstraints("Caputo equation of order " + std::to_string(m) + " needs " +
                                  std::to_string(m) + " constraints, got " + std::to_string(k));
  }
  const std::size_t cols = m + 2 * n;
  if (k > cols) throw InvalidSpec("more constraints than unknowns");
  const std::size_t rows = cols - k;

  const BandedMat a = interleave_matrix(acc->section(n));
  std::vector<Vector> cvec(m);
  std::size_t lower = a.lower();
  for (std::size_t j = 0; j < m; ++j) {
    cvec[j] = interleave_vectors(head(poly_cols[j].first, n), head(poly_cols[j].second, n));
    for (std::size_t r = cvec[j].size(); r-- > 0;) {
      if (cvec[j][r] != Scalar{}) {
        if (r > j) lower = std::max(lower, r - j);
        break;
      }
    }
  }
  BandedMat body(rows, cols, lower, a.upper() + m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t r = 0; r < rows; ++r) {
      if (cvec[j][r] != Scalar{}) body.at(r, j) = cvec[j][r];
    }
  }
  for (const auto& e : sparsity(a)) {
    if (e.row < rows) body.at(e.row, e.col + m) = e.value;
  }

  AssembledSystem sys;
  sys.N = n;
  sys.kind = p.kind;
  sys.aux_count = m;
  sys.lower_banded = acc->upper_dense;
  sys.matrix.body = std::move(body);

  // Rows over u's coefficients pulled back through u = Q^M v + sum c_j P_j.
  const BandedMat qm_int = interleave_matrix(qm);
  for (const auto& c : p.constraints) {
    const FunctionalRow urow = constraint_row(c, w);
    FunctionalRow row;
    row.label = urow.label;
    row.entries.assign(cols, Scalar{});
    for (std::size_t j = 0; j < m; ++j) row.entries[j] = urow.entries[2 * j];
    const Vector pulled = qm_int.apply_left(urow.entries);
    for (std::size_t t = 0; t < 2 * n; ++t) row.entries[m + t] = pulled[t];
    sys.matrix.border.push_back(std::move(row));
    sys.rhs.push_back(c.value);
  }
  const SumFun rhs = decompose_prepared(p, solution_space());
  const Vector r = interleave_vectors(head(rhs.first.coeffs, n), head(rhs.second.coeffs, n));
  for (std::size_t i = 0; i < rows; ++i) sys.rhs.push_back(i < r.size() ? r[i] : Scalar{});
  return sys;
}

AssembledSystem assemble_prepared(const Prepared& p, std::size_t n) {
  if (n == 0) throw InvalidParameter("truncation N must be positive");
  switch (p.kind) {
    case EquationKind::kFie:
      return assemble_fie(p, n);
    case EquationKind::kFdeRL:
      return assemble_rl(p, n);
    case EquationKind::kFdeCaputo:
      return assemble_caputo(p, n);
  }
  throw InvalidSpec("unknown equation kind");
}

Solution solve_prepared(const Prepared& p, std::size_t n) {
  const AssembledSystem sys = assemble_prepared(p, n);
  Solution s = solve_system(sys);
  if (p.kind == EquationKind::kFdeCaputo) {
    // u = Q^M v + sum c_j P_j, kept to length N + M.
    const std::size_t m = sys.aux_count;
    const std::size_t len = n + m;
    const std::size_t w = len + 2;
    const BlockOp qm = op_block_Q(HalfInt::integer(static_cast<int>(m)), w);
    const auto [a, b] = apply_block(qm, head(s.u.first.coeffs, w), head(s.u.second.coeffs, w));
    s.u.first.coeffs = head(a, len);
    s.u.second.coeffs = head(b, len);
    for (std::size_t j = 0; j < m; ++j) s.u.first.coeffs[j] += s.aux[j];
  }
  return s;
}

double coefficient_distance(const Solution& a, const Solution& b) {
  const Vector x = interleaved_coefficients(a);
  const Vector y = interleaved_coefficients(b);
  double sum = 0.0;
  for (std::size_t i = 0; i < std::max(x.size(), y.size()); ++i) {
    const Scalar d = (i < x.size() ? x[i] : Scalar{}) - (i < y.size() ? y[i] : Scalar{});
    sum += std::norm(d);
  }
  return std::sqrt(sum);
}

std::size_t refined(std::size_t n) { return (11 * n + 9) / 10; }

// Solution at N with its error estimate.
Solution solve_estimated(const Prepared& p, std::size_t n) {
  Solution s = solve_prepared(p, n);
  s.error_estimate = coefficient_distance(s, solve_prepared(p, refined(n)));
  return s;
}

// A truncation whose finite system is numerically singular counts as not yet
// converged during the automatic search.
std::optional<Solution> try_estimated(const Prepared& p, std::size_t n, std::exception_ptr& last) {
  try {
    return solve_estimated(p, n);
  } catch (const SingularMatrix&) {
    last = std::current_exception();
  } catch (const SingularSchurComplement&) {
    last = std::current_exception();
  }
  return std::nullopt;
}

}  // namespace

EquationKind equation_kind(const ProblemSpec& spec) {
  bool rl = false;
  bool caputo = false;
  for (const auto& t : spec.terms) {
    rl = rl || t.kind == TermKind::kDerivativeRL;
    caputo = caputo || t.kind == TermKind::kDerivativeCaputo;
  }
  if (rl && caputo) throw InvalidSpec("equation mixes Riemann-Liouville and Caputo derivatives");
  if (caputo) return EquationKind::kFdeCaputo;
  if (rl) return EquationKind::kFdeRL;
  return EquationKind::kFie;
}

SumFun decompose_rhs(const CoeffFn& rhs, const SpacePair& range, double tol) {
  if (range.first.weighted()) throw SpaceMismatch("rhs range " + range.str() + " is not supported");
  const auto e = resolve_part(rhs.smooth, tol);
  const auto f = resolve_part(rhs.weighted, tol);
  SumFun out;
  out.first = Fun{range.first, e ? cheb_to_ultra(*e, range.first.lambda) : Vector{Scalar{}}};
  out.second.space = range.second;
  if (!f) {
    out.second.coeffs = {Scalar{}};
    return out;
  }
  Vector c = cheb_to_ultra(*f, range.second.lambda);
  const int g2 = range.second.gamma.twice();
  if (g2 == 1) {
    out.second.coeffs = std::move(c);
    return out;
  }
  if (g2 > 0 || g2 % 2 == 0) throw SpaceMismatch("rhs range " + range.str() + " is not supported");
  // c holds f in the (1+x)^{-1/2} weighted basis; each R lowers the weight by one.
  for (int g = -1; g > g2; g -= 2) {
    c.push_back(Scalar{});
    c = op_R(range.second.lambda, c.size()).apply(c);
  }
  out.second.coeffs = std::move(c);
  return out;
}

AssembledSystem assemble_fie(const ProblemSpec& spec, std::size_t N) {
  return assemble_fie(prepare(spec), N);
}

AssembledSystem assemble_fde_rl(const ProblemSpec& spec, std::size_t N) {
  return assemble_rl(prepare(spec), N);
}

AssembledSystem assemble_fde_caputo(const ProblemSpec& spec, std::size_t N) {
  return assemble_caputo(prepare(spec), N);
}

AssembledSystem assemble(const ProblemSpec& spec, std::size_t N) {
  return assemble_prepared(prepare(spec), N);
}

Solution solve_system(const AssembledSystem& system) {
  Solution s;
  const Vector x = solve_almost_banded(system.matrix, system.rhs, &s.condition_estimate);
  const std::size_t m = system.aux_count;
  s.aux.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(m));
  const auto parts = deinterleave(Vector(x.begin() + static_cast<std::ptrdiff_t>(m), x.end()));
  s.u.first = Fun{SpaceDesc::legendre(), parts[0]};
  s.u.second = Fun{solution_space().second, parts[1]};
  s.N_used = system.N;
  return s;
}

Solution solve_at(const ProblemSpec& spec, std::size_t N) { return solve_prepared(prepare(spec), N); }

Solution solve(const ProblemSpec& spec) {
  const Prepared p = prepare(spec);
  if (spec.N) return solve_estimated(p, *spec.N);

  std::size_t lo = 0;
  std::size_t hi = kFirstN;
  std::optional<Solution> best;
  std::exception_ptr singular;
  bool any_regular = false;
  while (true) {
    if (hi > kMaxN) {
      if (!any_regular && singular) std::rethrow_exception(singular);
      throw NoConvergence("error estimate still above " + format_real(spec.tolerance) +
                          " at N = " + std::to_string(lo));
    }
    std::optional<Solution> s = try_estimated(p, hi, singular);
    any_regular = any_regular || s.has_value();
    if (s && s->error_estimate < spec.tolerance) {
      best = std::move(s);
      break;
    }
    lo = hi;
    hi *= 2;
  }
  // Narrow down between the last failing and the first passing N.
  while (lo > 0 && hi - lo > std::max<std::size_t>(2, lo / 32)) {
    const std::size_t mid = (lo + hi) / 2;
    std::optional<Solution> s = try_estimated(p, mid, singular);
    if (s && s->error_estimate < spec.tolerance) {
      hi = mid;
      best = std::move(s);
    } else {
      lo = mid;
    }
  }
  return *best;
}

double estimate_error(const ProblemSpec& spec, std::size_t N) {
  return solve_estimated(prepare(spec), N).error_estimate;
}

Vector interleaved_coefficients(const Solution& s) {
  return interleave_vectors(s.u.first.coeffs, s.u.second.coeffs);
}

std::vector<double> equispaced_grid(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = n == 1 ? 0.0 : -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  if (n > 1) x.back() = 1.0;
  return x;
}

std::vector<ConvergenceRow> convergence_study(const ProblemSpec& spec,
                                              const std::vector<std::size_t>& Ns,
                                              const PointFn& reference) {
  std::vector<ConvergenceRow> rows;
  if (Ns.empty()) return rows;
  const Prepared p = prepare(spec);
  const std::vector<double> grid = equispaced_grid(100);
  for (std::size_t n : Ns) {
    const Solution s = solve_estimated(p, n);
    ConvergenceRow row{n, s.error_estimate, std::nullopt};
    if (reference) {
      double err = 0.0;
      for (double x : grid) {
        const Scalar ref = reference(x);
        if (!std::isfinite(ref.real()) || !std::isfinite(ref.imag())) continue;
        err = std::max(err, std::abs(s(x) - ref));
      }
      row.true_error = err;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fracspec

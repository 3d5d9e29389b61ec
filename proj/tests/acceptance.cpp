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

// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "examples.hpp"
#include "fracspec/banded.hpp"
#include "fracspec/block.hpp"
#include "fracspec/cli.hpp"
#include "fracspec/error.hpp"
#include "fracspec/frac_ops.hpp"
#include "fracspec/solver.hpp"
#include "test_support.hpp"

using namespace fracspec;
namespace ft = fracspec::testing;

namespace {

const double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);

class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)) {}

  void check(bool ok, const std::string& what) {
    ok_ = ok_ && ok;
    details_.push_back((ok ? "  ok   " : "  FAIL ") + what);
  }

  void note(const std::string& what) { details_.push_back("       " + what); }

  bool report() const {
    std::printf("%s %s\n", ok_ ? "PASS" : "FAIL", name_.c_str());
    for (const auto& d : details_) std::printf("%s\n", d.c_str());
    std::fflush(stdout);
    return ok_;
  }

 private:
  std::string name_;
  bool ok_ = true;
  std::vector<std::string> details_;
};

std::string fmt(const char* f, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_of(const std::function<void()>& run) {
  const auto t0 = std::chrono::steady_clock::now();
  run();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t max_offset(const BandedMat& m) {
  std::size_t worst = 0;
  for (const auto& e : sparsity(m)) worst = std::max(worst, e.row > e.col ? e.row - e.col : e.col - e.row);
  return worst;
}

double gegenbauer(int n, double lambda, double x) { return n < 0 ? 0.0 : ft::gegenbauer_explicit(n, lambda, x); }

double legendre(int n, double x) { return n < 0 ? 0.0 : std::legendre(unsigned(n), x); }

double cheb_u(int n, double x) { return n < 0 ? 0.0 : ft::cheb_u_trig(n, x); }

double eval_col(const BandedMat& m, const SpaceDesc& range, std::size_t col, double x) {
  Vector e(m.cols());
  e[col] = 1.0;
  return eval_fun({range, m.apply(e)}, x).real();
}

// Runs one criterion body; an escaped exception fails it.
bool run(const std::string& name, const std::function<void(Criterion&)>& body) {
  Criterion c(name);
  try {
    body(c);
  } catch (const std::exception& e) {
    c.check(false, std::string("exception: ") + e.what());
  }
  return c.report();
}

void abel(Criterion& c) {
  Solution u20, u15;
  const double t20 = seconds_of([&] { u20 = solve_at(ft::abel(), 20); });
  const double t15 = seconds_of([&] { u15 = solve_at(ft::abel(), 15); });
  const double e20 = ft::grid_error(u20, ft::relaxation_exact);
  const double e15 = ft::grid_error(u15, ft::relaxation_exact);
  c.check(e20 <= 5e-13, fmt("N=20 max grid error %.3g <= 5e-13", e20));
  c.check(e15 <= 1e-13, fmt("N=15 max grid error %.3g <= 1e-13", e15));
  c.check(t20 < 0.1, fmt("N=20 solve time %.4f s < 0.1 s", t20));
  c.note(fmt("N=15 solve time %.4f s", t15));
}

void structure(Criterion& c) {
  for (std::size_t n : {4u, 20u, 100u}) {
    const BandedMat body = assemble(ft::abel(), n).matrix.body;
    bool tri = max_offset(body) == 1;
    for (std::size_t i = 0; i + 1 < body.rows(); ++i) {
      tri = tri && body(i, i + 1) != Scalar{} && body(i + 1, i) != Scalar{};
    }
    c.check(tri, "Abel system exactly tridiagonal at N=" + std::to_string(n));
  }
  ProblemSpec ex = ft::abel_exponential();
  ex.coeff_tolerance = 1e-15;
  const std::size_t band = max_offset(assemble(ex, 100).matrix.body);
  c.check(band >= 35 && band <= 55, "exponential-coefficient system bandwidth " + std::to_string(band) +
                                        " in [35, 55]");
}

void identities(Criterion& c) {
  const std::vector<double> xs = {-0.9, -0.5, 0.0, 0.35, 0.8, 1.0};
  double theorem = 0;
  for (double lam : {0.5, 1.0, 1.5}) {
    for (int n = 0; n <= 8; ++n) {
      for (double x : xs) {
        const auto f = [&](double t, double opt) { return std::pow(opt, lam - 0.5) * gegenbauer(n, lam, t); };
        const double quad = ft::riemann_liouville_integral(f, 0.5, x);
        const double closed = std::tgamma(lam + 0.5) / (std::tgamma(lam) * (n + lam)) * std::pow(1 + x, lam) *
                              (gegenbauer(n, lam + 0.5, x) - gegenbauer(n - 1, lam + 0.5, x));
        theorem = std::max(theorem, std::abs(quad - closed));
      }
    }
  }
  c.check(theorem <= 1e-9, fmt("half-integral of weighted ultraspherical: max deviation %.3g <= 1e-9", theorem));

  // Corollaries against quadrature, and the library's operators against
  // the same closed forms.
  const std::size_t m = 10;
  const BandedMat qp = op_Qhalf_P(m), qu = op_Qhalf_U(m), dp = op_Dhalf(Part::kP, m), du = op_Dhalf(Part::kUhalf, m);
  double hip = 0, hiu = 0, hdp = 0, hdu = 0, ops = 0;
  for (int n = 0; n <= 8; ++n) {
    for (double x : xs) {
      const double sx = std::sqrt(1 + x);
      const double ip = 2 * sx / (kSqrtPi * (2 * n + 1)) * (cheb_u(n, x) - cheb_u(n - 1, x));
      const double iu = kSqrtPi / 2 * (legendre(n + 1, x) + legendre(n, x));
      const double du_closed = kSqrtPi / 2 * (gegenbauer(n, 1.5, x) + gegenbauer(n - 1, 1.5, x));
      hip = std::max(hip, std::abs(ft::riemann_liouville_integral([n](double t, double) { return legendre(n, t); },
                                                                  0.5, x) - ip));
      hiu = std::max(hiu, std::abs(ft::riemann_liouville_integral(
                                       [n](double t, double opt) { return std::sqrt(opt) * cheb_u(n, t); }, 0.5, x) -
                                   iu));
      // D^{1/2} f = Q^{1/2}[f'] + f(-1) / sqrt(pi (1+x)) for f smooth on [-1, x]
      const double dsu = ft::riemann_liouville_integral(
          [n](double t, double opt) {
            return cheb_u(n, t) / (2 * std::sqrt(opt)) + std::sqrt(opt) * 2 * gegenbauer(n - 1, 2.0, t);
          },
          0.5, x);
      hdu = std::max(hdu, std::abs(dsu - du_closed));
      ops = std::max({ops, std::abs(eval_col(qp, SpaceDesc::cheb_u(kHalf), n, x) - ip),
                      std::abs(eval_col(qu, SpaceDesc::legendre(), n, x) - iu),
                      std::abs(eval_col(du, SpaceDesc::ultra(HalfInt::from_twice(3)), n, x) - du_closed)});
      if (x > -1.0) {
        const double dp_closed = (cheb_u(n, x) + cheb_u(n - 1, x)) / (kSqrtPi * sx);
        const double dsp = ft::riemann_liouville_integral([n](double t, double) { return gegenbauer(n - 1, 1.5, t); },
                                                          0.5, x) +
                           (n % 2 ? -1.0 : 1.0) / (kSqrtPi * sx);
        hdp = std::max(hdp, std::abs(dsp - dp_closed));
        ops = std::max(ops, std::abs(eval_col(dp, SpaceDesc::cheb_u(-kHalf), n, x) - dp_closed));
      }
    }
  }
  c.check(hip <= 1e-9, fmt("half-integral of Legendre: max deviation %.3g <= 1e-9", hip));
  c.check(hiu <= 1e-9, fmt("half-integral of weighted U: max deviation %.3g <= 1e-9", hiu));
  c.check(hdp <= 1e-9, fmt("half-derivative of Legendre: max deviation %.3g <= 1e-9", hdp));
  c.check(hdu <= 1e-9, fmt("half-derivative of weighted U: max deviation %.3g <= 1e-9", hdu));
  c.check(ops <= 1e-12, fmt("library operators vs closed forms: max deviation %.3g <= 1e-12", ops));

  double lemma = 0, cor = 0;
  for (double lam : {0.5, 1.0, 1.5, 2.0, 3.5}) {
    for (int n = 1; n <= 20; ++n) {
      for (double x : {-1.0, -0.7, -0.2, 0.4, 0.9, 1.0}) {
        const double a = 2 * lam * (1 + x) * ft::gegenbauer_recurrence(n, lam + 1, x);
        const double b = 2 * lam * (1 + x) * ft::gegenbauer_recurrence(n - 1, lam + 1, x);
        const double p = (n + 1) * ft::gegenbauer_recurrence(n + 1, lam, x);
        const double q = (n + 2 * lam) * ft::gegenbauer_recurrence(n, lam, x);
        const double scale = std::max({1.0, std::abs(a), std::abs(b), std::abs(p), std::abs(q)});
        lemma = std::max(lemma, std::abs((a - b) - (p + q)) / scale);
      }
    }
  }
  for (int n = 1; n <= 20; ++n) {
    for (double x : {-1.0, -0.7, -0.2, 0.4, 0.9, 1.0}) {
      const double a = n * (legendre(n, x) + legendre(n - 1, x));
      const double b = (1 + x) * (ft::gegenbauer_recurrence(n - 1, 1.5, x) - ft::gegenbauer_recurrence(n - 2, 1.5, x));
      const double p = n * cheb_u(n, x) + (n + 1) * cheb_u(n - 1, x);
      const double q = 2 * (1 + x) * (ft::gegenbauer_recurrence(n - 1, 2.0, x) - ft::gegenbauer_recurrence(n - 2, 2.0, x));
      cor = std::max({cor, std::abs(a - b) / std::max(1.0, std::abs(a)), std::abs(p - q) / std::max(1.0, std::abs(p))});
    }
  }
  c.check(lemma <= 1e-12, fmt("ultraspherical (1+x) difference identity: max relative deviation %.3g <= 1e-12", lemma));
  c.check(cor <= 1e-12, fmt("Legendre and Chebyshev U special cases: max relative deviation %.3g <= 1e-12", cor));
}

void sections(Criterion& c) {
  bool exact = true;
  for (std::size_t n = 1; n <= 200; ++n) {
    const auto lhs = (op_Qhalf_U(n) * op_Qhalf_P(n)).dense();
    const auto rhs = op_Q_power(Part::kP, HalfInt::integer(1), n).dense();
    double worst = 0;
    for (std::size_t k = 0; k < lhs.size(); ++k) worst = std::max(worst, std::abs(lhs[k] - rhs[k]));
    exact = exact && worst <= 1e-15;
  }
  c.check(exact, "section(Q_U) * section(Q_P) == section(Q_P integral) for N = 1..200 (to 1e-15)");

  const std::size_t n = 60;
  const BandedMat q = op_Q_power(Part::kP, HalfInt::integer(1), n);
  double worst = std::abs(q(0, 0) - 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double want = 0;
      if (i == 0 && j == 0) want = 1;
      if (i == j + 1) want = 1.0 / (2 * j + 1);
      if (j == i + 1) want = -1.0 / (2 * j + 1);
      worst = std::max(worst, std::abs(q(i, j) - want));
    }
  }
  c.check(worst <= 1e-15, fmt("integral operator on Legendre matches its displayed entries (%.3g)", worst));
}

void relaxation_rl(Criterion& c) {
  const AssembledSystem sys = assemble(ft::relaxation_rl(), 20);
  const Solution u = solve_system(sys);
  const double err = ft::grid_error(u, ft::relaxation_exact, true);
  c.check(err <= 1e-12, fmt("N=20 max error on (-1, 1] %.3g <= 1e-12", err));
  const std::size_t band = max_offset(sys.matrix.body);
  c.check(band <= 4, "interleaved bandwidth " + std::to_string(band) + " <= 4");
}

void bagley_torvik(Criterion& c) {
  for (const auto& [name, spec] : {std::pair{"RL", ft::bagley_torvik_rl()}, std::pair{"Caputo", ft::bagley_torvik_caputo()}}) {
    const Solution u = solve_at(spec, 40);
    const double bc = std::max(std::abs(u(-1.0) - 1.0), std::abs(u(1.0)));
    c.check(bc <= 1e-11, fmt((std::string(name) + " boundary values reproduced to %.3g").c_str(), bc));
    const double est = estimate_error(spec, 40);
    c.check(est < 1e-12, fmt((std::string(name) + " error estimate at N=40 %.3g < 1e-12").c_str(), est));
  }
  const Solution rl = solve_at(ft::relaxation_rl(), 24);
  const Solution cap = solve_at(ft::relaxation_caputo(), 24);
  double gap = 0;
  for (double x : equispaced_grid(100)) {
    if (x > -1.0) gap = std::max(gap, std::abs(rl(x) - cap(x)));
  }
  c.check(gap <= 1e-11, fmt("RL and Caputo relaxation solutions agree at N=24: max gap %.3g <= 1e-11", gap));
}

void relaxation_caputo(Criterion& c) {
  const Solution u = solve_at(ft::relaxation_caputo(), 20);
  const double err = ft::grid_error(u, ft::relaxation_exact);
  c.check(err <= 1e-12, fmt("N=20 recovered solution max error %.3g <= 1e-12", err));
  for (std::size_t n : {40u, 80u}) {
    c.note(fmt(("N=" + std::to_string(n) + " max error %.3g").c_str(),
               ft::grid_error(solve_at(ft::relaxation_caputo(), n), ft::relaxation_exact)));
  }
}

void airy(Criterion& c) {
  const ProblemSpec spec = ft::fractional_airy();
  try {
    Solution u;
    const double t = seconds_of([&] { u = solve(spec); });
    const std::size_t dof = 2 * u.N_used;
    c.check(u.error_estimate <= 1e-10, fmt("auto-solve error estimate %.3g <= 1e-10", u.error_estimate));
    c.check(dof >= 600 && dof <= 1000, "degrees of freedom " + std::to_string(dof) + " in [600, 1000]");
    c.note(fmt("auto-solve time %.3f s", t));
  } catch (const NoConvergence& e) {
    c.check(false, std::string("auto-solve: ") + e.what());
  }

  const std::vector<std::size_t> ns = {1000, 2000, 4000};
  std::vector<double> times;
  for (std::size_t n : ns) {
    times.push_back(ft::median_seconds([&] { (void)solve_system(assemble(spec, n)); }, 5));
    c.note(fmt(("N=" + std::to_string(n) + " assemble+solve %.4f s").c_str(), times.back()));
  }
  for (std::size_t k = 1; k < ns.size(); ++k) {
    const double ratio = times[k] / times[k - 1];
    c.check(ratio <= 2.5, fmt(("time ratio N=" + std::to_string(ns[k - 1]) + "->" + std::to_string(ns[k]) +
                               " %.2f <= 2.5").c_str(),
                              ratio));
  }
  const double total = seconds_of([&] { (void)solve_system(assemble(spec, 2000)); });
  c.check(total <= 5.0, fmt("total runtime at 2N=4000 %.3f s <= 5 s", total));

  // The command-line bench path on the same problem.
  std::ostringstream out, err;
  cli::BenchOptions opts;
  opts.ns = {1000, 2000, 4000};
  const int rc = cli::cmd_bench(std::string(FRACSPEC_PROBLEMS_DIR) + "/airy.json", opts, out, err);
  c.check(rc == cli::kExitOk, "bench command on the Airy file exits 0");
}

void geometric(Criterion& c) {
  const std::vector<std::pair<std::string, ProblemSpec>> cases = {
      {"Abel", ft::abel()},
      {"exponential coefficients", ft::abel_exponential()},
      {"weighted coefficient", ft::abel_weighted()},
      {"integral chain", ft::integral_chain()},
      {"RL relaxation", ft::relaxation_rl()},
  };
  for (const auto& [name, spec] : cases) {
    std::vector<double> ns, logs;
    std::string trace;
    for (std::size_t n = 8; n <= 32; n += 4) {
      const double est = estimate_error(spec, n);
      trace += " " + fmt("%.1e", est);
      ns.push_back(double(n));
      logs.push_back(std::log10(std::max(est, 1e-300)));
    }
    const double slope = ft::ls_slope(ns, logs) * std::log(10.0);
    c.check(slope < -0.3, name + fmt(": log-estimate slope %.3f < -0.3 per unit N;", slope) + trace);
  }
}

void weighted(Criterion& c) {
  const AssembledSystem s1 = assemble(ft::abel_weighted(), 400);
  const AssembledSystem s2 = assemble(ft::abel_weighted(), 800);
  c.check(s1.lower_banded && s2.lower_banded, "system is banded below and dense above the diagonal");
  const auto lower = LowerBandedMat(s2.matrix.body).lower();
  c.note("lower bandwidth " + std::to_string(lower));
  const double t1 = ft::median_seconds([&] { (void)solve_system(s1); }, 7);
  const double t2 = ft::median_seconds([&] { (void)solve_system(s2); }, 7);
  const double ratio = t2 / t1;
  c.check(ratio >= 3.0 && ratio <= 5.0, fmt("solve time ratio N=400->800 %.2f in [3, 5]", ratio));
  c.note(fmt("N=400 solve %.4f s", t1));
}

}  // namespace

int main() {
  int failed = 0;
  failed += !run("1 Abel equation accuracy and runtime", abel);
  failed += !run("2 interleaved system structure", structure);
  failed += !run("3 closed-form half-integral and half-derivative identities", identities);
  failed += !run("4 finite-section algebra of the integral operator", sections);
  failed += !run("5 RL relaxation equation", relaxation_rl);
  failed += !run("6 Bagley-Torvik boundary value problems and RL/Caputo agreement", bagley_torvik);
  failed += !run("7 Caputo relaxation equation", relaxation_caputo);
  failed += !run("8 fractional Airy equation", airy);
  failed += !run("9 geometric convergence of the error estimate", geometric);
  failed += !run("10 weighted-coefficient system", weighted);
  std::printf("%d of 10 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}

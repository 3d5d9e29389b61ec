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

#include "fracspec/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <functional>
#include <ostream>

#include "fracspec/banded.hpp"
#include "fracspec/error.hpp"
#include "fracspec/expr.hpp"
#include "fracspec/problem_file.hpp"
#include "fracspec/solver.hpp"

namespace fracspec::cli {

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    if (!e.expected().empty()) {
      err << "expected one of:";
      for (const auto& t : e.expected()) err << ' ' << t;
      err << '\n';
    }
    return kExitParse;
  } catch (const ProblemFileError& e) {
    err << "problem file error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  }
}

std::string json_scalar(Scalar z) {
  return "[" + format_real(z.real()) + ", " + format_real(z.imag()) + "]";
}

void json_array(std::ostream& out, const Vector& v) {
  out << '[';
  for (std::size_t k = 0; k < v.size(); ++k) out << (k ? ", " : "") << json_scalar(v[k]);
  out << ']';
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + end, v);
    if (ec != std::errc() || ptr != text.data() + end || v == 0) {
      throw ParseError("expected a comma-separated list of positive integers", pos, {"integer"});
    }
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

int cmd_solve(const std::string& file, const SolveOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ProblemSpec spec = load_problem(file);
    if (opts.n) spec.N = *opts.n;
    if (opts.tol) spec.tolerance = *opts.tol;
    const Solution s = solve(spec);
    if (s.condition_estimate > kConditionWarning) {
      err << "warning: condition estimate " << format_real(s.condition_estimate) << " exceeds "
          << format_real(kConditionWarning) << '\n';
    }
    const std::vector<double> grid = equispaced_grid(opts.grid);
    if (opts.format == Format::kJson) {
      out << "{\n  \"N_used\": " << s.N_used << ",\n  \"error_estimate\": " << format_real(s.error_estimate)
          << ",\n  \"condition_estimate\": " << format_real(s.condition_estimate) << ",\n  \"grid\": [";
      for (std::size_t k = 0; k < grid.size(); ++k) {
        out << (k ? ",\n    " : "\n    ") << "{\"x\": " << format_real(grid[k]) << ", \"u\": " << json_scalar(s(grid[k]))
            << '}';
      }
      out << "\n  ],\n  \"coefficients\": {\n    \"a\": ";
      json_array(out, s.u.first.coeffs);
      out << ",\n    \"b\": ";
      json_array(out, s.u.second.coeffs);
      out << ",\n    \"c\": ";
      json_array(out, s.aux);
      out << "\n  }\n}\n";
    } else {
      out << "field,index,x,value\n";
      out << "N_used,0,," << s.N_used << '\n';
      out << "error_estimate,0,," << format_real(s.error_estimate) << '\n';
      out << "condition_estimate,0,," << format_real(s.condition_estimate) << '\n';
      for (std::size_t k = 0; k < grid.size(); ++k) {
        out << "u," << k << ',' << format_real(grid[k]) << ',' << format_scalar(s(grid[k])) << '\n';
      }
      const auto dump = [&](const char* name, const Vector& v) {
        for (std::size_t k = 0; k < v.size(); ++k) out << name << ',' << k << ",," << format_scalar(v[k]) << '\n';
      };
      dump("a", s.u.first.coeffs);
      dump("b", s.u.second.coeffs);
      dump("c", s.aux);
    }
    return kExitOk;
  });
}

int cmd_convergence(const std::string& file, const ConvergenceOptions& opts, std::ostream& out,
                    std::ostream& err) {
  return guarded(err, [&] {
    const ProblemSpec spec = load_problem(file);
    PointFn reference;
    if (opts.reference) {
      const Expr e = parse_expr(*opts.reference);
      reference = [e](double x) { return e.eval(x); };
    }
    const std::vector<std::size_t> ns = opts.ns.empty() ? std::vector<std::size_t>{8, 16, 24, 32} : opts.ns;
    const auto rows = convergence_study(spec, ns, reference);
    out << (reference ? "N,estimate,true_error\n" : "N,estimate\n");
    for (const auto& r : rows) {
      out << r.N << ',' << format_real(r.estimate);
      if (r.true_error) out << ',' << format_real(*r.true_error);
      out << '\n';
    }
    return kExitOk;
  });
}

int cmd_spy(const std::string& file, std::size_t n, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProblemSpec spec = load_problem(file);
    const AssembledSystem sys = assemble(spec, n);
    write_spy_csv(out, sparsity(sys.matrix));
    return kExitOk;
  });
}

int cmd_bench(const std::string& file, const BenchOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProblemSpec spec = load_problem(file);
    const std::vector<std::size_t> ns = opts.ns.empty() ? std::vector<std::size_t>{250, 500, 1000} : opts.ns;
    const std::size_t repeats = std::max<std::size_t>(opts.repeats, 1);
    using clock = std::chrono::steady_clock;
    out << "N,build_seconds,solve_seconds\n";
    for (std::size_t n : ns) {
      std::vector<double> build;
      std::vector<double> run;
      for (std::size_t r = 0; r < repeats; ++r) {
        const auto t0 = clock::now();
        const AssembledSystem sys = assemble(spec, n);
        const auto t1 = clock::now();
        solve_system(sys);
        const auto t2 = clock::now();
        build.push_back(std::chrono::duration<double>(t1 - t0).count());
        run.push_back(std::chrono::duration<double>(t2 - t1).count());
      }
      out << n << ',' << format_real(median(build)) << ',' << format_real(median(run)) << '\n';
    }
    return kExitOk;
  });
}

}  // namespace fracspec::cli

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

// Command-line front end: fracspec solve|convergence|spy|bench <file> [flags]

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fracspec/cli.hpp"
#include "fracspec/error.hpp"

namespace {

// Writes to --out when given, stdout otherwise.
template <typename F>
int with_output(const std::string& path, F&& run) {
  if (path.empty()) return run(std::cout);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open " << path << " for writing\n";
    return fracspec::cli::kExitParse;
  }
  return run(out);
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = fracspec::cli;
  CLI::App app{"Spectral solver for half-order fractional integral and differential equations"};
  app.require_subcommand(1);

  std::string file;
  std::string out_path;

  cli::SolveOptions solve_opts;
  std::size_t solve_n = 0;
  double solve_tol = 0.0;
  std::string format = "csv";
  auto* solve = app.add_subcommand("solve", "Solve and print the solution on an equispaced grid");
  solve->add_option("file", file, "Problem file (JSON)")->required();
  solve->add_option("--n", solve_n, "Fixed truncation N (default: automatic)");
  solve->add_option("--tol", solve_tol, "Error-estimate tolerance for automatic N");
  solve->add_option("--grid", solve_opts.grid, "Number of grid points")->capture_default_str();
  solve->add_option("--out", out_path, "Output file (default: stdout)");
  solve->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  std::string conv_ns;
  std::string reference;
  auto* conv = app.add_subcommand("convergence", "Error estimate (and true error) for several N");
  conv->add_option("file", file, "Problem file (JSON)")->required();
  conv->add_option("--ns", conv_ns, "Comma-separated truncations");
  conv->add_option("--reference", reference, "Exact solution as an expression in x");
  conv->add_option("--out", out_path, "Output file (default: stdout)");

  std::size_t spy_n = 20;
  auto* spy = app.add_subcommand("spy", "Nonzero pattern of the assembled system");
  spy->add_option("file", file, "Problem file (JSON)")->required();
  spy->add_option("--n", spy_n, "Truncation N")->capture_default_str();
  spy->add_option("--out", out_path, "Output file (default: stdout)");

  std::string bench_ns;
  cli::BenchOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "Median build and solve times");
  bench->add_option("file", file, "Problem file (JSON)")->required();
  bench->add_option("--ns", bench_ns, "Comma-separated truncations");
  bench->add_option("--repeats", bench_opts.repeats, "Repetitions per N")->capture_default_str();
  bench->add_option("--out", out_path, "Output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      if (solve_n > 0) solve_opts.n = solve_n;
      if (solve_tol > 0.0) solve_opts.tol = solve_tol;
      solve_opts.format = format == "json" ? cli::Format::kJson : cli::Format::kCsv;
      return with_output(out_path, [&](std::ostream& os) { return cli::cmd_solve(file, solve_opts, os, std::cerr); });
    }
    if (*conv) {
      cli::ConvergenceOptions opts;
      if (!conv_ns.empty()) opts.ns = cli::parse_size_list(conv_ns);
      if (!reference.empty()) opts.reference = reference;
      return with_output(out_path, [&](std::ostream& os) { return cli::cmd_convergence(file, opts, os, std::cerr); });
    }
    if (*spy) {
      return with_output(out_path, [&](std::ostream& os) { return cli::cmd_spy(file, spy_n, os, std::cerr); });
    }
    if (!bench_ns.empty()) bench_opts.ns = cli::parse_size_list(bench_ns);
    return with_output(out_path, [&](std::ostream& os) { return cli::cmd_bench(file, bench_opts, os, std::cerr); });
  } catch (const fracspec::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return cli::kExitParse;
  }
}

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

#ifndef FRACSPEC_CLI_HPP
#define FRACSPEC_CLI_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fracspec::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitSolver = 3;

/// Condition estimates above this trigger a warning on stderr.
inline constexpr double kConditionWarning = 1e12;

enum class Format { kCsv, kJson };

struct SolveOptions {
  std::optional<std::size_t> n;
  std::optional<double> tol;
  std::size_t grid = 100;
  Format format = Format::kCsv;
};

struct ConvergenceOptions {
  std::vector<std::size_t> ns;
  std::optional<std::string> reference;
};

struct BenchOptions {
  std::vector<std::size_t> ns;
  std::size_t repeats = 3;
};

// Each command reads the problem file, writes data to `out` and diagnostics
// to `err`, and returns the process exit code.
int cmd_solve(const std::string& file, const SolveOptions& opts, std::ostream& out, std::ostream& err);
int cmd_convergence(const std::string& file, const ConvergenceOptions& opts, std::ostream& out,
                    std::ostream& err);
int cmd_spy(const std::string& file, std::size_t n, std::ostream& out, std::ostream& err);
int cmd_bench(const std::string& file, const BenchOptions& opts, std::ostream& out, std::ostream& err);

/// "5,10,20" -> {5, 10, 20}. Throws ParseError.
std::vector<std::size_t> parse_size_list(const std::string& text);

}  // namespace fracspec::cli

#endif  // FRACSPEC_CLI_HPP

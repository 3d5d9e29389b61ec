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

#ifndef FRACSPEC_PROBLEM_FILE_HPP
#define FRACSPEC_PROBLEM_FILE_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "fracspec/error.hpp"
#include "fracspec/expr.hpp"
#include "fracspec/solver.hpp"

namespace fracspec {

/// A problem file that is valid JSON but does not match the schema. The
/// message starts with the offending field path, e.g. "terms[1].order".
class ProblemFileError : public Error {
 public:
  ProblemFileError(const std::string& field, const std::string& message)
      : Error(field + ": " + message), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/**
 * Reads a problem description:
 *
 *   {
 *     "kind": "fie" | "fde_rl" | "fde_caputo",
 *     "terms": [{"op": "identity" | "integral" | "derivative",
 *                "order": "k/2", "left": <coeff>, "right": <coeff>}],
 *     "constraints": [{"point": -1, "value": 1}],
 *     "rhs": {"smooth": <part>, "weighted": <part>},
 *     "tolerance": 1e-12,
 *     "N": 20 | "auto"
 *   }
 *
 * A <part> is a JSON number, an expression string in x, or an array of
 * Chebyshev T coefficients (numbers or constant expressions). A <coeff> is a
 * <part> or an object {"smooth": <part>, "weighted": <part>} standing for
 * smooth(x) + sqrt(1+x) weighted(x). Unknown fields are rejected.
 *
 * Derivative terms become Riemann-Liouville or Caputo terms according to
 * "kind". Syntax errors in JSON or in expressions throw ParseError; schema
 * violations throw ProblemFileError.
 */
ProblemSpec parse_problem(std::string_view json_text);
ProblemSpec load_problem(const std::filesystem::path& path);

/// Parses "k/2" with integer k >= 0.
HalfInt parse_order(std::string_view text);

/// Evaluator for an expression; constants fold to a Scalar.
CoeffPart coeff_part_from_expr(const Expr& e);

}  // namespace fracspec

#endif  // FRACSPEC_PROBLEM_FILE_HPP

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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fracspec/cli.hpp"
#include "fracspec/error.hpp"
#include "fracspec/expr.hpp"
#include "fracspec/problem_file.hpp"
#include "json.hpp"
#include "test_support.hpp"

using namespace fracspec;
namespace ft = fracspec::testing;

namespace {

std::string problem(const std::string& name) { return std::string(FRACSPEC_PROBLEMS_DIR) + "/" + name; }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("fracspec_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

// Random expression built from the grammar's productions.
Expr random_expr(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 7 : 2);
  switch (pick(rng)) {
    case 0: return Expr::number(std::uniform_real_distribution<double>(0, 10)(rng));
    case 1: return Expr::variable();
    case 2: return Expr::constant(ExprConstant(std::uniform_int_distribution<int>(0, 2)(rng)));
    case 3: return Expr::negate(random_expr(rng, depth - 1));
    case 4:
    case 5: {
      const ExprKind k = ExprKind(int(ExprKind::kAdd) + std::uniform_int_distribution<int>(0, 4)(rng));
      return Expr::binary(k, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    }
    default:
      return Expr::call(ExprFunction(std::uniform_int_distribution<int>(0, 6)(rng)), random_expr(rng, depth - 1));
  }
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("expression examples") {
    const Expr one = parse_expr("1");
    CHECK(one.kind() == ExprKind::kNumber);
    CHECK(one.value() == 1.0);

    const Expr decay = parse_expr("exp(-(1+x)/2)");
    CHECK(decay.kind() == ExprKind::kCall);
    CHECK(decay.function() == ExprFunction::kExp);
    const Expr& quotient = decay.operand(0);
    CHECK(quotient.kind() == ExprKind::kDiv);
    CHECK(quotient.operand(0).kind() == ExprKind::kNeg);
    CHECK(quotient.operand(0).operand(0).kind() == ExprKind::kAdd);
    CHECK(std::abs(decay.eval(1.0) - std::exp(-1.0)) < 1e-16);

    CHECK(std::abs(parse_expr("erfc(sqrt(1+x))").eval(0.0).real() - 0.15729920705028513) < 1e-16);
    const Scalar c = parse_expr("0.0001*i^1.5").eval(0.0);
    CHECK(std::abs(c - 1e-4 * std::pow(Scalar(0, 1), 1.5)) < 1e-20);
    CHECK(parse_expr("1e-3").value() == 1e-3);
    CHECK(std::abs(parse_expr("2*e").eval(0).real() - 2 * std::exp(1.0)) < 1e-15);
  }

  TEST_CASE("expression precedence") {
    CHECK(parse_expr("-2^2").eval(0).real() == -4.0);
    CHECK(parse_expr("2^3^2").eval(0).real() == 512.0);
    CHECK(parse_expr("2^-1").eval(0).real() == 0.5);
    CHECK(parse_expr("1-2-3").eval(0).real() == -4.0);
    CHECK(parse_expr("8/4/2").eval(0).real() == 1.0);
    CHECK(parse_expr("1+2*3").eval(0).real() == 7.0);
    CHECK(parse_expr(" ( 1 + x ) * x ").eval(2).real() == 6.0);
    CHECK(parse_expr("abs(x)").eval(-0.5).real() == 0.5);
    CHECK_THROWS_AS(parse_expr("erf(i)").eval(0), DomainError);
  }

  TEST_CASE("expression parse errors") {
    try {
      (void)parse_expr("1 + * x");
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.offset() == 4);
      CHECK_FALSE(e.expected().empty());
      CHECK(std::find(e.expected().begin(), e.expected().end(), "number") != e.expected().end());
    }
    try {
      (void)parse_expr("exp(x");
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.offset() == 5);
      CHECK(std::find(e.expected().begin(), e.expected().end(), ")") != e.expected().end());
    }
    CHECK_THROWS_AS(parse_expr(""), ParseError);
    CHECK_THROWS_AS(parse_expr("y"), ParseError);
    CHECK_THROWS_AS(parse_expr("1 2"), ParseError);
  }

  TEST_CASE("property: printing and reparsing gives the same tree") {
    std::mt19937 rng(8);
    for (int k = 0; k < 300; ++k) {
      const Expr e = random_expr(rng, 4);
      const std::string text = to_string(e);
      CHECK_MESSAGE(parse_expr(text) == e, text);
      CHECK(to_string(parse_expr(text)) == text);
    }
    for (const char* s : {"exp(-(1+x)/2)", "-2^2", "2^3^2", "0.0001*i^1.5", "1/sqrt(pi)"}) {
      const Expr e = parse_expr(s);
      CHECK(parse_expr(to_string(e)) == e);
    }
  }

  TEST_CASE("orders") {
    CHECK(parse_order("0/2") == HalfInt());
    CHECK(parse_order("3/2") == HalfInt::from_twice(3));
    CHECK_THROWS_AS(parse_order("2/3"), ParseError);
    CHECK_THROWS_AS(parse_order("-1/2"), ParseError);
    CHECK_THROWS_AS(parse_order("1.5"), ParseError);
  }

  TEST_CASE("problem files") {
    for (const char* f : {"abel.json", "abel_exponential.json", "abel_weighted.json", "integral_chain.json",
                          "relaxation_rl.json", "relaxation_first_order.json", "relaxation_caputo.json",
                          "bagley_torvik_rl.json", "bagley_torvik_caputo.json", "airy.json"}) {
      CHECK_NOTHROW(load_problem(problem(f)));
    }
    const ProblemSpec airy = load_problem(problem("airy.json"));
    REQUIRE(airy.terms.size() == 2);
    CHECK(airy.terms[0].kind == TermKind::kDerivativeRL);
    CHECK(airy.terms[0].order == HalfInt::from_twice(3));
    CHECK(airy.tolerance == 1e-10);
    CHECK_FALSE(airy.N.has_value());
    CHECK(load_problem(problem("relaxation_caputo.json")).N == std::size_t(20));
    CHECK(load_problem(problem("relaxation_caputo.json")).terms[1].kind == TermKind::kDerivativeCaputo);

    const auto field_of = [](const std::string& text) {
      try {
        (void)parse_problem(text);
      } catch (const ProblemFileError& e) {
        return e.field();
      } catch (const ParseError& e) {
        // order syntax errors are parse errors whose message leads with the field
        const std::string m = e.what();
        return m.substr(0, m.find(':'));
      }
      return std::string("<none>");
    };
    CHECK(field_of(R"({"kind":"fie","terms":[{"op":"identity"},{"op":"integral","order":"2/3"}]})") ==
          "terms[1].order");
    CHECK(field_of(R"({"kind":"fie","terms":[{"op":"identity","ordr":"1/2"}]})") == "terms[0].ordr");
    CHECK(field_of(R"({"kind":"fie","terms":[{"op":"identity"}],"extra":1})") == "extra");
    CHECK(field_of(R"({"kind":"fie","terms":[{"op":"derivative","order":"1/2"}]})") == "terms[0].op");
    CHECK(field_of(R"({"kind":"ode","terms":[{"op":"identity"}]})") == "kind");
    CHECK(field_of(R"({"kind":"fie","terms":[{"op":"identity"}],"N":0})") == "N");
    CHECK_THROWS_AS(parse_problem("{not json"), ParseError);
    CHECK_THROWS_AS(parse_problem(R"({"kind":"fie","terms":[{"op":"identity","left":"exp("}]})"), ParseError);
  }

  TEST_CASE("solve command") {
    std::ostringstream out, err;
    cli::SolveOptions opts;
    opts.n = 20;
    opts.format = cli::Format::kJson;
    REQUIRE(cli::cmd_solve(problem("abel.json"), opts, out, err) == cli::kExitOk);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j["N_used"] == 20);
    CHECK(j["error_estimate"].get<double>() < 1e-13);
    CHECK(j["grid"].size() == 100);
    CHECK(j["grid"][0]["x"].get<double>() == -1.0);
    CHECK(j["coefficients"]["a"].size() == 20);

    std::ostringstream csv, err2;
    opts.format = cli::Format::kCsv;
    opts.grid = 11;
    REQUIRE(cli::cmd_solve(problem("abel.json"), opts, csv, err2) == cli::kExitOk);
    const auto rows = csv_rows(csv.str());
    CHECK(rows[0] == std::vector<std::string>{"field", "index", "x", "value"});
    CHECK(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r[0] == "u"; }) == 11);

    std::ostringstream o3, e3;
    const std::string bad = temp_file("bad_order.json",
                                      R"({"kind":"fie","terms":[{"op":"identity"},{"op":"integral","order":"2/3"}]})");
    CHECK(cli::cmd_solve(bad, {}, o3, e3) == cli::kExitParse);
    CHECK(e3.str().find("terms[1].order") != std::string::npos);

    std::ostringstream o4, e4;
    const std::string unsolvable = temp_file("too_few.json", R"({"kind":"fde_caputo","terms":
        [{"op":"derivative","order":"4/2"},{"op":"identity"}],"constraints":[{"point":-1,"value":1}],"N":10})");
    CHECK(cli::cmd_solve(unsolvable, {}, o4, e4) == cli::kExitSolver);
    CHECK_FALSE(e4.str().empty());
  }

  TEST_CASE("convergence command") {
    std::ostringstream out, err;
    cli::ConvergenceOptions opts;
    opts.ns = {5, 10, 15, 20};
    opts.reference = "exp(1+x)*erfc(sqrt(1+x))";
    REQUIRE(cli::cmd_convergence(problem("abel.json"), opts, out, err) == cli::kExitOk);
    const auto rows = csv_rows(out.str());
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == std::vector<std::string>{"N", "estimate", "true_error"});
    CHECK(rows[3][0] == "15");
    CHECK(std::stod(rows[3][2]) <= 1e-13);

    std::ostringstream one, e2;
    REQUIRE(cli::cmd_convergence(problem("abel.json"), {{12}, {}}, one, e2) == cli::kExitOk);
    const auto r1 = csv_rows(one.str());
    REQUIRE(r1.size() == 2);
    CHECK(r1[0].size() == 2);
  }

  TEST_CASE("spy command") {
    const auto bandwidth = [](const std::string& file, std::size_t n) {
      std::ostringstream out, err;
      REQUIRE(cli::cmd_spy(problem(file), n, out, err) == cli::kExitOk);
      const auto rows = csv_rows(out.str());
      CHECK(rows[0] == std::vector<std::string>{"row", "col", "value"});
      long worst = 0;
      for (std::size_t k = 1; k < rows.size(); ++k) worst = std::max(worst, std::labs(std::stol(rows[k][0]) - std::stol(rows[k][1])));
      return worst;
    };
    CHECK(bandwidth("abel.json", 20) == 1);
    const long b = bandwidth("abel_exponential.json", 100);
    MESSAGE("exponential-coefficient spy bandwidth " << b);
    CHECK(b >= 35);
    CHECK(b <= 55);
  }

  TEST_CASE("bench command") {
    std::ostringstream out, err;
    REQUIRE(cli::cmd_bench(problem("abel.json"), {{16, 32}, 1}, out, err) == cli::kExitOk);
    const auto rows = csv_rows(out.str());
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"N", "build_seconds", "solve_seconds"});
    CHECK(std::stod(rows[2][1]) >= 0.0);
  }

  TEST_CASE("property: output is deterministic") {
    const auto run = [] {
      std::ostringstream out, err;
      cli::SolveOptions opts;
      opts.n = 24;
      opts.format = cli::Format::kJson;
      (void)cli::cmd_solve(problem("bagley_torvik_rl.json"), opts, out, err);
      return out.str();
    };
    CHECK(run() == run());
  }

  TEST_CASE("size lists") {
    CHECK(cli::parse_size_list("5,10,20") == std::vector<std::size_t>{5, 10, 20});
    CHECK_THROWS_AS(cli::parse_size_list("5,,6"), ParseError);
    CHECK_THROWS_AS(cli::parse_size_list("a"), ParseError);
  }
}

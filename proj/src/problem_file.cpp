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

#include "fracspec/problem_file.hpp"

#include <charconv>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace fracspec {

namespace {

using json = nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (auto a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ProblemFileError(where.empty() ? it.key() : where + "." + it.key(), "unknown field");
  }
}

std::string join(const std::string& where, std::string_view key) {
  return where.empty() ? std::string(key) : where + "." + std::string(key);
}

Expr expr_field(const json& v, const std::string& field) {
  try {
    return parse_expr(v.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(field + ": " + e.what(), e.offset(), e.expected());
  }
}

Scalar constant_field(const json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const Expr e = expr_field(v, field);
    if (!e.is_constant()) throw ProblemFileError(field, "expected a constant, found an expression in x");
    return e.eval(0.0);
  }
  throw ProblemFileError(field, "expected a number or a constant expression");
}

CoeffPart part_field(const json& v, const std::string& field) {
  if (v.is_null()) return std::monostate{};
  if (v.is_number()) return Scalar(v.get<double>());
  if (v.is_string()) return coeff_part_from_expr(expr_field(v, field));
  if (v.is_array()) {
    Vector t;
    for (std::size_t k = 0; k < v.size(); ++k) {
      t.push_back(constant_field(v[k], field + "[" + std::to_string(k) + "]"));
    }
    if (t.empty()) throw ProblemFileError(field, "empty coefficient list");
    return t;
  }
  throw ProblemFileError(field, "expected a number, an expression or a coefficient list");
}

CoeffFn coeff_field(const json& obj, std::string_view key, const std::string& where, CoeffFn fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(std::string(key));
  const std::string field = join(where, key);
  if (v.is_object()) {
    reject_unknown(v, field, {"smooth", "weighted"});
    CoeffFn c = CoeffFn::zero();
    if (v.contains("smooth")) c.smooth = part_field(v.at("smooth"), field + ".smooth");
    if (v.contains("weighted")) c.weighted = part_field(v.at("weighted"), field + ".weighted");
    return c;
  }
  CoeffFn c = CoeffFn::zero();
  c.smooth = part_field(v, field);
  return c;
}

ProblemSpec from_json(const json& doc) {
  if (!doc.is_object()) throw ProblemFileError("(root)", "expected a JSON object");
  reject_unknown(doc, "", {"kind", "terms", "constraints", "rhs", "tolerance", "N"});

  if (!doc.contains("kind") || !doc.at("kind").is_string()) {
    throw ProblemFileError("kind", "expected one of fie, fde_rl, fde_caputo");
  }
  const std::string kind = doc.at("kind").get<std::string>();
  if (kind != "fie" && kind != "fde_rl" && kind != "fde_caputo") {
    throw ProblemFileError("kind", "expected one of fie, fde_rl, fde_caputo, found '" + kind + "'");
  }

  ProblemSpec spec;
  if (!doc.contains("terms") || !doc.at("terms").is_array() || doc.at("terms").empty()) {
    throw ProblemFileError("terms", "expected a non-empty array");
  }
  bool has_derivative = false;
  const json& terms = doc.at("terms");
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string where = "terms[" + std::to_string(k) + "]";
    const json& t = terms[k];
    if (!t.is_object()) throw ProblemFileError(where, "expected an object");
    reject_unknown(t, where, {"op", "order", "left", "right"});
    if (!t.contains("op") || !t.at("op").is_string()) {
      throw ProblemFileError(where + ".op", "expected identity, integral or derivative");
    }
    const std::string op = t.at("op").get<std::string>();
    HalfInt order;
    if (t.contains("order")) {
      if (!t.at("order").is_string()) throw ProblemFileError(where + ".order", "expected a string \"k/2\"");
      try {
        order = parse_order(t.at("order").get<std::string>());
      } catch (const ParseError& e) {
        throw ParseError(where + ".order: " + e.what(), e.offset(), e.expected());
      }
    }
    Term term;
    term.left = coeff_field(t, "left", where, CoeffFn{});
    term.right = coeff_field(t, "right", where, CoeffFn{});
    if (op == "identity") {
      if (order.twice() != 0) throw ProblemFileError(where + ".order", "identity has order 0/2");
      if (t.contains("right")) throw ProblemFileError(where + ".right", "identity takes only a left coefficient");
      term.kind = TermKind::kIdentity;
    } else if (op == "integral" || op == "derivative") {
      if (!t.contains("order")) throw ProblemFileError(where + ".order", "missing");
      if (order.twice() <= 0) throw ProblemFileError(where + ".order", "must be positive");
      term.order = order;
      if (op == "integral") {
        term.kind = TermKind::kIntegral;
      } else if (kind == "fde_rl") {
        term.kind = TermKind::kDerivativeRL;
        has_derivative = true;
      } else if (kind == "fde_caputo") {
        if (t.contains("right")) {
          throw ProblemFileError(where + ".right", "Caputo derivatives take only a left coefficient");
        }
        term.kind = TermKind::kDerivativeCaputo;
        has_derivative = true;
      } else {
        throw ProblemFileError(where + ".op", "derivative terms need kind fde_rl or fde_caputo");
      }
    } else {
      throw ProblemFileError(where + ".op", "expected identity, integral or derivative, found '" + op + "'");
    }
    spec.terms.push_back(std::move(term));
  }
  if (kind != "fie" && !has_derivative) throw ProblemFileError("terms", "kind " + kind + " needs a derivative term");

  if (doc.contains("constraints")) {
    const json& cs = doc.at("constraints");
    if (!cs.is_array()) throw ProblemFileError("constraints", "expected an array");
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const std::string where = "constraints[" + std::to_string(k) + "]";
      const json& c = cs[k];
      if (!c.is_object()) throw ProblemFileError(where, "expected an object");
      reject_unknown(c, where, {"point", "value"});
      if (!c.contains("point") || !c.at("point").is_number()) {
        throw ProblemFileError(where + ".point", "expected a number in [-1, 1]");
      }
      const double point = c.at("point").get<double>();
      if (!(point >= -1.0 && point <= 1.0)) throw ProblemFileError(where + ".point", "must lie in [-1, 1]");
      if (!c.contains("value")) throw ProblemFileError(where + ".value", "missing");
      Constraint con;
      con.point = point;
      con.value = constant_field(c.at("value"), where + ".value");
      con.label = "u(" + format_real(point) + ")";
      spec.constraints.push_back(std::move(con));
    }
  }

  if (doc.contains("rhs")) {
    const json& r = doc.at("rhs");
    if (r.is_object()) {
      reject_unknown(r, "rhs", {"smooth", "weighted"});
      if (r.contains("smooth")) spec.rhs.smooth = part_field(r.at("smooth"), "rhs.smooth");
      if (r.contains("weighted")) spec.rhs.weighted = part_field(r.at("weighted"), "rhs.weighted");
    } else {
      spec.rhs.smooth = part_field(r, "rhs");
    }
  }

  if (doc.contains("tolerance")) {
    const json& t = doc.at("tolerance");
    if (!t.is_number() || !(t.get<double>() > 0.0)) throw ProblemFileError("tolerance", "expected a positive number");
    spec.tolerance = t.get<double>();
  }

  if (doc.contains("N")) {
    const json& n = doc.at("N");
    if (n.is_string() && n.get<std::string>() == "auto") {
      spec.N.reset();
    } else if (n.is_number_unsigned() && n.get<std::size_t>() > 0) {
      spec.N = n.get<std::size_t>();
    } else {
      throw ProblemFileError("N", "expected a positive integer or \"auto\"");
    }
  }
  return spec;
}

}  // namespace

HalfInt parse_order(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos || slash == 0) {
    throw ParseError("order '" + std::string(text) + "' is not of the form k/2", 0, {"k/2"});
  }
  int k = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + slash, k);
  if (ec != std::errc() || ptr != text.data() + slash || k < 0) {
    throw ParseError("order '" + std::string(text) + "' needs a nonnegative integer numerator", 0, {"k/2"});
  }
  if (text.substr(slash + 1) != "2") {
    throw ParseError("order '" + std::string(text) + "' must have denominator 2", slash + 1, {"2"});
  }
  return HalfInt::from_twice(k);
}

CoeffPart coeff_part_from_expr(const Expr& e) {
  if (e.is_constant()) return e.eval(0.0);
  return PointFn([e](double x) { return e.eval(x); });
}

ProblemSpec parse_problem(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0, {"JSON value"});
  }
  try {
    return from_json(doc);
  } catch (const json::exception& e) {
    throw ProblemFileError("(root)", e.what());
  }
}

ProblemSpec load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemFileError(path.string(), "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

}  // namespace fracspec

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

#include "fracspec/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>

#include "fracspec/banded.hpp"
#include "fracspec/error.hpp"
#include "fracspec/special.hpp"

namespace fracspec {

namespace {

struct FunctionName {
  std::string_view name;
  ExprFunction id;
};

constexpr std::array<FunctionName, 7> kFunctions{{
    {"exp", ExprFunction::kExp},
    {"sqrt", ExprFunction::kSqrt},
    {"erfc", ExprFunction::kErfc},
    {"erf", ExprFunction::kErf},
    {"sin", ExprFunction::kSin},
    {"cos", ExprFunction::kCos},
    {"abs", ExprFunction::kAbs},
}};

std::string_view function_name(ExprFunction f) {
  for (const auto& fn : kFunctions) {
    if (fn.id == f) return fn.name;
  }
  return "?";
}

const std::vector<std::string>& operand_tokens() {
  static const std::vector<std::string> tokens = {
      "number", "x", "pi", "e", "i", "exp", "sqrt", "erfc", "erf", "sin", "cos", "abs", "(", "-"};
  return tokens;
}

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = sum();
    skip_space();
    if (pos_ != text_.size()) {
      fail("unexpected '" + std::string(1, text_[pos_]) + "'", {"+", "-", "*", "/", "^", "end of input"});
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const {
    throw ParseError(what + " at offset " + std::to_string(pos_), pos_, std::move(expected));
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr sum() {
    Expr lhs = product();
    while (true) {
      if (accept('+')) {
        lhs = Expr::binary(ExprKind::kAdd, lhs, product());
      } else if (accept('-')) {
        lhs = Expr::binary(ExprKind::kSub, lhs, product());
      } else {
        return lhs;
      }
    }
  }

  Expr product() {
    Expr lhs = unary();
    while (true) {
      if (accept('*')) {
        lhs = Expr::binary(ExprKind::kMul, lhs, unary());
      } else if (accept('/')) {
        lhs = Expr::binary(ExprKind::kDiv, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return Expr::negate(unary());
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) return Expr::binary(ExprKind::kPow, base, unary());
    return base;
  }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input", operand_tokens());
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = sum();
      if (!accept(')')) fail("unbalanced parenthesis", {")"});
      return inner;
    }
    if (is_digit(c) || c == '.') return number();
    if (is_ident_start(c)) return identifier();
    fail("unexpected '" + std::string(1, c) + "'", operand_tokens());
  }

  Expr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    }
    // An exponent needs digits; otherwise 'e' is left for the next token.
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
      if (q < text_.size() && is_digit(text_[q])) {
        pos_ = q;
        while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
      }
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc() || ptr != text_.data() + pos_) {
      pos_ = start;
      fail("malformed number", {"number"});
    }
    return Expr::number(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") return Expr::variable();
    if (name == "pi") return Expr::constant(ExprConstant::kPi);
    if (name == "e") return Expr::constant(ExprConstant::kE);
    if (name == "i") return Expr::constant(ExprConstant::kI);
    for (const auto& fn : kFunctions) {
      if (fn.name != name) continue;
      if (!accept('(')) fail("expected '(' after " + std::string(name), {"("});
      Expr arg = sum();
      if (!accept(')')) fail("unbalanced parenthesis", {")"});
      return Expr::call(fn.id, arg);
    }
    pos_ = start;
    fail("unknown identifier '" + std::string(name) + "'", operand_tokens());
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool is_real(Scalar z) { return z.imag() == 0.0; }

Scalar real_arg_function(ExprFunction f, Scalar z) {
  if (!is_real(z)) {
    throw DomainError(std::string(function_name(f)) + " of a complex argument is not supported");
  }
  return f == ExprFunction::kErf ? Scalar(erf(z.real())) : Scalar(erfc_any(z.real()));
}

Scalar power(Scalar a, Scalar b) {
  if (is_real(a) && is_real(b)) {
    const double br = b.real();
    if (a.real() >= 0.0 || br == std::floor(br)) return std::pow(a.real(), br);
  }
  return std::pow(a, b);
}

}  // namespace

Expr Expr::number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kNumber;
  n->value = v;
  return Expr(std::move(n));
}

Expr Expr::variable() {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kVariable;
  return Expr(std::move(n));
}

Expr Expr::constant(ExprConstant c) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kConstant;
  n->constant = c;
  return Expr(std::move(n));
}

Expr Expr::negate(Expr a) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kNeg;
  n->operands = {std::move(a)};
  return Expr(std::move(n));
}

Expr Expr::binary(ExprKind kind, Expr a, Expr b) {
  if (kind != ExprKind::kAdd && kind != ExprKind::kSub && kind != ExprKind::kMul &&
      kind != ExprKind::kDiv && kind != ExprKind::kPow) {
    throw InvalidParameter("not a binary operator");
  }
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->operands = {std::move(a), std::move(b)};
  return Expr(std::move(n));
}

Expr Expr::call(ExprFunction f, Expr a) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::kCall;
  n->function = f;
  n->operands = {std::move(a)};
  return Expr(std::move(n));
}

bool Expr::is_constant() const {
  if (kind() == ExprKind::kVariable) return false;
  for (const auto& o : node_->operands) {
    if (!o.is_constant()) return false;
  }
  return true;
}

Scalar Expr::eval(double x) const {
  switch (kind()) {
    case ExprKind::kNumber:
      return value();
    case ExprKind::kVariable:
      return x;
    case ExprKind::kConstant:
      switch (constant_id()) {
        case ExprConstant::kPi:
          return std::numbers::pi;
        case ExprConstant::kE:
          return std::numbers::e;
        case ExprConstant::kI:
          return Scalar(0.0, 1.0);
      }
      break;
    case ExprKind::kNeg:
      return -operand(0).eval(x);
    case ExprKind::kAdd:
      return operand(0).eval(x) + operand(1).eval(x);
    case ExprKind::kSub:
      return operand(0).eval(x) - operand(1).eval(x);
    case ExprKind::kMul:
      return operand(0).eval(x) * operand(1).eval(x);
    case ExprKind::kDiv:
      return operand(0).eval(x) / operand(1).eval(x);
    case ExprKind::kPow:
      return power(operand(0).eval(x), operand(1).eval(x));
    case ExprKind::kCall: {
      const Scalar a = operand(0).eval(x);
      switch (function()) {
        case ExprFunction::kExp:
          return std::exp(a);
        case ExprFunction::kSqrt:
          return is_real(a) && a.real() >= 0.0 ? Scalar(std::sqrt(a.real())) : std::sqrt(a);
        case ExprFunction::kErfc:
        case ExprFunction::kErf:
          return real_arg_function(function(), a);
        case ExprFunction::kSin:
          return std::sin(a);
        case ExprFunction::kCos:
          return std::cos(a);
        case ExprFunction::kAbs:
          return std::abs(a);
      }
      break;
    }
  }
  return Scalar{};
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind() != b.kind() || a.operand_count() != b.operand_count()) return false;
  switch (a.kind()) {
    case ExprKind::kNumber:
      if (a.value() != b.value()) return false;
      break;
    case ExprKind::kConstant:
      if (a.constant_id() != b.constant_id()) return false;
      break;
    case ExprKind::kCall:
      if (a.function() != b.function()) return false;
      break;
    default:
      break;
  }
  for (std::size_t k = 0; k < a.operand_count(); ++k) {
    if (!(a.operand(k) == b.operand(k))) return false;
  }
  return true;
}

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::kNumber:
      return format_real(e.value());
    case ExprKind::kVariable:
      return "x";
    case ExprKind::kConstant:
      switch (e.constant_id()) {
        case ExprConstant::kPi:
          return "pi";
        case ExprConstant::kE:
          return "e";
        case ExprConstant::kI:
          return "i";
      }
      break;
    case ExprKind::kNeg:
      return "(-" + to_string(e.operand(0)) + ")";
    case ExprKind::kAdd:
      return "(" + to_string(e.operand(0)) + " + " + to_string(e.operand(1)) + ")";
    case ExprKind::kSub:
      return "(" + to_string(e.operand(0)) + " - " + to_string(e.operand(1)) + ")";
    case ExprKind::kMul:
      return "(" + to_string(e.operand(0)) + " * " + to_string(e.operand(1)) + ")";
    case ExprKind::kDiv:
      return "(" + to_string(e.operand(0)) + " / " + to_string(e.operand(1)) + ")";
    case ExprKind::kPow:
      return "(" + to_string(e.operand(0)) + " ^ " + to_string(e.operand(1)) + ")";
    case ExprKind::kCall:
      return std::string(function_name(e.function())) + "(" + to_string(e.operand(0)) + ")";
  }
  return {};
}

}  // namespace fracspec

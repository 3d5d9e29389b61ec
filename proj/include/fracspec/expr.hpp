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

#ifndef FRACSPEC_EXPR_HPP
#define FRACSPEC_EXPR_HPP

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fracspec/scalar.hpp"

namespace fracspec {

enum class ExprKind { kNumber, kVariable, kConstant, kNeg, kAdd, kSub, kMul, kDiv, kPow, kCall };

enum class ExprConstant { kPi, kE, kI };

enum class ExprFunction { kExp, kSqrt, kErfc, kErf, kSin, kCos, kAbs };

/**
 * Immutable expression tree in one variable x.
 *
 * Grammar, loosest binding first:
 *
 *   sum     := product (('+' | '-') product)*
 *   product := unary (('*' | '/') unary)*
 *   unary   := '-' unary | power
 *   power   := primary ('^' unary)?
 *   primary := number | 'x' | 'pi' | 'e' | 'i' | func '(' sum ')' | '(' sum ')'
 *
 * so ^ is right associative and binds tighter than unary minus.
 */
class Expr {
 public:
  static Expr number(double v);
  static Expr variable();
  static Expr constant(ExprConstant c);
  static Expr negate(Expr a);
  static Expr binary(ExprKind kind, Expr a, Expr b);
  static Expr call(ExprFunction f, Expr a);

  ExprKind kind() const { return node_->kind; }
  double value() const { return node_->value; }
  ExprConstant constant_id() const { return node_->constant; }
  ExprFunction function() const { return node_->function; }
  const Expr& operand(std::size_t k) const { return node_->operands[k]; }
  std::size_t operand_count() const { return node_->operands.size(); }

  /// True when x does not occur.
  bool is_constant() const;

  /// Complex evaluation. erf and erfc require a real argument.
  Scalar eval(double x) const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node {
    ExprKind kind = ExprKind::kNumber;
    double value = 0.0;
    ExprConstant constant = ExprConstant::kPi;
    ExprFunction function = ExprFunction::kExp;
    std::vector<Expr> operands;
  };
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

/// Throws ParseError carrying the byte offset and the tokens that would have
/// been accepted there.
Expr parse_expr(std::string_view text);

/// Fully parenthesised text that parses back to an equal tree. Numbers use
/// 17 significant digits.
std::string to_string(const Expr& e);

}  // namespace fracspec

#endif  // FRACSPEC_EXPR_HPP

// expr.hpp — tiny arithmetic expression parser for analytic density fields K(x).
//
// Grammar (recursive descent):
//   expr    := term (('+'|'-') term)*
//   term    := pow (('*'|'/') pow)*
//   pow     := unary ('^' pow)?            (right associative)
//   unary   := ('-'|'+') unary | primary
//   primary := number | var | func '(' expr (',' expr)* ')' | '(' expr ')'
// Variables: x, y, z (aliases x1, x2, x3).
// Functions: abs, sqrt, sin, cos, exp, log, pow, min, max.
#pragma once

#include <memory>
#include <string>

#include "scat/common.hpp"

namespace scat {

class Expr {
 public:
  // Parses the expression; throws ValidationError with a position on syntax errors.
  static Expr parse(const std::string& text);

  Expr() = default;
  double eval(const Vec3& p) const;
  const std::string& text() const { return text_; }
  bool empty() const { return root_ == nullptr; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace scat

#pragma once

#include <cmath>
#include <memory>
#include <span>
#include <string>

#include "finsler/jets.hpp"

namespace finsler {

/// Node of an energy expression. Exponents of `^` are folded to constants at
/// parse time, so every tree is closed under jet-valued evaluation.
struct Expr {
  enum class Kind { Constant, X, Y, Add, Sub, Mul, Div, Neg, Pow, Sqrt };

  Kind kind = Kind::Constant;
  double value = 0.0;  // Constant value, or the exponent of Pow
  int index = 0;       // 0-based coordinate index of X / Y
  std::shared_ptr<const Expr> lhs;
  std::shared_ptr<const Expr> rhs;
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Recursive-descent parse of an energy expression over x1..xn, y1..yn.
///
/// Grammar, loosest binding first:
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?        exponent must fold to a constant
///   primary := number | x<k> | y<k> | 'sqrt' '(' expr ')' | '(' expr ')'
///
/// Throws ParseError (with line, column and the expected tokens),
/// UnknownIdentifier, or DimensionMismatch when an index exceeds n.
ExprPtr parse_energy(const std::string& source, int n);

/// Fully parenthesized rendering that parses back to the same tree.
std::string to_string(const Expr& e);

bool same_structure(const Expr& a, const Expr& b);

/// Largest coordinate index (1-based) referenced by the expression.
int max_coordinate_index(const Expr& e);

template <class T>
T evaluate(const Expr& e, std::span<const T> x, std::span<const T> y) {
  using std::pow;
  using std::sqrt;
  switch (e.kind) {
    case Expr::Kind::Constant:
      return T(e.value);
    case Expr::Kind::X:
      return x[static_cast<std::size_t>(e.index)];
    case Expr::Kind::Y:
      return y[static_cast<std::size_t>(e.index)];
    case Expr::Kind::Add:
      return evaluate(*e.lhs, x, y) + evaluate(*e.rhs, x, y);
    case Expr::Kind::Sub:
      return evaluate(*e.lhs, x, y) - evaluate(*e.rhs, x, y);
    case Expr::Kind::Mul:
      return evaluate(*e.lhs, x, y) * evaluate(*e.rhs, x, y);
    case Expr::Kind::Div:
      return evaluate(*e.lhs, x, y) / evaluate(*e.rhs, x, y);
    case Expr::Kind::Neg:
      return -evaluate(*e.lhs, x, y);
    case Expr::Kind::Pow:
      return pow(evaluate(*e.lhs, x, y), e.value);
    case Expr::Kind::Sqrt:
      return sqrt(evaluate(*e.lhs, x, y));
  }
  return T(0.0);
}

/// The expression as an energy function on the n-dimensional slit bundle.
ScalarField energy_from_expression(ExprPtr e, int n);

}  // namespace finsler

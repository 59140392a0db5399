// mhdpol - scalar expression trees over (t, x1, x2, x3) with forward-mode
// dual-number evaluation (value plus exact first derivatives)

#ifndef MHDPOL_EXPR_HPP_
#define MHDPOL_EXPR_HPP_

#include <array>
#include <memory>
#include <string>

#include "mhdpol/linalg.hpp"

namespace mhdpol {

// Value and partials with respect to (t, x1, x2, x3).
struct Dual {
  double v = 0.0;
  std::array<double, 4> d{};

  static Dual constant(double c) { return {c, {0, 0, 0, 0}}; }
  static Dual variable(double value, int slot) {
    Dual r{value, {0, 0, 0, 0}};
    r.d[slot] = 1.0;
    return r;
  }
};

Dual operator+(const Dual& a, const Dual& b);
Dual operator-(const Dual& a, const Dual& b);
Dual operator-(const Dual& a);
Dual operator*(const Dual& a, const Dual& b);
Dual operator/(const Dual& a, const Dual& b);

// Immutable expression tree. Shared subtrees are fine: evaluation is pure.
class Expr {
 public:
  Expr() = default;

  // Evaluates value and first derivatives at (t, x). Throws DomainError when
  // a subexpression leaves its domain or a non-finite value appears.
  Dual eval(double t, const Vec3& x) const;

  double value(double t, const Vec3& x) const { return eval(t, x).v; }

  bool empty() const { return !root_; }

  std::string to_string() const;

  struct Node;
  using NodePtr = std::shared_ptr<const Node>;
  explicit Expr(NodePtr root) : root_(std::move(root)) {}
  const NodePtr& root() const { return root_; }

 private:
  NodePtr root_;
};

// Parses the expression grammar:
//   literals, variables t/x1/x2/x3, binary + - * / ^ (right-associative ^),
//   unary minus (binding tighter than the base of ^), parentheses, and the
//   functions sin, cos, exp, sqrt, tanh, abs.
// Throws SyntaxError (with byte offset and expected-token set) or
// UnknownIdentifier.
Expr parse_expr(const std::string& source);

// Convenience: an expression that is the constant c.
Expr constant_expr(double c);

}  // namespace mhdpol

#endif  // MHDPOL_EXPR_HPP_

#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cdiff/scalar.hpp"

namespace cdiff {

enum class ExprKind { Const, Var, Add, Mul, Neg, Pow, Prim };

enum class PrimFn { Sin, Cos, Exp };

const char* prim_name(PrimFn fn);

namespace detail {
struct ExprNode;
}

// Immutable scalar expression over 1-based variables x1, x2, ...
// Subtrees are shared between expressions; after repeated composition the
// value is a DAG, so evaluation and normalization memoize per node.
class Expr {
 public:
  static Expr constant(Scalar value);
  static Expr zero(Flavor flavor);
  static Expr one(Flavor flavor);
  static Expr var(int index, Flavor flavor);
  static Expr add(Expr lhs, Expr rhs);
  static Expr mul(Expr lhs, Expr rhs);
  static Expr neg(Expr arg);
  static Expr pow(Expr base, unsigned exponent);
  static Expr prim(PrimFn fn, Expr arg);

  ExprKind kind() const;
  Flavor flavor() const;
  // Largest variable index that occurs, 0 for a closed expression.
  int max_var() const;
  bool is_const_zero() const;
  bool is_const_one() const;

  const Scalar& const_value() const;  // Const
  int var_index() const;              // Var
  Expr lhs() const;                   // Add, Mul
  Expr rhs() const;                   // Add, Mul
  Expr child() const;                 // Neg, Pow, Prim
  unsigned exponent() const;          // Pow
  PrimFn fn() const;                  // Prim

  const detail::ExprNode* raw() const { return node_.get(); }

 private:
  explicit Expr(std::shared_ptr<const detail::ExprNode> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const detail::ExprNode> node_;
};

namespace detail {
struct ExprNode {
  ExprKind kind;
  Flavor flavor;
  int max_var = 0;
  Scalar value;                         // Const
  int var = 0;                          // Var
  std::shared_ptr<const ExprNode> a;    // lhs / child
  std::shared_ptr<const ExprNode> b;    // rhs
  unsigned exponent = 0;                // Pow
  PrimFn fn = PrimFn::Sin;              // Prim
};
}  // namespace detail

// Recursive evaluation at a point (x1..xn = point[0..n-1]). Throws EvalError
// when the point is shorter than the largest variable index or a Float
// computation leaves the finite range; throws FlavorError on flavor mismatch.
Scalar eval_expr(const Expr& e, const std::vector<Scalar>& point);

// Float fast path used by sampled equality and the finite-difference oracle.
double eval_float(const Expr& e, std::span<const double> point);

// Symbolic ∂e/∂x_i. Same flavor as e; differentiating sin in Exact flavor
// would need cos and therefore throws FlavorError.
Expr partial_derivative(const Expr& e, int var);

// Simultaneous substitution x_{i+1} := replacements[i]. Every variable of e
// must have a replacement, and all replacements must share e's flavor.
Expr substitute(const Expr& e, std::span<const Expr> replacements);

// Grammar (shared by the morphism-file format):
//   expression := term (('+'|'-') term)*
//   term       := factor ('*' factor)*
//   factor     := base ('^' nonneg-int)?
//   base       := number | 'x' int | '(' expression ')' | fn '(' expression ')'
//   fn         := 'sin' | 'cos' | 'exp'
//   number     := decimal (exponent form allowed) | 'p/q'
// 'a - b' parses as Add(a, Neg(b)). Functions require Float flavor; '-' is
// rejected in Exact flavor when nat_semiring is set.
Expr parse_expr(std::string_view text, int n_vars, Flavor flavor,
                bool nat_semiring = false);

// Minimal-parentheses form that re-parses to an equal expression.
std::string print_expr(const Expr& e);

}  // namespace cdiff

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "cdiff/equality.hpp"
#include "cdiff/expr.hpp"

namespace cdiff {

// An object: the space of the given finite dimension. Products add
// dimensions; the terminal object has dimension 0.
struct Obj {
  int dim = 0;
  friend bool operator==(Obj, Obj) = default;
};

enum class BlockSide { First, Second };

// Designates one factor of a product domain of shape (n1, n2).
struct Block {
  BlockSide which = BlockSide::First;
  int n1 = 0;
  int n2 = 0;

  int size() const { return which == BlockSide::First ? n1 : n2; }
};

// A map R^n -> R^m: one expression per output coordinate over x1..xn. The
// universal morphism representation; immutable.
class Morph {
 public:
  Morph(Obj dom, Obj cod, Flavor flavor, std::vector<Expr> exprs);

  Obj dom() const { return dom_; }
  Obj cod() const { return cod_; }
  Flavor flavor() const { return flavor_; }
  const std::vector<Expr>& exprs() const { return exprs_; }
  const Expr& expr(int i) const { return exprs_[static_cast<std::size_t>(i)]; }

  std::vector<Scalar> eval(const std::vector<Scalar>& point) const;
  std::vector<double> eval_floats(std::span<const double> point) const;

 private:
  Obj dom_;
  Obj cod_;
  Flavor flavor_;
  std::vector<Expr> exprs_;
};

// --- finite-product / additive structure ------------------------------------

Morph identity_morph(int n, Flavor flavor);
// which = 0 selects the first factor of R^{n1} x R^{n2}, which = 1 the second.
Morph projection(int n1, int n2, int which, Flavor flavor);
Morph injection(int n1, int n2, int which, Flavor flavor);
// <f, g>: requires equal domains.
Morph pairing(const Morph& f, const Morph& g);
// f x g = <f∘pi0, g∘pi1> on the product of the domains.
Morph product_morph(const Morph& f, const Morph& g);
Morph zero_morph(Obj dom, Obj cod, Flavor flavor);
// The unique map into the terminal object.
Morph terminal_morph(Obj dom, Flavor flavor);
Morph add_morphs(const Morph& f, const Morph& g);
// Constant morphism from the given domain.
Morph constant_morph(Obj dom, const std::vector<Scalar>& values);

// g ∘ f by simultaneous substitution; eval(g∘f, p) = eval(g, eval(f, p)).
Morph compose(const Morph& g, const Morph& f);

// --- the differential combinator ---------------------------------------------

// D[f]: R^{2n} -> R^m. Variables x1..xn are the point, x_{n+1}..x_{2n} the
// direction: the j-th coordinate is sum_i ∂f_j/∂x_i(x1..xn) * x_{n+i}.
Morph differentiate(const Morph& f);

// Partial derivative with the direction zeroed outside the chosen block.
// Domain is (n1+n2) + block size: the point (a, b) followed by the direction c
// for that block.
Morph partial_differentiate(const Morph& f, const Block& block);

// Linearity is decided by the defining equation D[f] = f∘pi1, exactly in the
// Exact flavor and sampled in Float. The *_given forms take the derivative to
// use, so alternative differential structures (the biproduct instance) can be
// checked against the same equations.
bool is_linear(const Morph& f, const EqConfig& cfg = {});
bool is_linear_given(const Morph& f, const Morph& df, const EqConfig& cfg = {});
bool is_linear_in(const Morph& f, const Block& block, const EqConfig& cfg = {});
bool is_linear_in_given(const Morph& f, const Morph& df, const Block& block,
                        const EqConfig& cfg = {});
bool is_bilinear(const Morph& f, std::pair<int, int> split,
                 const EqConfig& cfg = {});

// The two sides of the block-linearity defining equation for f, with df as
// the total derivative: lhs is the block partial of f rebuilt from df, rhs is
// f with the block replaced by the fresh direction variables. f is linear in
// the block iff the sides are equal.
std::pair<Morph, Morph> linearity_equation(const Morph& f, const Morph& df,
                                           const Block& block);

// Linearization in context: D[f]∘<<pi0, 0>, <0, pi1>> over a domain split as
// (n1, n2). Same dom/cod as f; the result is linear in the second block.
Morph linearize_partial(const Morph& f, std::pair<int, int> split);

// --- equality ----------------------------------------------------------------

struct MorphCompare {
  bool equal = true;
  std::optional<EqWitness> witness;
};

MorphCompare morph_compare(const Morph& f, const Morph& g,
                           const EqConfig& cfg = {});
bool morphs_equal(const Morph& f, const Morph& g, const EqConfig& cfg = {});

}  // namespace cdiff

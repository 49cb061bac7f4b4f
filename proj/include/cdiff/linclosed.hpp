#pragma once

#include <utility>
#include <vector>

#include "cdiff/linmorph.hpp"
#include "cdiff/morph.hpp"

namespace cdiff {

// Dimension of the internal linear hom L(R^src, R^tgt).
inline int lin_hom_dim(int src_dim, int tgt_dim) { return src_dim * tgt_dim; }

// Evaluation map ε : L(A,B) × A -> B with dim A = n, dim B = m. Lays the
// first nm coordinates out as an m x n matrix (row-major) and applies it to
// the last n coordinates: the j-th output is sum_i x_{(j-1)n+i} * x_{nm+i}.
// Bilinear with split (nm, n).
Morph eval_linear(int n, int m, Flavor flavor);

// Linear curry of f : R^n × R^k -> R^m, which must be linear in its second
// block (checked; throws CurryOfNonlinearError with the failing equation as
// witness). The result R^n -> R^{km} probes the canonical basis vectors:
// coordinate (j-1)k + i is f_j with the second block set to e_i. It is the
// unique map with eval_linear ∘ (curry × 1) = f.
Morph linear_curry(const Morph& f, std::pair<int, int> split,
                   const EqConfig& cfg = {});

// Basis probing without the precondition check, for callers whose input is
// linear in the second block by construction.
Morph linear_curry_unchecked(const Morph& f, std::pair<int, int> split);

// Jacobian J(f) = curry of D[f] : R^n -> R^{nm}. Reshaping J(f)(a) row-major
// gives the classical Jacobian matrix at a.
Morph jacobian(const Morph& f);

// The point of a linear morphism: the constant map T -> L(A,B) picking out
// the row-major layout of the matrix.
Morph point_of_linear(const LinMorph& f);

// Hom composition ⊙ : L(B,C) × L(A,B) -> L(A,C) with dim A = n, dim B = k,
// dim C = m. On layouts it is matrix multiplication.
Morph compose_hom(int n, int k, int m, Flavor flavor);

// Hom functor action L(f,g) : L(B,X) -> L(A,Y) for linear f : A -> B and
// g : X -> Y; on layouts h |-> g∘h∘f.
Morph hom_functor(const LinMorph& f, const LinMorph& g);

// The natural isomorphisms of the internal linear hom, as mutually inverse
// coordinate permutations under the row-major layout.
enum class HomIso {
  ProductTarget,   // L(A, B×C) ≅ L(A,B) × L(A,C);   dims {n, m1, m2}
  ProductSource,   // L(A,C) × L(B,C) ≅ L(A×B, C);   dims {n1, n2, m}
  TerminalTarget,  // L(A, T) ≅ T;                   dims {n}
  TerminalSource,  // T ≅ L(T, A);                   dims {m}
  SwapNested,      // L(A, L(B,C)) ≅ L(B, L(A,C));   dims {n, k, m}
};

// Returns (forward, backward); compose to identities both ways.
std::pair<Morph, Morph> hom_iso(HomIso kind, const std::vector<int>& dims,
                                Flavor flavor);

// Reverse derivative R[f] : R^n × R^m -> R^n; the i-th output is
// sum_j ∂f_j/∂x_i(x1..xn) * x_{n+j} (the transposed-Jacobian action).
Morph reverse_differentiate(const Morph& f);

// D[f] rebuilt from the reverse combinator alone:
// <1,0> × 1 ; R[R[f]] ; pi1. Equal to differentiate(f).
Morph diff_from_reverse(const Morph& f);

// Linear transpose τ : L(A,B) -> L(B,A), the coordinate permutation
// τ(v)_{(i-1)m+j} = v_{(j-1)n+i} realizing matrix transposition on layouts.
Morph transpose_morph(int n, int m, Flavor flavor);

// Contextual dagger of f : R^n × R^k -> R^m linear in its second block:
// ε ∘ (τ × 1) ∘ (curry(f) × 1) : R^n × R^m -> R^k. Pointwise applies the
// transpose of the matrix of f(a, ·).
Morph dagger_in_context(const Morph& f, std::pair<int, int> split,
                        const EqConfig& cfg = {});

// Gradient ∇(f) = curry of R[f] : R^n -> R^{mn}; equals τ ∘ J(f).
Morph gradient(const Morph& f);

// Hessian H(f) = J(∇(f)) : R^n -> R^{n·(m·n)}; for m = 1 the reshaped n x n
// matrix is symmetric at every point.
Morph hessian(const Morph& f);

}  // namespace cdiff

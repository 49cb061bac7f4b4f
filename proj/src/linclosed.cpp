#include "cdiff/linclosed.hpp"

#include <string>

#include "cdiff/error.hpp"
#include "cdiff/morphfile.hpp"

namespace cdiff {

Morph eval_linear(int n, int m, Flavor flavor) {
  if (n < 0 || m < 0) throw DimensionError("negative hom dimensions");
  const int nm = lin_hom_dim(n, m);
  std::vector<Expr> exprs;
  exprs.reserve(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j) {
    Expr sum = Expr::zero(flavor);
    for (int i = 1; i <= n; ++i) {
      Expr term = Expr::mul(Expr::var((j - 1) * n + i, flavor),
                            Expr::var(nm + i, flavor));
      sum = i == 1 ? term : Expr::add(sum, term);
    }
    exprs.push_back(sum);
  }
  return Morph({nm + n}, {m}, flavor, std::move(exprs));
}

namespace {

// Basis probing without the linearity precondition check, for the operators
// whose input is linear in the second block by construction (derivatives,
// reverse derivatives, hom-functor composites).
Morph curry_unchecked(const Morph& f, int n, int k) {
  const int m = f.cod().dim;
  const Flavor fl = f.flavor();
  std::vector<Expr> exprs;
  exprs.reserve(static_cast<std::size_t>(k * m));
  for (int j = 0; j < m; ++j) {
    for (int i = 1; i <= k; ++i) {
      std::vector<Expr> sub;
      sub.reserve(static_cast<std::size_t>(n + k));
      for (int v = 1; v <= n; ++v) sub.push_back(Expr::var(v, fl));
      for (int v = 1; v <= k; ++v)
        sub.push_back(v == i ? Expr::one(fl) : Expr::zero(fl));
      exprs.push_back(substitute(f.expr(j), sub));
    }
  }
  return Morph({n}, {k * m}, fl, std::move(exprs));
}

}  // namespace

Morph linear_curry_unchecked(const Morph& f, std::pair<int, int> split) {
  const auto [n, k] = split;
  if (n < 0 || k < 0 || n + k != f.dom().dim)
    throw DimensionError("curry split does not match the domain");
  return curry_unchecked(f, n, k);
}

Morph linear_curry(const Morph& f, std::pair<int, int> split,
                   const EqConfig& cfg) {
  const auto [n, k] = split;
  if (n < 0 || k < 0 || n + k != f.dom().dim)
    throw DimensionError("curry split does not match the domain");
  Block block{BlockSide::Second, n, k};
  auto [lhs, rhs] = linearity_equation(f, differentiate(f), block);
  MorphCompare cmp = morph_compare(lhs, rhs, cfg);
  if (!cmp.equal) {
    std::string witness =
        "block partial:\n" + print_morph_file(lhs) + "differs from\n" +
        print_morph_file(rhs);
    if (cmp.witness && !cmp.witness->point.empty()) {
      witness += "at point (";
      for (std::size_t i = 0; i < cmp.witness->point.size(); ++i) {
        if (i) witness += ", ";
        witness += std::to_string(cmp.witness->point[i]);
      }
      witness += "): " + std::to_string(cmp.witness->lhs) + " vs " +
                 std::to_string(cmp.witness->rhs);
    }
    throw CurryOfNonlinearError("curry of a map that is not linear in its second argument",
                                std::move(witness));
  }
  return curry_unchecked(f, n, k);
}

Morph jacobian(const Morph& f) {
  const int n = f.dom().dim;
  return curry_unchecked(differentiate(f), n, n);
}

Morph point_of_linear(const LinMorph& f) {
  return constant_morph({0}, f.vec());
}

Morph compose_hom(int n, int k, int m, Flavor flavor) {
  if (n < 0 || k < 0 || m < 0) throw DimensionError("negative hom dimensions");
  const int km = k * m;
  std::vector<Expr> exprs;
  exprs.reserve(static_cast<std::size_t>(n * m));
  // Result entry (row j <= m, col i <= n) = sum_t G[j][t] * F[t][i] where G
  // occupies the first km coordinates and F the next kn.
  for (int j = 1; j <= m; ++j) {
    for (int i = 1; i <= n; ++i) {
      Expr sum = Expr::zero(flavor);
      for (int t = 1; t <= k; ++t) {
        Expr term = Expr::mul(Expr::var((j - 1) * k + t, flavor),
                              Expr::var(km + (t - 1) * n + i, flavor));
        sum = t == 1 ? term : Expr::add(sum, term);
      }
      exprs.push_back(sum);
    }
  }
  return Morph({km + k * n}, {n * m}, flavor, std::move(exprs));
}

Morph hom_functor(const LinMorph& f, const LinMorph& g) {
  // f : A -> B (rows = dim B, cols = dim A), g : X -> Y.
  const int a = f.cols(), b = f.rows();
  const int x = g.cols(), y = g.rows();
  if (f.flavor() != g.flavor()) throw FlavorError("hom functor flavor mismatch");
  const Flavor fl = f.flavor();
  const int bx = lin_hom_dim(b, x);
  // curry of L(B,X) × A --1×f--> L(B,X) × B --ε--> X --g--> Y
  Morph one_times_f =
      product_morph(identity_morph(bx, fl), f.to_morph());
  Morph inner = compose(g.to_morph(), compose(eval_linear(b, x, fl), one_times_f));
  return curry_unchecked(inner, bx, a);
}

namespace {

// Permutation morphism: output t is the variable at position perm[t] (0-based).
Morph permutation_morph(const std::vector<int>& perm, Flavor flavor) {
  std::vector<Expr> exprs;
  exprs.reserve(perm.size());
  for (int src : perm) exprs.push_back(Expr::var(src + 1, flavor));
  const int n = static_cast<int>(perm.size());
  return Morph({n}, {n}, flavor, std::move(exprs));
}

std::vector<int> inverse_perm(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t t = 0; t < perm.size(); ++t)
    inv[static_cast<std::size_t>(perm[t])] = static_cast<int>(t);
  return inv;
}

void need_dims(const std::vector<int>& dims, std::size_t n) {
  if (dims.size() != n) throw DimensionError("wrong dim count for this iso");
  for (int d : dims)
    if (d < 0) throw DimensionError("negative dimension");
}

}  // namespace

std::pair<Morph, Morph> hom_iso(HomIso kind, const std::vector<int>& dims,
                                Flavor flavor) {
  switch (kind) {
    case HomIso::ProductTarget: {
      // Rows of B×C are the rows of B followed by the rows of C, so the
      // row-major layouts already agree: the identity permutation.
      need_dims(dims, 3);
      const int n = dims[0], m1 = dims[1], m2 = dims[2];
      Morph id = identity_morph(n * (m1 + m2), flavor);
      return {id, id};
    }
    case HomIso::ProductSource: {
      need_dims(dims, 3);
      const int n1 = dims[0], n2 = dims[1], m = dims[2];
      // Row j of the (n1+n2)-column matrix is row j of the A part glued to
      // row j of the B part.
      std::vector<int> perm;
      perm.reserve(static_cast<std::size_t>(m * (n1 + n2)));
      for (int j = 0; j < m; ++j) {
        for (int i = 0; i < n1; ++i) perm.push_back(j * n1 + i);
        for (int i = 0; i < n2; ++i) perm.push_back(m * n1 + j * n2 + i);
      }
      return {permutation_morph(inverse_perm(perm), flavor),
              permutation_morph(perm, flavor)};
    }
    case HomIso::TerminalTarget: {
      need_dims(dims, 1);
      Morph empty({0}, {0}, flavor, {});
      return {empty, empty};
    }
    case HomIso::TerminalSource: {
      need_dims(dims, 1);
      Morph empty({0}, {0}, flavor, {});
      return {empty, empty};
    }
    case HomIso::SwapNested: {
      need_dims(dims, 3);
      const int n = dims[0], k = dims[1], m = dims[2];
      // Entry (c, b, i): target row c of C, inner column b of B, outer
      // column i of A. In L(A, L(B,C)) it sits at ((c*k + b) * n) + i; in
      // L(B, L(A,C)) at ((c*n + i) * k) + b. (All 0-based.)
      std::vector<int> perm(static_cast<std::size_t>(n * k * m));
      for (int c = 0; c < m; ++c)
        for (int i = 0; i < n; ++i)
          for (int b = 0; b < k; ++b)
            perm[static_cast<std::size_t>((c * n + i) * k + b)] =
                (c * k + b) * n + i;
      return {permutation_morph(perm, flavor),
              permutation_morph(inverse_perm(perm), flavor)};
    }
  }
  throw DimensionError("unknown iso kind");
}

Morph reverse_differentiate(const Morph& f) {
  const int n = f.dom().dim;
  const int m = f.cod().dim;
  const Flavor fl = f.flavor();
  std::vector<Expr> exprs;
  exprs.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    Expr sum = Expr::zero(fl);
    bool empty = true;
    for (int j = 0; j < m; ++j) {
      Expr dj = partial_derivative(f.expr(j), i);
      if (dj.is_const_zero()) continue;
      Expr term = dj.is_const_one()
                      ? Expr::var(n + j + 1, fl)
                      : Expr::mul(dj, Expr::var(n + j + 1, fl));
      sum = empty ? term : Expr::add(sum, term);
      empty = false;
    }
    exprs.push_back(sum);
  }
  return Morph({n + m}, {n}, fl, std::move(exprs));
}

Morph diff_from_reverse(const Morph& f) {
  const int n = f.dom().dim;
  const int m = f.cod().dim;
  const Flavor fl = f.flavor();
  // (a, b) |-> ((a, 0), b) : R^{2n} -> (R^n × R^m) × R^n
  std::vector<Expr> ins;
  ins.reserve(static_cast<std::size_t>(2 * n + m));
  for (int i = 1; i <= n; ++i) ins.push_back(Expr::var(i, fl));
  for (int j = 0; j < m; ++j) ins.push_back(Expr::zero(fl));
  for (int i = 1; i <= n; ++i) ins.push_back(Expr::var(n + i, fl));
  Morph first({2 * n}, {n + m + n}, fl, std::move(ins));
  Morph second_reverse = reverse_differentiate(reverse_differentiate(f));
  return compose(projection(n, m, 1, fl), compose(second_reverse, first));
}

Morph transpose_morph(int n, int m, Flavor flavor) {
  if (n < 0 || m < 0) throw DimensionError("negative hom dimensions");
  std::vector<Expr> exprs(static_cast<std::size_t>(n * m), Expr::zero(flavor));
  for (int j = 1; j <= m; ++j)
    for (int i = 1; i <= n; ++i)
      exprs[static_cast<std::size_t>((i - 1) * m + j - 1)] =
          Expr::var((j - 1) * n + i, flavor);
  return Morph({n * m}, {n * m}, flavor, std::move(exprs));
}

Morph dagger_in_context(const Morph& f, std::pair<int, int> split,
                        const EqConfig& cfg) {
  const auto [n, k] = split;
  const int m = f.cod().dim;
  const Flavor fl = f.flavor();
  Morph lam = linear_curry(f, split, cfg);  // checked
  Morph step1 = product_morph(lam, identity_morph(m, fl));
  Morph step2 = product_morph(transpose_morph(k, m, fl), identity_morph(m, fl));
  return compose(eval_linear(m, k, fl), compose(step2, step1));
}

Morph gradient(const Morph& f) {
  const int n = f.dom().dim;
  const int m = f.cod().dim;
  return curry_unchecked(reverse_differentiate(f), n, m);
}

Morph hessian(const Morph& f) { return jacobian(gradient(f)); }

}  // namespace cdiff

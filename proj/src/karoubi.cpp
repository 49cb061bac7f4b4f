#include "cdiff/karoubi.hpp"

#include "cdiff/error.hpp"
#include "cdiff/morphfile.hpp"

namespace cdiff {

namespace {

LinMorph product_idem(const LinMorph& e) {
  // Block diagonal (e, e) on A × A.
  const int n = e.cols();
  LinMorph out(2 * n, 2 * n, e.flavor());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      out.set(j, i, e.at(j, i));
      out.set(n + j, n + i, e.at(j, i));
    }
  return out;
}

}  // namespace

LsObject ls_object(Obj base, LinMorph idem) {
  if (idem.rows() != base.dim || idem.cols() != base.dim)
    throw DimensionError("idempotent shape does not match the object");
  if (!(idem.times(idem) == idem))
    throw NotIdempotentError("e∘e differs from e");
  return LsObject{base, std::move(idem)};
}

LsMorph ls_make(LsObject src, LsObject dst, Morph f, const EqConfig& cfg) {
  if (f.dom() != src.base || f.cod() != dst.base)
    throw DimensionError("map shape does not match the completion objects");
  Morph lhs = compose(f, src.idem.to_morph());
  Morph rhs = compose(dst.idem.to_morph(), f);
  MorphCompare cmp = morph_compare(lhs, rhs, cfg);
  if (!cmp.equal) {
    std::string witness = "f∘e:\n" + print_morph_file(lhs) + "e'∘f:\n" +
                          print_morph_file(rhs);
    if (cmp.witness && !cmp.witness->point.empty()) {
      witness += "at point (";
      for (std::size_t i = 0; i < cmp.witness->point.size(); ++i) {
        if (i) witness += ", ";
        witness += std::to_string(cmp.witness->point[i]);
      }
      witness += ")";
    }
    throw HomConditionError("map does not commute with the idempotents",
                            std::move(witness));
  }
  return LsMorph{std::move(src), std::move(dst), std::move(f)};
}

LsMorph ls_identity(const LsObject& a) {
  return LsMorph{a, a, a.idem.to_morph()};
}

LsMorph ls_compose(const LsMorph& g, const LsMorph& f, const EqConfig& cfg) {
  if (!(f.dst == g.src))
    throw DimensionError("completion composition shape mismatch");
  // The commuting condition is closed under composition; revalidation keeps
  // corrupted inputs from propagating.
  return ls_make(f.src, g.dst, compose(g.map, f.map), cfg);
}

LsMorph ls_differentiate(const LsMorph& f, const EqConfig& cfg) {
  LsObject dsrc = ls_object({2 * f.src.base.dim}, product_idem(f.src.idem));
  return ls_make(dsrc, f.dst, differentiate(f.map), cfg);
}

bool ls_equal(const LsMorph& f, const LsMorph& g, const EqConfig& cfg) {
  if (!(f.src == g.src) || !(f.dst == g.dst)) return false;
  Morph e = f.src.idem.to_morph();
  Morph e2 = f.dst.idem.to_morph();
  Morph nf = compose(e2, compose(f.map, e));
  Morph ng = compose(e2, compose(g.map, e));
  return morphs_equal(nf, ng, cfg);
}

LsSplit split_linear_idempotent(const LsObject& obj, const LsMorph& f,
                                const EqConfig& cfg) {
  if (!(f.src == obj) || !(f.dst == obj))
    throw DimensionError("split expects an endomap of the given object");
  if (!is_linear(f.map, cfg))
    throw NotLinearError("split of a non-linear idempotent");
  // Split the conjugated normal form e∘f∘e — the same morphism under the
  // completion's equality, but one that absorbs e on both sides, so the
  // retract and section commute with the idempotents on the nose.
  Morph e = obj.idem.to_morph();
  Morph canon = compose(e, compose(f.map, e));
  LinMorph mat = LinMorph::from_morph(canon, cfg);
  if (!(mat.times(mat) == mat))
    throw NotIdempotentError("split of a non-idempotent map");

  LsObject through = ls_object(obj.base, mat);
  Morph canon_morph = mat.to_morph();
  LsMorph retraction = ls_make(obj, through, canon_morph, cfg);
  LsMorph section = ls_make(through, obj, canon_morph, cfg);

  // s∘r = f on (A,e), and r∘s is the identity of (A,f), which is f itself.
  LsMorph sr = ls_compose(section, retraction, cfg);
  if (!ls_equal(sr, f, cfg))
    throw NotIdempotentError("splitting equation s∘r = e failed");
  LsMorph rs = ls_compose(retraction, section, cfg);
  if (!ls_equal(rs, ls_identity(through), cfg))
    throw NotIdempotentError("splitting equation r∘s = 1 failed");
  return LsSplit{std::move(through), std::move(retraction), std::move(section)};
}

}  // namespace cdiff

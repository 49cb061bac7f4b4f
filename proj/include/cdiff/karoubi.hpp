#pragma once

#include "cdiff/linmorph.hpp"
#include "cdiff/morph.hpp"

namespace cdiff {

// An object of the linear-idempotent completion: a base object together with
// a linear idempotent on it.
struct LsObject {
  Obj base;
  LinMorph idem;

  friend bool operator==(const LsObject& a, const LsObject& b) {
    return a.base == b.base && a.idem == b.idem;
  }
};

// Validates e∘e = e (exactly, by matrix arithmetic) before wrapping.
LsObject ls_object(Obj base, LinMorph idem);

// A morphism (A,e) -> (B,e') carried by a base map that commutes with the
// idempotents: f∘e = e'∘f.
struct LsMorph {
  LsObject src;
  LsObject dst;
  Morph map;
};

// Validates the commuting condition (exact or sampled per flavor); throws
// HomConditionError with a witness otherwise.
LsMorph ls_make(LsObject src, LsObject dst, Morph f, const EqConfig& cfg = {});

// The identity of (A,e) is represented by e itself, so that retract/section
// equations can be checked on the nose.
LsMorph ls_identity(const LsObject& a);

LsMorph ls_compose(const LsMorph& g, const LsMorph& f, const EqConfig& cfg = {});

// The differential combinator computed on base maps; the derivative of
// (A,e) -> (B,e') lands in (A×A, e×e) -> (B,e').
LsMorph ls_differentiate(const LsMorph& f, const EqConfig& cfg = {});

// Morphism equality in the completion: equality of the conjugated normal
// forms e' ∘ f ∘ e.
bool ls_equal(const LsMorph& f, const LsMorph& g, const EqConfig& cfg = {});

struct LsSplit {
  LsObject through;   // (A, f)
  LsMorph retraction; // r : (A,e) -> (A,f)
  LsMorph section;    // s : (A,f) -> (A,e)
};

// Splits a linear idempotent f on (A,e): returns (A,f) with r = s = f such
// that s∘r = f and r∘s = 1_{(A,f)}. Verifies both equations; throws
// NotLinearError / NotIdempotentError when the preconditions fail.
LsSplit split_linear_idempotent(const LsObject& obj, const LsMorph& f,
                                const EqConfig& cfg = {});

}  // namespace cdiff

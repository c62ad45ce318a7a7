#pragma once

#include "twocover/ratfunc.hpp"

namespace twocover::arith {

// Affine open D(h) = {h != 0} of the affine line, h squarefree.
struct DistinguishedOpen {
  UniPoly h;

  explicit DistinguishedOpen(UniPoly h_);
  bool is_whole_line() const { return h.is_constant(); }
  bool operator==(const DistinguishedOpen& o) const { return h == o.h; }
};

// Intersection of two distinguished opens.
DistinguishedOpen intersect(const DistinguishedOpen& a, const DistinguishedOpen& b);

struct SeparateResult {
  RatFunc D;  // supported on the roots of U.h, invertible on U
  RatFunc N;  // no zero or pole at any root of U.h
};

// Splits a nonzero rational function as a = D*N relative to U.
// D carries exactly the zeros/poles of a at the roots of U.h.
SeparateResult separate(const DistinguishedOpen& U, const RatFunc& a);

// Factor of p supported on the roots of h (divisor part outside D(h)).
UniPoly poly_part_on(const UniPoly& p, const UniPoly& h);

// True when f has no zero and no pole on U (a unit of O(U)).
bool is_unit_on(const DistinguishedOpen& U, const RatFunc& f);

// True when every zero and pole of f lies in the root set of h.
bool divisor_supported_on(const UniPoly& h, const RatFunc& f);

}  // namespace twocover::arith

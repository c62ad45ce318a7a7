#pragma once

#include <string>
#include <vector>

#include "twocover/hompoly3.hpp"
#include "twocover/ratfunc.hpp"

namespace twocover::arith {

// Degree-zero ratio of homogeneous forms on P^2 (a rational function
// regular on the chart where its denominator does not vanish).
// Normalization: common monomial factors cancelled, denominator scaled
// so its lex-leading coefficient is 1.  Equality is cross-multiplied,
// so full multivariate gcd reduction is never required.
class P2Func {
 public:
  P2Func() = default;  // zero
  P2Func(HomPoly3 num, HomPoly3 den);
  explicit P2Func(Rational q);

  static P2Func zero() { return P2Func(); }
  static P2Func one() { return P2Func(Rational(1)); }
  // x_i / x_j
  static P2Func coord_ratio(int i, int j);
  // f / x_i^deg(f)
  static P2Func on_chart(const HomPoly3& f, int chart);

  const HomPoly3& num() const { return num_; }
  const HomPoly3& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const;
  Rational as_constant() const;

  P2Func operator-() const;
  P2Func operator+(const P2Func& o) const;
  P2Func operator-(const P2Func& o) const;
  P2Func operator*(const P2Func& o) const;
  P2Func operator/(const P2Func& o) const;
  P2Func inverse() const;
  bool operator==(const P2Func& o) const;

  P2Func pow(long n) const;

  // Value along the parameterized line t -> [P + tQ]; throws when the
  // denominator vanishes identically on the line.
  RatFunc restrict(const Point3& P, const Point3& Q) const;
  // Coordinate substitution x_i -> sum_j m[i][j] x_j on both entries.
  P2Func substitute(const std::array<std::array<Rational, 3>, 3>& m) const;

  std::string to_string() const;

 private:
  void normalize();
  HomPoly3 num_;                              // zero polynomial for 0
  HomPoly3 den_{HomPoly3::constant(Rational(1))};
};

inline P2Func operator*(const Rational& s, const P2Func& f) { return P2Func(s) * f; }

// Affine chart of P^2 described as the complement of finitely many form
// zero-sets.  A function is a unit on the chart iff its numerator and
// denominator factor (up to a constant) into the removed forms.
struct P2Chart {
  std::vector<HomPoly3> removed;

  bool is_unit(const P2Func& f) const;
  bool operator==(const P2Chart& o) const;
};

P2Chart overlap(const P2Chart& a, const P2Chart& b);
// Chart cut down by the additional condition {f != 0}; no-op when f is
// already a unit.
P2Chart refine(const P2Chart& base, const P2Func& f);

// Chart of P^1 with function field Q(x): the complement of the roots of
// h plus optionally the point at infinity.
struct P1Chart {
  UniPoly h{Rational(1)};   // squarefree; removed finite points
  bool infinity_removed = false;

  bool is_unit(const RatFunc& f) const;
  bool operator==(const P1Chart& o) const;
};

P1Chart overlap(const P1Chart& a, const P1Chart& b);
P1Chart refine(const P1Chart& base, const RatFunc& f);

}  // namespace twocover::arith

#pragma once

#include <optional>
#include <string>

#include "twocover/unipoly.hpp"

namespace twocover::arith {

// Element of Q(x) in canonical form: monic denominator coprime to the
// numerator.  Canonical form makes equality a coefficient comparison.
class RatFunc {
 public:
  RatFunc() = default;  // zero
  RatFunc(UniPoly num, UniPoly den);
  explicit RatFunc(UniPoly num);
  explicit RatFunc(Rational q) : RatFunc(UniPoly(std::move(q))) {}

  static RatFunc zero() { return RatFunc(); }
  static RatFunc one() { return RatFunc(Rational(1)); }
  static RatFunc x() { return RatFunc(UniPoly::x()); }

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational as_constant() const;
  UniPoly as_polynomial() const;

  RatFunc operator-() const;
  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc inverse() const;
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

  // Order of vanishing at x = 0; no value means +infinity (zero input).
  std::optional<long> valuation_at_zero() const;
  // Order of vanishing at x = infinity (deg den - deg num); +infinity for 0.
  std::optional<long> valuation_at_infinity() const;

  // f(x) -> f(1/x).
  RatFunc subst_inverse() const;
  // True when the denominator is a power of x (Laurent polynomial in x).
  bool is_laurent() const;
  // True when f is a polynomial in y = 1/x.
  bool is_polynomial_in_y() const;
  // f viewed in y = 1/x: returns p with f(x) = p(1/x); throws otherwise.
  UniPoly as_polynomial_in_y() const;

  RatFunc pow(long n) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  UniPoly num_;                 // zero polynomial for 0
  UniPoly den_{Rational(1)};    // monic, nonzero
};

inline RatFunc operator*(const Rational& s, const RatFunc& f) { return RatFunc(s) * f; }

}  // namespace twocover::arith

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twocover/rational.hpp"

namespace twocover::arith {

// Univariate polynomial over Q, dense coefficients indexed by degree.
// The zero polynomial has an empty coefficient vector and degree -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(Rational constant);
  explicit UniPoly(std::vector<Rational> coeffs);

  static UniPoly monomial(int degree, Rational coeff = Rational(1));
  static UniPoly x() { return monomial(1); }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  // Index of the lowest nonzero coefficient (valuation at 0); -1 for zero.
  int trailing_degree() const;

  const Rational& coeff(int k) const;
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& leading() const;

  UniPoly operator-() const;
  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator*(const Rational& s) const;
  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

  Rational eval(const Rational& t) const;
  UniPoly derivative() const;
  UniPoly monic() const;
  UniPoly pow(int n) const;
  // Coefficients reversed around this polynomial's own degree.
  UniPoly reversed() const;
  // Substitutes x -> a*x + b.
  UniPoly compose_affine(const Rational& a, const Rational& b) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct DivModResult {
  UniPoly quot, rem;
};

DivModResult divmod(const UniPoly& a, const UniPoly& b);
// Throws if b does not divide a exactly.
UniPoly exact_div(const UniPoly& a, const UniPoly& b);

// Monic gcd; gcd(0,0) throws "zero gcd undefined".
UniPoly poly_gcd(const UniPoly& a, const UniPoly& b);
UniPoly poly_lcm(const UniPoly& a, const UniPoly& b);

struct ExtGcdResult {
  UniPoly g, u, v;  // g monic, g = u*a + v*b
};
ExtGcdResult poly_ext_gcd(const UniPoly& a, const UniPoly& b);

bool is_squarefree(const UniPoly& p);
UniPoly squarefree_part(const UniPoly& p);  // monic radical

// Square root with positive leading coefficient when p is a perfect
// square over Q; empty otherwise.
std::optional<UniPoly> sqrt_poly(const UniPoly& p);

}  // namespace twocover::arith

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twocover/unipoly.hpp"

namespace twocover::arith {

using Exponents = std::array<int, 3>;  // (i, j, k) for x0^i x1^j x2^k
using Point3 = std::array<Rational, 3>;

// Sparse homogeneous polynomial in x0, x1, x2.  All stored exponent
// triples sum to the degree; the zero polynomial has degree -1.
class HomPoly3 {
 public:
  HomPoly3() = default;  // zero
  HomPoly3(int degree, std::map<Exponents, Rational> terms);

  static HomPoly3 constant(Rational c);
  static HomPoly3 variable(int idx);  // x_idx
  static HomPoly3 monomial(Exponents e, Rational c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return is_zero() || deg_ == 0; }
  int degree() const { return deg_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  Rational coeff(const Exponents& e) const;
  // Smallest exponent of x_idx over all terms (0 for the zero polynomial).
  int min_exponent(int idx) const;

  HomPoly3 operator-() const;
  HomPoly3 operator+(const HomPoly3& o) const;
  HomPoly3 operator-(const HomPoly3& o) const;
  HomPoly3 operator*(const HomPoly3& o) const;
  HomPoly3 operator*(const Rational& s) const;
  bool operator==(const HomPoly3& o) const;

  HomPoly3 pow(int n) const;
  Rational eval(const Point3& p) const;
  // h(P + t*Q) as a polynomial in t.
  UniPoly restrict_to_param(const Point3& P, const Point3& Q) const;
  // Substitution x_i -> sum_j m[i][j]*x_j (m acts on coordinates).
  HomPoly3 substitute(const std::array<std::array<Rational, 3>, 3>& m) const;
  // Exact division attempt; no value when g does not divide.
  std::optional<HomPoly3> try_divide(const HomPoly3& g) const;

  std::string to_string() const;

 private:
  int deg_ = -1;
  std::map<Exponents, Rational> terms_;
};

inline HomPoly3 operator*(const Rational& s, const HomPoly3& f) { return f * s; }

// h(P + t*Q) for two independent points spanning a line; throws on
// dependent points.
UniPoly restrict_to_line(const HomPoly3& h, const Point3& P, const Point3& Q);

// Symmetric 3x3 matrix of a degree-2 form (entries m[i][j] with
// F = sum m[i][j] x_i x_j).
std::array<std::array<Rational, 3>, 3> conic_matrix(const HomPoly3& F);
bool conic_is_smooth(const HomPoly3& F);

// --- exact linear algebra over Q ---

using QMatrix = std::vector<std::vector<Rational>>;

// Reduced row echelon form in place; returns the rank.
int rref(QMatrix& m);
// Basis of the right kernel of an r x c matrix.
std::vector<std::vector<Rational>> nullspace(const QMatrix& m, int cols);

}  // namespace twocover::arith

#pragma once

#include <vector>

#include "twocover/mat2.hpp"
#include "twocover/opens.hpp"

namespace twocover::p1 {

using arith::DistinguishedOpen;
using arith::Mat2R;
using arith::RatFunc;
using arith::Rational;
using arith::UniPoly;

// Result of the Euclidean triangularization Eu_x: E_mat * G = T with T
// upper triangular, T = lcd * [[a', b'], [0, d']], a', d' monic,
// deg b' < deg d', and a' = gcd of the first-column polynomials of G/lcd.
struct TriangularForm {
  Mat2R E_mat;
  Mat2R T;
  RatFunc lcd;
  UniPoly a_prime, b_prime, d_prime;
};

TriangularForm triangularize(const Mat2R& G);

// Two-chart presentation of a rank-2 bundle on P^1: Laurent entries in
// x with det(G) a nonzero rational times a power of x.
class P1TransitionData {
 public:
  explicit P1TransitionData(Mat2R G);
  const Mat2R& matrix() const { return G_; }
  long det_exponent() const { return det_exp_; }
  const Rational& det_constant() const { return det_const_; }

 private:
  Mat2R G_;
  long det_exp_ = 0;
  Rational det_const_{1};
};

struct ColumnInvariants {
  long v1, v2, v;  // column minima and overall minimum of valuations at 0
  long e1, e2;     // valuations at 0 of the monic diagonal after Eu_x
  UniPoly b;       // reduced (1,2) polynomial: x^v * b is the (1,2) entry
};

ColumnInvariants column_invariants(const P1TransitionData& G);

// Birkhoff-Grothendieck data: e1 >= e2 with factorization witnesses
// A_x (polynomial in x) and A_y (polynomial in y = 1/x) satisfying
// A_x^{-1} G A_y = diag(c1 x^e1, c2 x^e2).
struct SplittingType {
  long e1 = 0, e2 = 0;
  Mat2R A_x, A_y;
};

SplittingType split_p1(const P1TransitionData& G);
bool verify_factorization(const P1TransitionData& G, const SplittingType& s);

// Rank-2 bundle on the affine line given by a cocycle over distinguished
// opens.  The full transition table is kept; the minimal constructor
// synthesizes it from the matrices G_{i0}.
class AffineCocycle {
 public:
  AffineCocycle(std::vector<DistinguishedOpen> opens,
                std::vector<std::vector<Mat2R>> transitions);
  // Builds the table from G_{i0} (with G_{00} = identity implied).
  static AffineCocycle from_base_transitions(std::vector<DistinguishedOpen> opens,
                                             std::vector<Mat2R> to_chart_zero);

  size_t size() const { return opens_.size(); }
  const std::vector<DistinguishedOpen>& opens() const { return opens_; }
  const Mat2R& transition(size_t i, size_t j) const { return G_[i][j]; }

 private:
  void validate() const;
  std::vector<DistinguishedOpen> opens_;
  std::vector<std::vector<Mat2R>> G_;
};

// Algorithm of the global-basis computation on A^1: matrices A_i,
// regular and invertible on U_i, with A_i^{-1} G_ij A_j = identity.
std::vector<Mat2R> trivialize_affine(const AffineCocycle& c);

// True when every entry of A is regular on U (denominator divides a
// power of U.h) and det(A) is a unit on U.
bool regular_and_invertible_on(const DistinguishedOpen& U, const Mat2R& A);

}  // namespace twocover::p1

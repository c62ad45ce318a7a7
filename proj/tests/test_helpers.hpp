#pragma once

#include <random>
#include <vector>

#include "twocover/mat2.hpp"
#include "twocover/unipoly.hpp"

// Shared deterministic generators for property-style tests.
namespace testgen {

using twocover::arith::Mat2R;
using twocover::arith::RatFunc;
using twocover::arith::Rational;
using twocover::arith::UniPoly;

class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  long integer(long lo, long hi)
  {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(eng_);
  }

  Rational rational(long num_bound = 9, long den_bound = 3)
  {
    long n = integer(-num_bound, num_bound);
    long d = integer(1, den_bound);
    return Rational(n, d);
  }

  Rational nonzero_rational(long num_bound = 9, long den_bound = 3)
  {
    Rational q = rational(num_bound, den_bound);
    while (q == 0) q = rational(num_bound, den_bound);
    return q;
  }

  UniPoly poly(int max_degree, long coeff_bound = 9)
  {
    int d = static_cast<int>(integer(0, max_degree));
    std::vector<Rational> c(d + 1);
    for (auto& q : c) q = rational(coeff_bound);
    return UniPoly(std::move(c));
  }

  UniPoly nonzero_poly(int max_degree, long coeff_bound = 9)
  {
    UniPoly p = poly(max_degree, coeff_bound);
    while (p.is_zero()) p = poly(max_degree, coeff_bound);
    return p;
  }

  // Random element of GL(2, Q[x]) with constant determinant: a product
  // of at most `factors` elementary/diagonal matrices.
  Mat2R gl2_polynomial(int factors = 4, int entry_degree = 4)
  {
    Mat2R m = Mat2R::identity();
    int n = static_cast<int>(integer(1, factors));
    for (int k = 0; k < n; ++k) {
      switch (integer(0, 3)) {
        case 0: {
          Mat2R e = Mat2R::identity();
          e.a12 = RatFunc(poly(entry_degree));
          m = m * e;
          break;
        }
        case 1: {
          Mat2R e = Mat2R::identity();
          e.a21 = RatFunc(poly(entry_degree));
          m = m * e;
          break;
        }
        case 2:
          m = m * Mat2R::diag(RatFunc(nonzero_rational()), RatFunc(nonzero_rational()));
          break;
        default:
          m = m * Mat2R::swap_J();
          break;
      }
    }
    return m;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

inline Mat2R subst_y(const Mat2R& m)
{
  return m.map([](const RatFunc& f) { return f.subst_inverse(); });
}

}  // namespace testgen

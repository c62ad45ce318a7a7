#pragma once

#include <stdexcept>

#include "twocover/ratfunc.hpp"

namespace twocover::arith {

// 2x2 matrix over a field type K (exact +,-,*,/, equality, zero/one).
template <class K>
struct Mat2 {
  K a11{}, a12{}, a21{}, a22{};

  static Mat2 identity() { return {K::one(), K::zero(), K::zero(), K::one()}; }
  static Mat2 swap_J() { return {K::zero(), K::one(), K::one(), K::zero()}; }
  static Mat2 diag(K d1, K d2) { return {std::move(d1), K::zero(), K::zero(), std::move(d2)}; }

  K det() const { return a11 * a22 - a12 * a21; }

  Mat2 operator*(const Mat2& o) const
  {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }

  Mat2 operator*(const K& s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
  Mat2 operator+(const Mat2& o) const
  {
    return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
  }
  Mat2 operator-(const Mat2& o) const
  {
    return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
  }

  Mat2 inverse() const
  {
    K d = det();
    if (d.is_zero()) throw std::domain_error("matrix not invertible over the function field");
    return {a22 / d, (K::zero() - a12) / d, (K::zero() - a21) / d, a11 / d};
  }

  bool operator==(const Mat2& o) const
  {
    return a11 == o.a11 && a12 == o.a12 && a21 == o.a21 && a22 == o.a22;
  }

  bool is_zero() const
  {
    return a11.is_zero() && a12.is_zero() && a21.is_zero() && a22.is_zero();
  }

  template <class F>
  auto map(F&& f) const -> Mat2<decltype(f(a11))>
  {
    return {f(a11), f(a12), f(a21), f(a22)};
  }

  Mat2 pow(long n) const
  {
    if (n < 0) return inverse().pow(-n);
    Mat2 acc = identity();
    Mat2 base = *this;
    while (n > 0) {
      if (n & 1) acc = acc * base;
      base = base * base;
      n >>= 1;
    }
    return acc;
  }
};

using Mat2R = Mat2<RatFunc>;

// Least common divisor function of the matrix entries: the rational
// function whose divisor at every finite point is the entrywise minimum
// of valuations.  Computed as gcd of numerators over lcm of denominators.
RatFunc lcd_x(const Mat2R& G);

}  // namespace twocover::arith

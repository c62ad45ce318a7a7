#include "twocover/mat2.hpp"

namespace twocover::arith {

RatFunc lcd_x(const Mat2R& G)
{
  if (G.is_zero()) throw std::domain_error("lcd of zero matrix");
  UniPoly num, den(Rational(1));
  bool first = true;
  for (const RatFunc* e : {&G.a11, &G.a12, &G.a21, &G.a22}) {
    if (e->is_zero()) continue;
    if (first) {
      num = e->num().monic();
      den = e->den();
      first = false;
    } else {
      num = poly_gcd(num, e->num());
      den = poly_lcm(den, e->den());
    }
  }
  return RatFunc(num, den);
}

}  // namespace twocover::arith

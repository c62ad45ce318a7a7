#include "twocover/ratfunc.hpp"

#include <stdexcept>

namespace twocover::arith {

RatFunc::RatFunc(UniPoly num, UniPoly den)
{
  if (den.is_zero()) throw std::domain_error("zero denominator");
  if (num.is_zero()) {
    num_ = UniPoly();
    den_ = UniPoly(Rational(1));
    return;
  }
  UniPoly g = poly_gcd(num, den);
  if (g.degree() > 0) {
    num = exact_div(num, g);
    den = exact_div(den, g);
  }
  Rational lead = den.leading();
  num_ = num * (Rational(1) / lead);
  den_ = den * (Rational(1) / lead);
}

RatFunc::RatFunc(UniPoly num) : num_(std::move(num)) {}

Rational RatFunc::as_constant() const
{
  if (!is_constant()) throw std::domain_error("not a constant");
  if (is_zero()) return Rational(0);
  return num_.coeff(0) / den_.coeff(0);
}

UniPoly RatFunc::as_polynomial() const
{
  if (!is_polynomial()) throw std::domain_error("not a polynomial");
  return num_ * (Rational(1) / den_.coeff(0));
}

RatFunc RatFunc::operator-() const
{
  RatFunc r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const
{
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const
{
  return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::inverse() const
{
  if (is_zero()) throw std::domain_error("inverse of zero");
  return RatFunc(den_, num_);
}

std::optional<long> RatFunc::valuation_at_zero() const
{
  if (is_zero()) return std::nullopt;
  return static_cast<long>(num_.trailing_degree()) - den_.trailing_degree();
}

std::optional<long> RatFunc::valuation_at_infinity() const
{
  if (is_zero()) return std::nullopt;
  return static_cast<long>(den_.degree()) - num_.degree();
}

RatFunc RatFunc::subst_inverse() const
{
  if (is_zero()) return RatFunc();
  int p = num_.degree(), q = den_.degree();
  UniPoly n = num_.reversed();
  UniPoly d = den_.reversed();
  if (q >= p)
    return RatFunc(n * UniPoly::monomial(q - p), d);
  return RatFunc(n, d * UniPoly::monomial(p - q));
}

bool RatFunc::is_laurent() const
{
  return den_.trailing_degree() == den_.degree();
}

bool RatFunc::is_polynomial_in_y() const
{
  return is_zero() || (is_laurent() && num_.degree() <= den_.degree());
}

UniPoly RatFunc::as_polynomial_in_y() const
{
  if (!is_polynomial_in_y()) throw std::domain_error("not a polynomial in 1/x");
  if (is_zero()) return UniPoly();
  // num(x)/x^k with deg num <= k: coefficient of x^j in num becomes y^(k-j).
  int k = den_.degree();
  std::vector<Rational> c(k + 1, Rational(0));
  for (int j = 0; j <= num_.degree(); ++j) c[k - j] = num_.coeff(j);
  return UniPoly(std::move(c));
}

RatFunc RatFunc::pow(long n) const
{
  if (n < 0) return inverse().pow(-n);
  RatFunc acc = one();
  RatFunc base = *this;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

std::string RatFunc::to_string(const std::string& var) const
{
  if (is_polynomial()) return as_polynomial().to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

}  // namespace twocover::arith

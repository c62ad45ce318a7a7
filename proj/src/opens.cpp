#include "twocover/opens.hpp"

#include <stdexcept>

namespace twocover::arith {

DistinguishedOpen::DistinguishedOpen(UniPoly h_) : h(std::move(h_))
{
  if (h.is_zero()) throw std::invalid_argument("empty distinguished open");
  if (!is_squarefree(h)) throw std::invalid_argument("defining polynomial must be squarefree");
  h = h.monic();
}

DistinguishedOpen intersect(const DistinguishedOpen& a, const DistinguishedOpen& b)
{
  return DistinguishedOpen(squarefree_part(a.h * b.h));
}

UniPoly poly_part_on(const UniPoly& p, const UniPoly& h)
{
  if (p.is_zero()) throw std::domain_error("separating zero");
  if (p.is_constant() || h.is_constant()) return UniPoly(Rational(1));
  int n = p.degree();
  return poly_gcd(p, h.pow(n));
}

SeparateResult separate(const DistinguishedOpen& U, const RatFunc& a)
{
  if (a.is_zero()) throw std::domain_error("separating zero");
  UniPoly dn = poly_part_on(a.num(), U.h);
  UniPoly dd = poly_part_on(a.den(), U.h);
  RatFunc D(dn, dd);
  RatFunc N = a / D;
  return {D, N};
}

bool divisor_supported_on(const UniPoly& h, const RatFunc& f)
{
  if (f.is_zero()) return false;
  DistinguishedOpen U{h.monic()};
  auto [D, N] = separate(U, f);
  return N.is_constant();
}

bool is_unit_on(const DistinguishedOpen& U, const RatFunc& f)
{
  return divisor_supported_on(U.h, f);
}

}  // namespace twocover::arith

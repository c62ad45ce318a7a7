#include "twocover/branch.hpp"

#include <stdexcept>

#include "twocover/unipoly.hpp"

namespace twocover::dc {

using arith::Exponents;
using arith::Point3;
using arith::Rational;
using arith::UniPoly;

std::optional<std::pair<HomPoly3, HomPoly3>> branch_decompose(const HomPoly3& F,
                                                              const HomPoly3& f)
{
  if (f.degree() != 1) throw std::invalid_argument("f must be a nonzero linear form");
  if (F.is_zero() || F.degree() % 2 != 0)
    throw std::invalid_argument("F must be homogeneous of even degree");
  int l = F.degree() / 2;

  // Leading variable of f: the nonzero coefficient of highest index.
  Rational cf[3];
  for (int i = 0; i < 3; ++i) {
    Exponents e{0, 0, 0};
    e[i] = 1;
    cf[i] = f.coeff(e);
  }
  int lead = cf[2] != 0 ? 2 : (cf[1] != 0 ? 1 : 0);
  int va, vb;  // the two non-leading variables, in increasing order
  switch (lead) {
    case 2: va = 0; vb = 1; break;
    case 1: va = 0; vb = 2; break;
    default: va = 1; vb = 2; break;
  }

  // Parameterize {f = 0} so that x_va, x_vb restrict to 1 and t.
  Point3 P{Rational(0), Rational(0), Rational(0)};
  Point3 Q{Rational(0), Rational(0), Rational(0)};
  P[va] = 1;
  P[lead] = -cf[va] / cf[lead];
  Q[vb] = 1;
  Q[lead] = -cf[vb] / cf[lead];

  UniPoly restricted = F.restrict_to_param(P, Q);
  auto root = arith::sqrt_poly(restricted);
  if (!root) return std::nullopt;
  if (root->degree() > l) throw std::logic_error("square root degree exceeds bound");

  // Lift: the unique degree-l form in x_va, x_vb restricting to the root.
  std::map<Exponents, Rational> terms;
  for (int s = 0; s <= root->degree(); ++s) {
    if (root->coeff(s) == 0) continue;
    Exponents e{0, 0, 0};
    e[va] = l - s;
    e[vb] = s;
    terms[e] = root->coeff(s);
  }
  HomPoly3 a0 = root->is_zero() ? HomPoly3() : HomPoly3(l, std::move(terms));

  HomPoly3 diff = F - a0 * a0;
  HomPoly3 a1;
  if (!diff.is_zero()) {
    auto q = diff.try_divide(f);
    if (!q) throw std::logic_error("F - a0^2 not divisible by f");
    a1 = *q;
  }
  return std::make_pair(a0, a1);
}

}  // namespace twocover::dc

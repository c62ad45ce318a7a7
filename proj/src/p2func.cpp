#include "twocover/p2func.hpp"

#include <stdexcept>

#include "twocover/opens.hpp"

namespace twocover::arith {

P2Func::P2Func(HomPoly3 num, HomPoly3 den) : num_(std::move(num)), den_(std::move(den))
{
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  if (!num_.is_zero() && num_.degree() != den_.degree())
    throw std::invalid_argument("ratio of forms must have degree zero");
  normalize();
}

P2Func::P2Func(Rational q)
{
  num_ = HomPoly3::constant(std::move(q));
  den_ = HomPoly3::constant(Rational(1));
}

P2Func P2Func::coord_ratio(int i, int j)
{
  return P2Func(HomPoly3::variable(i), HomPoly3::variable(j));
}

P2Func P2Func::on_chart(const HomPoly3& f, int chart)
{
  if (f.is_zero()) return P2Func();
  return P2Func(f, HomPoly3::variable(chart).pow(f.degree()));
}

void P2Func::normalize()
{
  if (num_.is_zero()) {
    den_ = HomPoly3::constant(Rational(1));
    return;
  }
  // Cancel the common monomial content.
  Exponents common{0, 0, 0};
  bool any = false;
  for (int i = 0; i < 3; ++i) {
    int c = std::min(num_.min_exponent(i), den_.min_exponent(i));
    common[i] = c;
    if (c > 0) any = true;
  }
  if (any) {
    HomPoly3 mono = HomPoly3::monomial(common, Rational(1));
    num_ = num_.try_divide(mono).value();
    den_ = den_.try_divide(mono).value();
  }
  // Cancel the full denominator when it divides the numerator.
  if (den_.degree() > 0) {
    if (auto q = num_.try_divide(den_)) {
      num_ = *q;
      den_ = HomPoly3::constant(Rational(1));
    }
  }
  // Scale so the lex-leading denominator coefficient is 1.
  Rational lead = den_.terms().rbegin()->second;
  if (lead != 1) {
    Rational inv = Rational(1) / lead;
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

bool P2Func::is_constant() const
{
  if (is_zero()) return true;
  if (num_.degree() == 0) return true;
  // A nontrivial ratio can still be constant; cross-check via equality.
  return num_ == den_ * (num_.terms().rbegin()->second / den_.terms().rbegin()->second);
}

Rational P2Func::as_constant() const
{
  if (is_zero()) return Rational(0);
  if (!is_constant()) throw std::domain_error("not a constant");
  return num_.terms().rbegin()->second / den_.terms().rbegin()->second;
}

P2Func P2Func::operator-() const
{
  P2Func r = *this;
  r.num_ = -r.num_;
  return r;
}

P2Func P2Func::operator+(const P2Func& o) const
{
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return P2Func(num_ + o.num_, den_);
  return P2Func(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

P2Func P2Func::operator-(const P2Func& o) const { return *this + (-o); }

P2Func P2Func::operator*(const P2Func& o) const
{
  if (is_zero() || o.is_zero()) return P2Func();
  return P2Func(num_ * o.num_, den_ * o.den_);
}

P2Func P2Func::operator/(const P2Func& o) const { return *this * o.inverse(); }

P2Func P2Func::inverse() const
{
  if (is_zero()) throw std::domain_error("inverse of zero");
  return P2Func(den_, num_);
}

bool P2Func::operator==(const P2Func& o) const
{
  if (is_zero()) return o.is_zero();
  if (o.is_zero()) return false;
  return num_ * o.den_ == o.num_ * den_;
}

P2Func P2Func::pow(long n) const
{
  if (n < 0) return inverse().pow(-n);
  P2Func acc = one();
  P2Func base = *this;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

RatFunc P2Func::restrict(const Point3& P, const Point3& Q) const
{
  if (is_zero()) return RatFunc();
  UniPoly d = den_.restrict_to_param(P, Q);
  if (d.is_zero())
    throw std::domain_error("denominator vanishes identically on the line");
  return RatFunc(num_.restrict_to_param(P, Q), d);
}

P2Func P2Func::substitute(const std::array<std::array<Rational, 3>, 3>& m) const
{
  if (is_zero()) return P2Func();
  return P2Func(num_.substitute(m), den_.substitute(m));
}

std::string P2Func::to_string() const
{
  if (den_ == HomPoly3::constant(Rational(1))) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

namespace {

// Strips every factor in `forms` from f; true when the residue is a
// nonzero constant.
bool factors_into(HomPoly3 f, const std::vector<HomPoly3>& forms)
{
  if (f.is_zero()) return false;
  bool progress = true;
  while (f.degree() > 0 && progress) {
    progress = false;
    for (const HomPoly3& g : forms) {
      if (g.degree() == 0 || g.degree() > f.degree()) continue;
      while (auto q = f.try_divide(g)) {
        f = *q;
        progress = true;
        if (f.degree() == 0) return true;
      }
    }
  }
  return f.degree() == 0;
}

}  // namespace

bool P2Chart::is_unit(const P2Func& f) const
{
  if (f.is_zero()) return false;
  return factors_into(f.num(), removed) && factors_into(f.den(), removed);
}

bool P2Chart::operator==(const P2Chart& o) const { return removed == o.removed; }

P2Chart overlap(const P2Chart& a, const P2Chart& b)
{
  P2Chart r = a;
  for (const auto& g : b.removed) {
    bool seen = false;
    for (const auto& h : r.removed)
      if (h == g) seen = true;
    if (!seen) r.removed.push_back(g);
  }
  return r;
}

P2Chart refine(const P2Chart& base, const P2Func& f)
{
  if (f.is_zero()) throw std::invalid_argument("cannot refine by the zero function");
  if (base.is_unit(f)) return base;
  P2Chart r = base;
  if (!factors_into(f.num(), r.removed)) r.removed.push_back(f.num());
  if (!factors_into(f.den(), r.removed)) r.removed.push_back(f.den());
  return r;
}

bool P1Chart::is_unit(const RatFunc& f) const
{
  if (f.is_zero()) return false;
  if (!divisor_supported_on(h, f)) return false;
  if (!infinity_removed) {
    auto v = f.valuation_at_infinity();
    if (v.value() != 0) return false;
  }
  return true;
}

bool P1Chart::operator==(const P1Chart& o) const
{
  return h == o.h && infinity_removed == o.infinity_removed;
}

P1Chart overlap(const P1Chart& a, const P1Chart& b)
{
  P1Chart r;
  r.h = squarefree_part(a.h * b.h);
  r.infinity_removed = a.infinity_removed || b.infinity_removed;
  return r;
}

P1Chart refine(const P1Chart& base, const RatFunc& f)
{
  if (f.is_zero()) throw std::invalid_argument("cannot refine by the zero function");
  if (base.is_unit(f)) return base;
  P1Chart r = base;
  r.h = squarefree_part(r.h * f.num() * f.den());
  if (f.valuation_at_infinity().value() != 0) r.infinity_removed = true;
  return r;
}

}  // namespace twocover::arith

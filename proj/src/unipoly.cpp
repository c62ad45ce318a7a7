#include "twocover/unipoly.hpp"

#include <sstream>
#include <stdexcept>

namespace twocover::arith {

UniPoly::UniPoly(Rational constant)
{
  if (constant != 0) c_.push_back(std::move(constant));
}

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::monomial(int degree, Rational coeff)
{
  if (degree < 0) throw std::invalid_argument("monomial degree must be >= 0");
  if (coeff == 0) return UniPoly();
  std::vector<Rational> c(degree + 1, Rational(0));
  c[degree] = std::move(coeff);
  return UniPoly(std::move(c));
}

void UniPoly::trim()
{
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int UniPoly::trailing_degree() const
{
  for (size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) return static_cast<int>(k);
  return -1;
}

const Rational& UniPoly::coeff(int k) const
{
  static const Rational zero(0);
  if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
  return c_[k];
}

const Rational& UniPoly::leading() const
{
  if (is_zero()) throw std::domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

UniPoly UniPoly::operator-() const
{
  std::vector<Rational> c = c_;
  for (auto& q : c) q = -q;
  return UniPoly(std::move(c));
}

UniPoly UniPoly::operator+(const UniPoly& o) const
{
  std::vector<Rational> c(std::max(c_.size(), o.c_.size()), Rational(0));
  for (size_t k = 0; k < c_.size(); ++k) c[k] += c_[k];
  for (size_t k = 0; k < o.c_.size(); ++k) c[k] += o.c_[k];
  return UniPoly(std::move(c));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const
{
  if (is_zero() || o.is_zero()) return UniPoly();
  std::vector<Rational> c(c_.size() + o.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  }
  return UniPoly(std::move(c));
}

UniPoly UniPoly::operator*(const Rational& s) const
{
  if (s == 0) return UniPoly();
  std::vector<Rational> c = c_;
  for (auto& q : c) q *= s;
  return UniPoly(std::move(c));
}

Rational UniPoly::eval(const Rational& t) const
{
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UniPoly UniPoly::derivative() const
{
  if (c_.size() <= 1) return UniPoly();
  std::vector<Rational> c(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) c[k - 1] = c_[k] * Rational(static_cast<int>(k));
  return UniPoly(std::move(c));
}

UniPoly UniPoly::monic() const
{
  if (is_zero()) return UniPoly();
  return *this * (Rational(1) / leading());
}

UniPoly UniPoly::pow(int n) const
{
  if (n < 0) throw std::invalid_argument("negative polynomial power");
  UniPoly acc(Rational(1));
  UniPoly base = *this;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

UniPoly UniPoly::reversed() const
{
  std::vector<Rational> c(c_.rbegin(), c_.rend());
  return UniPoly(std::move(c));
}

UniPoly UniPoly::compose_affine(const Rational& a, const Rational& b) const
{
  UniPoly arg(std::vector<Rational>{b, a});
  UniPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * arg + UniPoly(*it);
  return acc;
}

std::string UniPoly::to_string(const std::string& var) const
{
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& q = c_[k];
    if (q == 0) continue;
    Rational a = q;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
      first = false;
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    if (k == 0) {
      os << rational_to_string(a);
    } else {
      if (a != 1) os << rational_to_string(a) << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

DivModResult divmod(const UniPoly& a, const UniPoly& b)
{
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  std::vector<Rational> quot;
  int db = b.degree();
  if (a.degree() >= db) quot.assign(a.degree() - db + 1, Rational(0));
  const Rational& lb = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Rational c = rem[k] / lb;
    if (c == 0) continue;
    quot[k - db] = c;
    for (int j = 0; j <= db; ++j) rem[k - db + j] -= c * b.coeff(j);
  }
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly exact_div(const UniPoly& a, const UniPoly& b)
{
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

UniPoly poly_gcd(const UniPoly& a, const UniPoly& b)
{
  if (a.is_zero() && b.is_zero()) throw std::domain_error("zero gcd undefined");
  UniPoly r0 = a, r1 = b;
  while (!r1.is_zero()) {
    UniPoly r2 = divmod(r0, r1).rem;
    r0 = std::move(r1);
    r1 = std::move(r2);
  }
  return r0.monic();
}

UniPoly poly_lcm(const UniPoly& a, const UniPoly& b)
{
  if (a.is_zero() || b.is_zero()) return UniPoly();
  return exact_div(a * b, poly_gcd(a, b)).monic();
}

ExtGcdResult poly_ext_gcd(const UniPoly& a, const UniPoly& b)
{
  if (a.is_zero() && b.is_zero()) throw std::domain_error("zero gcd undefined");
  UniPoly r0 = a, r1 = b;
  UniPoly u0(Rational(1)), u1;
  UniPoly v0, v1(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r2] = divmod(r0, r1);
    UniPoly u2 = u0 - q * u1;
    UniPoly v2 = v0 - q * v1;
    r0 = std::move(r1); r1 = std::move(r2);
    u0 = std::move(u1); u1 = std::move(u2);
    v0 = std::move(v1); v1 = std::move(v2);
  }
  Rational s = Rational(1) / r0.leading();
  return {r0 * s, u0 * s, v0 * s};
}

bool is_squarefree(const UniPoly& p)
{
  if (p.is_zero()) return false;
  if (p.is_constant()) return true;
  return poly_gcd(p, p.derivative()).degree() == 0;
}

UniPoly squarefree_part(const UniPoly& p)
{
  if (p.is_zero()) throw std::domain_error("squarefree part of zero");
  if (p.is_constant()) return UniPoly(Rational(1));
  return exact_div(p, poly_gcd(p, p.derivative())).monic();
}

std::optional<UniPoly> sqrt_poly(const UniPoly& p)
{
  if (p.is_zero()) return UniPoly();
  int d = p.degree();
  if (d % 2 != 0) return std::nullopt;
  Rational lead_root;
  if (!rational_sqrt(p.leading(), lead_root)) return std::nullopt;

  // Solve q^2 = p coefficient by coefficient from the top.
  int h = d / 2;
  std::vector<Rational> q(h + 1, Rational(0));
  q[h] = lead_root;
  for (int k = h - 1; k >= 0; --k) {
    // Coefficient of x^(k+h) in q^2 equals p[k+h].
    Rational s(0);
    for (int i = k + 1; i < h; ++i) {
      int j = k + h - i;
      if (j > h || j <= k) continue;
      s += q[i] * q[j];
    }
    q[k] = (p.coeff(k + h) - s) / (Rational(2) * q[h]);
  }
  UniPoly root{std::vector<Rational>(q)};
  if (root * root == p) return root;
  return std::nullopt;
}

}  // namespace twocover::arith

#include "twocover/hompoly3.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace twocover::arith {

HomPoly3::HomPoly3(int degree, std::map<Exponents, Rational> terms)
    : deg_(degree), terms_(std::move(terms))
{
  for (auto it = terms_.begin(); it != terms_.end();) {
    const auto& [e, c] = *it;
    if (e[0] < 0 || e[1] < 0 || e[2] < 0 || e[0] + e[1] + e[2] != degree)
      throw std::invalid_argument("inhomogeneous term");
    if (c == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
  if (terms_.empty()) deg_ = -1;
}

HomPoly3 HomPoly3::constant(Rational c)
{
  if (c == 0) return HomPoly3();
  return HomPoly3(0, {{{0, 0, 0}, std::move(c)}});
}

HomPoly3 HomPoly3::variable(int idx)
{
  Exponents e{0, 0, 0};
  e.at(idx) = 1;
  return HomPoly3(1, {{e, Rational(1)}});
}

HomPoly3 HomPoly3::monomial(Exponents e, Rational c)
{
  if (c == 0) return HomPoly3();
  int d = e[0] + e[1] + e[2];
  return HomPoly3(d, {{e, std::move(c)}});
}

Rational HomPoly3::coeff(const Exponents& e) const
{
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int HomPoly3::min_exponent(int idx) const
{
  if (is_zero()) return 0;
  int m = deg_;
  for (const auto& [e, c] : terms_) m = std::min(m, e.at(idx));
  return m;
}

HomPoly3 HomPoly3::operator-() const
{
  HomPoly3 r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

HomPoly3 HomPoly3::operator+(const HomPoly3& o) const
{
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (deg_ != o.deg_) throw std::invalid_argument("degree mismatch in sum");
  std::map<Exponents, Rational> t = terms_;
  for (const auto& [e, c] : o.terms_) t[e] += c;
  return HomPoly3(deg_, std::move(t));
}

HomPoly3 HomPoly3::operator-(const HomPoly3& o) const { return *this + (-o); }

HomPoly3 HomPoly3::operator*(const HomPoly3& o) const
{
  if (is_zero() || o.is_zero()) return HomPoly3();
  std::map<Exponents, Rational> t;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponents e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]};
      t[e] += c1 * c2;
    }
  return HomPoly3(deg_ + o.deg_, std::move(t));
}

HomPoly3 HomPoly3::operator*(const Rational& s) const
{
  if (s == 0) return HomPoly3();
  HomPoly3 r = *this;
  for (auto& [e, c] : r.terms_) c *= s;
  return r;
}

bool HomPoly3::operator==(const HomPoly3& o) const
{
  return deg_ == o.deg_ && terms_ == o.terms_;
}

HomPoly3 HomPoly3::pow(int n) const
{
  if (n < 0) throw std::invalid_argument("negative power");
  HomPoly3 acc = constant(Rational(1));
  HomPoly3 base = *this;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

Rational HomPoly3::eval(const Point3& p) const
{
  Rational acc(0);
  for (const auto& [e, c] : terms_) {
    Rational m = c;
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < e[i]; ++k) m *= p[i];
    acc += m;
  }
  return acc;
}

UniPoly HomPoly3::restrict_to_param(const Point3& P, const Point3& Q) const
{
  // Precompute (P_i + t Q_i)^k per variable up to the degree.
  if (is_zero()) return UniPoly();
  std::array<std::vector<UniPoly>, 3> powers;
  for (int i = 0; i < 3; ++i) {
    powers[i].push_back(UniPoly(Rational(1)));
    UniPoly lin(std::vector<Rational>{P[i], Q[i]});
    for (int k = 1; k <= deg_; ++k) powers[i].push_back(powers[i][k - 1] * lin);
  }
  UniPoly acc;
  for (const auto& [e, c] : terms_)
    acc = acc + powers[0][e[0]] * powers[1][e[1]] * powers[2][e[2]] * c;
  return acc;
}

HomPoly3 HomPoly3::substitute(const std::array<std::array<Rational, 3>, 3>& m) const
{
  if (is_zero()) return HomPoly3();
  std::array<HomPoly3, 3> images;
  for (int i = 0; i < 3; ++i) {
    HomPoly3 s;
    for (int j = 0; j < 3; ++j)
      s = s.is_zero() ? variable(j) * m[i][j] : s + variable(j) * m[i][j];
    images[i] = s;
  }
  HomPoly3 acc;
  for (const auto& [e, c] : terms_) {
    HomPoly3 t = constant(c);
    for (int i = 0; i < 3; ++i)
      if (e[i] > 0) t = t * images[i].pow(e[i]);
    acc = acc.is_zero() ? t : acc + t;
  }
  return acc;
}

std::optional<HomPoly3> HomPoly3::try_divide(const HomPoly3& g) const
{
  if (g.is_zero()) throw std::domain_error("division by zero polynomial");
  if (is_zero()) return HomPoly3();
  if (deg_ < g.deg_) return std::nullopt;
  // Long division by the lex-leading term; exact iff remainder is zero.
  const auto& glead = *g.terms_.rbegin();
  HomPoly3 rem = *this;
  std::map<Exponents, Rational> quot;
  while (!rem.is_zero()) {
    const auto& [re, rc] = *rem.terms_.rbegin();
    Exponents d{re[0] - glead.first[0], re[1] - glead.first[1], re[2] - glead.first[2]};
    if (d[0] < 0 || d[1] < 0 || d[2] < 0) return std::nullopt;
    Rational qc = rc / glead.second;
    quot[d] = qc;
    rem = rem - g * monomial(d, qc);
  }
  return HomPoly3(deg_ - g.deg_, std::move(quot));
}

std::string HomPoly3::to_string() const
{
  if (is_zero()) return "0";
  static const char* vars[3] = {"x0", "x1", "x2"};
  std::ostringstream os;
  bool first = true;
  // Iterate in reverse lex order so x0-heavy terms print first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Rational a = it->second;
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
    const Exponents& e = it->first;
    bool constant_term = (e[0] == 0 && e[1] == 0 && e[2] == 0);
    bool coeff_shown = (a != 1) || constant_term;
    if (coeff_shown) os << rational_to_string(a);
    bool need_star = coeff_shown;
    for (int i = 0; i < 3; ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << vars[i];
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
  }
  return os.str();
}

UniPoly restrict_to_line(const HomPoly3& h, const Point3& P, const Point3& Q)
{
  // Independence via the three 2x2 minors of (P; Q).
  Rational m01 = P[0] * Q[1] - P[1] * Q[0];
  Rational m02 = P[0] * Q[2] - P[2] * Q[0];
  Rational m12 = P[1] * Q[2] - P[2] * Q[1];
  if (m01 == 0 && m02 == 0 && m12 == 0)
    throw std::invalid_argument("line parameterization points are dependent");
  return h.restrict_to_param(P, Q);
}

std::array<std::array<Rational, 3>, 3> conic_matrix(const HomPoly3& F)
{
  if (F.degree() != 2) throw std::invalid_argument("not a degree-2 form");
  std::array<std::array<Rational, 3>, 3> m{};
  for (const auto& [e, c] : F.terms()) {
    for (int i = 0; i < 3; ++i) {
      if (e[i] == 2) m[i][i] = c;
      for (int j = i + 1; j < 3; ++j)
        if (e[i] == 1 && e[j] == 1) m[i][j] = m[j][i] = c / 2;
    }
  }
  return m;
}

bool conic_is_smooth(const HomPoly3& F)
{
  auto m = conic_matrix(F);
  Rational det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                 m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                 m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return det != 0;
}

int rref(QMatrix& m)
{
  if (m.empty()) return 0;
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    Rational inv = Rational(1) / m[rank][col];
    for (int c = col; c < cols; ++c) m[rank][c] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (int c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

std::vector<std::vector<Rational>> nullspace(const QMatrix& m, int cols)
{
  QMatrix a = m;
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != cols)
      throw std::invalid_argument("ragged matrix");
  int rank = rref(a);
  // After rref the pivot of row r is its first nonzero entry.
  std::vector<int> pivot_col(rank, -1);
  std::vector<bool> is_pivot(cols, false);
  for (int r = 0; r < rank; ++r)
    for (int c = 0; c < cols; ++c)
      if (a[r][c] != 0) {
        pivot_col[r] = c;
        is_pivot[c] = true;
        break;
      }
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (int rr = 0; rr < rank; ++rr) v[pivot_col[rr]] = -a[rr][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace twocover::arith

#include "twocover/p1_bundles.hpp"

#include <limits>
#include <stdexcept>

namespace twocover::p1 {

using arith::divisor_supported_on;
using arith::divmod;
using arith::exact_div;
using arith::is_unit_on;
using arith::lcd_x;
using arith::poly_ext_gcd;
using arith::poly_gcd;
using arith::poly_part_on;
using arith::separate;
using arith::squarefree_part;

TriangularForm triangularize(const Mat2R& G)
{
  if (G.det().is_zero())
    throw std::domain_error("matrix not invertible over the function field");

  RatFunc lcd = lcd_x(G);
  RatFunc inv_lcd = lcd.inverse();
  UniPoly a = (G.a11 * inv_lcd).as_polynomial();
  UniPoly b = (G.a12 * inv_lcd).as_polynomial();
  UniPoly c = (G.a21 * inv_lcd).as_polynomial();
  UniPoly d = (G.a22 * inv_lcd).as_polynomial();

  Mat2R E = Mat2R::identity();
  auto swap_rows = [&]() {
    std::swap(a, c);
    std::swap(b, d);
    E = Mat2R::swap_J() * E;
  };
  auto add_multiple_of_first_to_second = [&](const UniPoly& s) {
    c = c + s * a;
    d = d + s * b;
    Mat2R S = Mat2R::identity();
    S.a21 = RatFunc(s);
    E = S * E;
  };

  while (!c.is_zero()) {
    if (a.is_zero() || a.degree() > c.degree()) {
      swap_rows();
    } else {
      UniPoly s = -divmod(c, a).quot;
      add_multiple_of_first_to_second(s);
    }
  }

  // Diagonal normalization B_m: monic diagonal, (1,2) reduced below deg d.
  Rational a_lead = a.leading();
  Rational d_lead = d.leading();
  UniPoly b_scaled = b * (Rational(1) / a_lead);
  UniPoly s_m = -divmod(b_scaled, d).quot;
  UniPoly a_prime = a * (Rational(1) / a_lead);
  UniPoly d_prime = d * (Rational(1) / d_lead);
  UniPoly b_prime = b_scaled + s_m * d;
  Mat2R B{RatFunc(Rational(1) / a_lead), RatFunc(s_m), RatFunc::zero(),
          RatFunc(Rational(1) / d_lead)};
  E = B * E;

  Mat2R T{RatFunc(a_prime) * lcd, RatFunc(b_prime) * lcd, RatFunc::zero(),
          RatFunc(d_prime) * lcd};
  return {E, T, lcd, a_prime, b_prime, d_prime};
}

P1TransitionData::P1TransitionData(Mat2R G) : G_(std::move(G))
{
  for (const RatFunc* e : {&G_.a11, &G_.a12, &G_.a21, &G_.a22})
    if (!e->is_laurent())
      throw std::invalid_argument("transition entries must be Laurent polynomials in x");
  RatFunc det = G_.det();
  if (det.is_zero()) throw std::invalid_argument("transition matrix is singular");
  const UniPoly& n = det.num();
  if (n.trailing_degree() != n.degree() || !det.is_laurent())
    throw std::invalid_argument("det of transition must be c*x^r");
  det_exp_ = n.degree() - det.den().degree();
  det_const_ = n.leading();
}

namespace {

long val0(const RatFunc& f)
{
  auto v = f.valuation_at_zero();
  if (!v) throw std::logic_error("valuation of zero entry");
  return *v;
}

long min_val0(const RatFunc& f, long acc)
{
  auto v = f.valuation_at_zero();
  return v ? std::min(acc, *v) : acc;
}

struct InvariantsWithForm {
  ColumnInvariants inv;
  TriangularForm tri;  // of G / x^v (polynomial entries)
  Mat2R reduced;       // G / x^v
};

InvariantsWithForm invariants_with_form(const Mat2R& G)
{
  long v = std::numeric_limits<long>::max();
  v = min_val0(G.a11, v);
  v = min_val0(G.a12, v);
  v = min_val0(G.a21, v);
  v = min_val0(G.a22, v);
  RatFunc xv = RatFunc::x().pow(v);
  Mat2R M = G.map([&](const RatFunc& f) { return f / xv; });
  for (const RatFunc* e : {&M.a11, &M.a12, &M.a21, &M.a22})
    if (!e->is_zero() && !e->is_polynomial())
      throw std::logic_error("lcd reduction did not clear denominators");

  long v1 = std::numeric_limits<long>::max();
  v1 = min_val0(M.a11, v1);
  v1 = min_val0(M.a21, v1);
  long v2 = std::numeric_limits<long>::max();
  v2 = min_val0(M.a12, v2);
  v2 = min_val0(M.a22, v2);

  TriangularForm tri = triangularize(M);
  if (!tri.lcd.is_constant())
    throw std::logic_error("reduced transition matrix has nontrivial lcd");
  long e1 = tri.a_prime.trailing_degree();
  long e2 = tri.d_prime.trailing_degree();
  // On P^1 data the monic diagonal consists of pure powers of x.
  if (tri.a_prime.trailing_degree() != tri.a_prime.degree() ||
      tri.d_prime.trailing_degree() != tri.d_prime.degree())
    throw std::logic_error("diagonal of Eu_x form is not a power of x");
  if (v1 != e1 || v2 > e2) throw std::logic_error("column invariant identities violated");
  return {{v1, v2, v, e1, e2, tri.b_prime}, tri, M};
}

// y^k * b(x) read as a polynomial in y, truncated to the terms of
// y-degree >= drop, then divided by y^drop.
UniPoly shift_to_y(const UniPoly& b, long k, long drop)
{
  std::vector<Rational> c;
  for (int j = 0; j <= b.degree(); ++j) {
    long ydeg = k - j;
    if (ydeg < drop) continue;
    long idx = ydeg - drop;
    if (static_cast<long>(c.size()) <= idx) c.resize(idx + 1, Rational(0));
    c[idx] = b.coeff(j);
  }
  return UniPoly(std::move(c));
}

Mat2R y_shear(const UniPoly& s_y)
{
  // [[1, -s_y(1/x)], [0, 1]] as a matrix over Q(x).
  RatFunc s = RatFunc(s_y).subst_inverse();
  Mat2R m = Mat2R::identity();
  m.a12 = -s;
  return m;
}

}  // namespace

ColumnInvariants column_invariants(const P1TransitionData& G)
{
  return invariants_with_form(G.matrix()).inv;
}

SplittingType split_p1(const P1TransitionData& G)
{
  Mat2R Ax = Mat2R::identity();
  Mat2R Ay = Mat2R::identity();
  Mat2R Gp = G.matrix();
  std::vector<long> v_trace;

  while (true) {
    auto data = invariants_with_form(Gp);
    const ColumnInvariants& inv = data.inv;
    if (!(inv.v1 < inv.v2 || inv.e1 < inv.e2)) break;

    // Progress instrumentation mirroring the termination proof: v never
    // decreases and strictly increases over any three executed steps.
    if (!v_trace.empty() && inv.v < v_trace.back())
      throw std::logic_error("split_p1: v decreased");
    v_trace.push_back(inv.v);
    size_t k = v_trace.size();
    if (k >= 4 && v_trace[k - 1] <= v_trace[k - 4])
      throw std::logic_error("split_p1: no progress over three iterations");

    if (inv.v1 < inv.v2) {
      Ay = Ay * Mat2R::swap_J();
      Gp = Gp * Mat2R::swap_J();
    } else {
      UniPoly s_y = shift_to_y(inv.b, inv.e2, inv.e2 - inv.e1);
      Mat2R shear = y_shear(s_y);
      Mat2R eu_inv = data.tri.E_mat.inverse();
      Ax = Ax * eu_inv;
      Ay = Ay * shear;
      Gp = data.tri.E_mat * Gp * shear;
    }
  }

  auto data = invariants_with_form(Gp);
  const ColumnInvariants& inv = data.inv;
  UniPoly s_fin = shift_to_y(inv.b, inv.e1, 0);
  Mat2R shear = y_shear(s_fin);
  Ax = Ax * data.tri.E_mat.inverse();
  Ay = Ay * shear;
  Gp = data.tri.E_mat * Gp * shear;

  SplittingType out;
  out.e1 = inv.v + inv.e1;
  out.e2 = inv.v + inv.e2;
  out.A_x = Ax;
  out.A_y = Ay;
  if (!Gp.a21.is_zero() || !Gp.a12.is_zero())
    throw std::logic_error("split_p1: final matrix not diagonal");
  if (out.e1 < out.e2 || out.e1 + out.e2 != G.det_exponent())
    throw std::logic_error("split_p1: splitting degrees inconsistent");
  return out;
}

bool verify_factorization(const P1TransitionData& G, const SplittingType& s)
{
  if (s.e1 < s.e2) return false;
  if (s.e1 + s.e2 != G.det_exponent()) return false;
  for (const RatFunc* e : {&s.A_x.a11, &s.A_x.a12, &s.A_x.a21, &s.A_x.a22})
    if (!e->is_zero() && !e->is_polynomial()) return false;
  for (const RatFunc* e : {&s.A_y.a11, &s.A_y.a12, &s.A_y.a21, &s.A_y.a22})
    if (!e->is_polynomial_in_y()) return false;
  RatFunc dx = s.A_x.det();
  RatFunc dy = s.A_y.det();
  if (dx.is_zero() || !dx.is_constant()) return false;
  if (dy.is_zero() || !dy.is_constant()) return false;

  Mat2R D = s.A_x.inverse() * G.matrix() * s.A_y;
  if (!D.a12.is_zero() || !D.a21.is_zero()) return false;
  RatFunc c1 = D.a11 / RatFunc::x().pow(s.e1);
  RatFunc c2 = D.a22 / RatFunc::x().pow(s.e2);
  return c1.is_constant() && !c1.is_zero() && c2.is_constant() && !c2.is_zero();
}

AffineCocycle::AffineCocycle(std::vector<DistinguishedOpen> opens,
                             std::vector<std::vector<Mat2R>> transitions)
    : opens_(std::move(opens)), G_(std::move(transitions))
{
  validate();
}

AffineCocycle AffineCocycle::from_base_transitions(std::vector<DistinguishedOpen> opens,
                                                   std::vector<Mat2R> to_chart_zero)
{
  size_t n = opens.size();
  if (to_chart_zero.size() != n)
    throw std::invalid_argument("need one base transition per chart");
  if (!(to_chart_zero[0] == Mat2R::identity()))
    throw std::invalid_argument("G_00 must be the identity");
  std::vector<std::vector<Mat2R>> table(n, std::vector<Mat2R>(n, Mat2R::identity()));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      table[i][j] = to_chart_zero[i] * to_chart_zero[j].inverse();
  return AffineCocycle(std::move(opens), std::move(table));
}

void AffineCocycle::validate() const
{
  size_t n = opens_.size();
  if (n == 0) throw std::invalid_argument("empty covering");
  if (G_.size() != n) throw std::invalid_argument("transition table size mismatch");
  for (const auto& row : G_)
    if (row.size() != n) throw std::invalid_argument("transition table size mismatch");

  UniPoly all = opens_[0].h;
  for (size_t i = 1; i < n; ++i) all = poly_gcd(all, opens_[i].h);
  if (all.degree() > 0)
    throw std::invalid_argument("opens do not cover the affine line");

  for (size_t i = 0; i < n; ++i)
    if (!(G_[i][i] == Mat2R::identity()))
      throw std::invalid_argument("G_ii must be the identity");

  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      UniPoly hh = squarefree_part(opens_[i].h * opens_[j].h);
      RatFunc det = G_[i][j].det();
      if (det.is_zero() || !divisor_supported_on(hh, det))
        throw std::invalid_argument("det G_ij not invertible on the overlap");
      Mat2R inv = G_[i][j].inverse();
      const Mat2R* both[2] = {&G_[i][j], &inv};
      for (const Mat2R* m : both)
        for (const RatFunc* e : {&m->a11, &m->a12, &m->a21, &m->a22}) {
          if (e->is_zero()) continue;
          if (!(poly_part_on(e->den(), hh) == e->den()))
            throw std::invalid_argument("transition entry not regular on the overlap");
        }
      for (size_t k = 0; k < n; ++k)
        if (!(G_[i][k] == G_[i][j] * G_[j][k]))
          throw std::invalid_argument("cocycle law violated");
    }
}

std::vector<Mat2R> trivialize_affine(const AffineCocycle& c)
{
  size_t n = c.size();
  std::vector<Mat2R> A(n, Mat2R::identity());

  for (size_t k = 1; k < n; ++k) {
    const DistinguishedOpen& U = c.opens()[k];
    TriangularForm tri = triangularize(c.transition(k, 0) * A[0]);
    const UniPoly& a = tri.a_prime;
    const UniPoly& b = tri.b_prime;
    const UniPoly& d = tri.d_prime;

    UniPoly Da = poly_part_on(a, U.h);
    UniPoly Na = exact_div(a, Da);
    UniPoly Dd = poly_part_on(d, U.h);
    UniPoly Nd = exact_div(d, Dd);
    auto g_split = separate(U, tri.lcd);

    if (poly_gcd(Na, Dd).degree() != 0 || poly_gcd(Da, Nd).degree() != 0)
      throw std::invalid_argument("inconsistent cocycle");

    // alpha*Da + beta*Nd = -b, with alpha reduced modulo Nd.
    auto bez = poly_ext_gcd(Da, Nd);
    if (bez.g.degree() != 0) throw std::invalid_argument("inconsistent cocycle");
    UniPoly alpha = -b * bez.u;
    alpha = divmod(alpha, Nd).rem;
    UniPoly beta = exact_div(-b - alpha * Da, Nd);

    RatFunc inv_N_gad = (g_split.N * RatFunc(Na * Nd)).inverse();
    Mat2R step{RatFunc(Nd), RatFunc(alpha), RatFunc::zero(), RatFunc(Na)};
    step = step * inv_N_gad;
    for (size_t i = 0; i < k; ++i) A[i] = A[i] * step;

    Mat2R corner{RatFunc(Da), RatFunc(-beta), RatFunc::zero(), RatFunc(Dd)};
    A[k] = tri.E_mat.inverse() * corner * g_split.D;
  }
  return A;
}

bool regular_and_invertible_on(const DistinguishedOpen& U, const Mat2R& A)
{
  for (const RatFunc* e : {&A.a11, &A.a12, &A.a21, &A.a22}) {
    if (e->is_zero()) continue;
    if (!(poly_part_on(e->den(), U.h) == e->den())) return false;
  }
  RatFunc det = A.det();
  if (det.is_zero()) return false;
  return is_unit_on(U, det);
}

}  // namespace twocover::p1

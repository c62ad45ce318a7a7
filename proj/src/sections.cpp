#include <stdexcept>

#include "twocover/conic.hpp"

namespace twocover::conic {

using arith::Exponents;
using arith::QMatrix;

namespace {

// Monomials of total degree d in three variables, in lex order.
std::vector<Exponents> monomials_of_degree(int d)
{
  std::vector<Exponents> out;
  for (int i = d; i >= 0; --i)
    for (int j = d - i; j >= 0; --j) out.push_back({i, j, d - i - j});
  return out;
}

struct MonomialDen {
  int e1 = 0, e2 = 0;  // x1^e1 * x2^e2 (possibly times a constant)
  Rational scale{1};
};

// Denominators occurring between charts U_1 and U_2 are monomials in
// x1, x2 up to a constant.
MonomialDen as_monomial_den(const HomPoly3& den)
{
  if (den.terms().size() != 1)
    throw std::logic_error("transition denominator is not a monomial");
  const auto& [e, c] = *den.terms().begin();
  if (e[0] != 0) throw std::logic_error("transition denominator involves x0");
  return {e[1], e[2], c};
}

struct SolveResult {
  std::vector<SectionPair> basis;
};

// Pairs (s1, s2) of chart-U_2 polynomials of degree <= D, stored as
// forms over x2^D, with G * (s1, s2)^t polynomial on U_1.
SolveResult solve_sections(const dc::Mat2<P2Func>& G, int D, long k1, long k2)
{
  auto monos = monomials_of_degree(D);
  int m = static_cast<int>(monos.size());
  int cols = 2 * m;

  QMatrix rows;
  for (int row = 0; row < 2; ++row) {
    const P2Func& g1 = row == 0 ? G.a11 : G.a21;
    const P2Func& g2 = row == 0 ? G.a12 : G.a22;
    MonomialDen d1 = as_monomial_den(g1.den());
    MonomialDen d2 = as_monomial_den(g2.den());
    int A = std::max(d1.e1, d2.e1);
    int B = std::max(d1.e2, d2.e2);
    // N_row = H1 * x1^(A-a1) x2^(B-b1) * S1 + H2 * (...) * S2 must be
    // divisible by x2^(B+D); its coefficients are linear in the S's.
    HomPoly3 H1 = g1.num() * HomPoly3::monomial({0, A - d1.e1, B - d1.e2},
                                                Rational(1) / d1.scale);
    HomPoly3 H2 = g2.num() * HomPoly3::monomial({0, A - d2.e1, B - d2.e2},
                                                Rational(1) / d2.scale);
    int forbidden = B + D;

    std::map<Exponents, std::vector<Rational>> conditions;
    auto accumulate = [&](const HomPoly3& H, int offset) {
      for (const auto& [he, hc] : H.terms())
        for (int k = 0; k < m; ++k) {
          Exponents e{he[0] + monos[k][0], he[1] + monos[k][1], he[2] + monos[k][2]};
          if (e[2] >= forbidden) continue;
          auto& vec = conditions[e];
          if (vec.empty()) vec.assign(cols, Rational(0));
          vec[offset + k] += hc;
        }
    };
    if (!g1.is_zero()) accumulate(H1, 0);
    if (!g2.is_zero()) accumulate(H2, m);
    for (auto& [e, vec] : conditions) rows.push_back(std::move(vec));
  }

  auto kernel = arith::nullspace(rows, cols);
  SolveResult out;
  for (const auto& v : kernel) {
    std::map<Exponents, Rational> t1, t2;
    for (int k = 0; k < m; ++k) {
      if (v[k] != 0) t1[monos[k]] = v[k];
      if (v[m + k] != 0) t2[monos[k]] = v[m + k];
    }
    SectionPair p;
    p.S1 = t1.empty() ? HomPoly3() : HomPoly3(D, std::move(t1));
    p.S2 = t2.empty() ? HomPoly3() : HomPoly3(D, std::move(t2));
    p.bound = D;
    p.k1 = k1;
    p.k2 = k2;
    out.basis.push_back(std::move(p));
  }
  return out;
}

// Transition of phi_* O_X(k1,k2) between U_1 and U_2: the O(k2)-twist
// times the group-law transition at exponent k1-k2.
dc::Mat2<P2Func> twisted_transition(const ConicCover& cover, long k1, long k2)
{
  if (k1 < k2) throw std::invalid_argument("bidegree must satisfy k1 >= k2");
  P2Rep pair = standard_conic_pair(cover);
  P2Rep rep = dc::group_law<P2Func, P2Chart>({pair}, {k1 - k2});
  P2Func twist = P2Func::coord_ratio(2, 1).pow(k2);  // x_12^{k2}
  return rep.G[1][2] * twist;
}

}  // namespace

SectionBasis global_sections(const ConicCover& cover, long k1, long k2,
                             int degree_bound)
{
  if (degree_bound < 0) throw std::invalid_argument("degree bound must be >= 0");
  dc::Mat2<P2Func> G = twisted_transition(cover, k1, k2);
  SectionBasis out;
  out.k1 = k1;
  out.k2 = k2;
  out.degree_bound = degree_bound;
  out.basis = solve_sections(G, degree_bound, k1, k2).basis;
  out.dimension = static_cast<int>(out.basis.size());
  auto next = solve_sections(G, degree_bound + 1, k1, k2);
  out.saturated = static_cast<int>(next.basis.size()) == out.dimension;
  return out;
}

SectionImage section_image_degree(const ConicCover& cover, const SectionPair& elem)
{
  dc::Mat2<P2Func> G = twisted_transition(cover, elem.k1, elem.k2);
  int D = elem.bound;
  P2Func s1 = elem.S1.is_zero()
                  ? P2Func::zero()
                  : P2Func(elem.S1, HomPoly3::variable(2).pow(D));
  P2Func s2 = elem.S2.is_zero()
                  ? P2Func::zero()
                  : P2Func(elem.S2, HomPoly3::variable(2).pow(D));

  // Two-chart representation over U_1, U_2 for the gluing check.
  P2Rep rep;
  rep.charts = {P2Chart{{HomPoly3::variable(1)}}, P2Chart{{HomPoly3::variable(2)}}};
  rep.xi = {{P2Func::one(), P2Func::coord_ratio(1, 2)},
            {P2Func::coord_ratio(2, 1), P2Func::one()}};
  HomPoly3 F0 = cover.normal_form();
  rep.F = {P2Func::on_chart(F0, 1), P2Func::on_chart(F0, 2)};
  rep.G = {{dc::Mat2<P2Func>::identity(), G},
           {G.inverse(), dc::Mat2<P2Func>::identity()}};
  rep.M = {{P2Func::zero(), P2Func::one(), rep.F[0]},
           {P2Func::zero(), P2Func::one(), rep.F[1]}};
  rep.is_good = rep.is_normal = true;
  dc::require_valid(rep, "twisted two-chart representation");

  // Chart-1 data is the transported vector (normal representation, so
  // the coordinates are the section data themselves).
  P2Func x1 = G.a11 * s1 + G.a12 * s2;
  P2Func y1 = G.a21 * s1 + G.a22 * s2;
  auto norm = dc::section_norm(rep, {{x1, y1}, {s1, s2}});

  // h_2 = s1^2 - s2^2 F as a chart-U_2 polynomial.
  HomPoly3 x2sq = HomPoly3::variable(2) * HomPoly3::variable(2);
  HomPoly3 N = elem.S1 * elem.S1 * x2sq - elem.S2 * elem.S2 * F0;
  SectionImage out;
  out.gluing_verified = norm.gluing_verified;
  if (N.is_zero()) {
    out.reduced_form = HomPoly3();
    out.degree = -1;
    return out;
  }
  int strip = N.min_exponent(2);
  out.reduced_form =
      N.try_divide(HomPoly3::variable(2).pow(strip)).value();
  out.degree = N.degree() - strip;

  // Cross-check against the section-norm value on chart 2.
  P2Func h2(N, HomPoly3::variable(2).pow(N.degree()));
  if (!(h2 == norm.h[1])) throw std::logic_error("section norm mismatch");
  return out;
}

}  // namespace twocover::conic

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_helpers.hpp"
#include "twocover/branch.hpp"
#include "twocover/conic.hpp"

using namespace twocover;
using arith::HomPoly3;
using arith::Mat2;
using arith::Mat2R;
using arith::P1Chart;
using arith::P2Chart;
using arith::P2Func;
using arith::Rational;
using arith::RatFunc;
using arith::UniPoly;
using conic::P1Rep;
using conic::P2Rep;
using testgen::Rng;

namespace {

HomPoly3 var(int i) { return HomPoly3::variable(i); }

HomPoly3 default_conic() { return var(0) * var(0) + var(1) * var(2); }

Mat2<P2Func> k12_expected()
{
  // [[-x10, x10^2 + x12], [1, -x10]] in chart-1 functions.
  P2Func a = P2Func::coord_ratio(0, 1);
  P2Func F1 = P2Func::on_chart(default_conic(), 1);
  return {P2Func::zero() - a, F1, P2Func::one(), P2Func::zero() - a};
}

}  // namespace

TEST_CASE("two-point cover: good representation and K matrices")
{
  P1Rep rep = conic::two_point_cover_pair();
  REQUIRE(rep.size() == 2);
  CHECK(rep.is_good);
  CHECK(dc::validate_admissible(rep).valid());

  RatFunc x = RatFunc::x();
  // Chart 1 was conjugated by the swap, so a1 is the unit 1 there.
  CHECK(rep.M[0].a1 == RatFunc::one());
  CHECK(rep.M[1].a1 == RatFunc::one());
  CHECK(rep.M[1].a0.is_zero());
  CHECK(rep.M[1].a2 == x.inverse());

  Mat2R kp = dc::k_plus(rep, 0, 1);
  CHECK(kp == Mat2R{RatFunc::zero(), x, RatFunc::one(), RatFunc::zero()});
  Mat2R km = dc::k_minus(rep, 0, 1);
  CHECK(km == kp * x.inverse());

  // Scalar identity K+ K- = (a_j1 / a_i1) E on both chart pairs.
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) {
      if (i == j) continue;
      Mat2R prod = dc::k_plus(rep, i, j) * dc::k_minus(rep, i, j);
      Mat2R expect = Mat2R::identity() * (rep.M[j].a1 / rep.M[i].a1);
      CHECK(prod == expect);
    }
}

TEST_CASE("two-point cover: group law transition table")
{
  P1Rep rep = conic::two_point_cover_pair();
  RatFunc x = RatFunc::x();
  for (long n = -11; n <= 11; ++n) {
    P1Rep pushed = dc::group_law<RatFunc, P1Chart>({rep}, {n});
    CHECK(pushed.is_normal);
    CHECK(dc::validate_admissible(pushed).valid());
    const Mat2R& G = pushed.G[0][1];
    long k = n >= 0 ? n / 2 : -((-n + 1) / 2);
    if (n % 2 != 0) {
      // odd powers: x^k J
      CHECK(G == Mat2R::swap_J() * x.pow(k));
    } else {
      CHECK(G == Mat2R::diag(x.pow(k), x.pow(k - 1)));
    }
    auto s = p1::split_p1(p1::P1TransitionData(G));
    if (n % 2 != 0) {
      CHECK(s.e1 == k);
      CHECK(s.e2 == k);
    } else {
      CHECK(s.e1 == k);
      CHECK(s.e2 == k - 1);
    }
  }
}

TEST_CASE("standard conic pair: structure and paper values")
{
  auto cover = conic::ConicCover::standard();
  P2Rep rep = standard_conic_pair(cover);
  REQUIRE(rep.size() == 3);
  CHECK(rep.is_good);
  CHECK(dc::validate_admissible(rep).valid());

  // Chart 0 is cut out by -2x0 + x1 - x2 != 0.
  HomPoly3 cond = var(1) - var(0) * Rational(2) - var(2);
  bool found = false;
  for (const auto& g : rep.charts[0].removed)
    if (g == cond || g == -cond) found = true;
  CHECK(found);

  // K_12 as displayed.
  CHECK(dc::k_plus(rep, 1, 2) == k12_expected());

  // Scalar identity on every chart pair.
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      auto prod = dc::k_plus(rep, i, j) * dc::k_minus(rep, i, j);
      auto expect = Mat2<P2Func>::identity() * (rep.M[j].a1 / rep.M[i].a1);
      CHECK(prod == expect);
    }

  // Group-law output is a valid normal representation.
  for (long n : {-2L, -1L, 0L, 1L, 2L, 3L}) {
    P2Rep pushed = dc::group_law<P2Func, P2Chart>({rep}, {n});
    CHECK(pushed.is_normal);
    CHECK(dc::validate_admissible(pushed).valid());
    if (n == 0)
      for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j)
          CHECK(pushed.G[i][j] == rep.structure_transition(i, j));
  }
}

TEST_CASE("validate_admissible flags defects")
{
  auto cover = conic::ConicCover::standard();
  P2Rep rep = standard_conic_pair(cover);

  P2Rep bad = rep;
  bad.F[1] = bad.F[1] + P2Func::one();
  auto r1 = dc::validate_admissible(bad);
  CHECK_FALSE(r1.valid());
  bool mentions_f = false;
  for (const auto& d : r1.defects)
    if (d.find("a0^2 + a1*a2") != std::string::npos) mentions_f = true;
  CHECK(mentions_f);

  P2Rep bad2 = rep;
  bad2.G[1][2].a11 = bad2.G[1][2].a11 + P2Func::one();
  CHECK_FALSE(dc::validate_admissible(bad2).valid());
}

TEST_CASE("make_good edge behaviour")
{
  P1Rep good = conic::two_point_cover_pair();
  // Already good, empty p-lists: identity refinement.
  P1Rep again = dc::make_good(good, {{}, {}});
  CHECK(again.charts == good.charts);
  CHECK(again.G == good.G);
  CHECK(again.M[0].a1 == good.M[0].a1);
  CHECK(again.M[1].a1 == good.M[1].a1);

  // A cover where neither a1 nor a2 is a unit cannot be certified
  // without p-choices.
  P1Rep stuck;
  RatFunc x = RatFunc::x();
  stuck.charts = {P1Chart{UniPoly(Rational(1)), false}};
  stuck.xi = {{RatFunc::one()}};
  stuck.F = {x * x};
  stuck.G = {{Mat2R::identity()}};
  stuck.M = {{RatFunc::zero(), x, x}};
  CHECK_THROWS_WITH(dc::make_good(stuck, {{}}), "cannot certify covering");
}

TEST_CASE("inverse and conjugate pairs")
{
  P1Rep rep = conic::two_point_cover_pair();
  P1Rep inv = dc::inverse_pair(rep);
  CHECK(dc::validate_admissible(inv).valid());
  P1Rep conj = dc::conjugate_pair(rep);
  CHECK(dc::validate_admissible(conj).valid());
  CHECK(dc::conjugate_pair(conj).M[0].a0 == rep.M[0].a0);
  CHECK(dc::conjugate_pair(conj).M[0].a1 == rep.M[0].a1);

  // Inverting the structure-sheaf pair keeps transitions diag(1, xi).
  P1Rep structure = dc::group_law<RatFunc, P1Chart>({rep}, {0});
  P1Rep sinv = dc::inverse_pair(structure);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j)
      CHECK(sinv.G[i][j] == structure.G[i][j]);

  // n = [1] then inverse then re-normalized equals the n = -1 row.
  P1Rep one = dc::group_law<RatFunc, P1Chart>({rep}, {1});
  P1Rep one_inv = dc::inverse_pair(one);
  P1Rep renorm = dc::group_law<RatFunc, P1Chart>({one_inv}, {1});
  P1Rep minus_one = dc::group_law<RatFunc, P1Chart>({rep}, {-1});
  auto s1 = p1::split_p1(p1::P1TransitionData(renorm.G[0][1]));
  auto s2 = p1::split_p1(p1::P1TransitionData(minus_one.G[0][1]));
  CHECK(s1.e1 == s2.e1);
  CHECK(s1.e2 == s2.e2);
  CHECK(s1.e1 == -1);
  CHECK(s1.e2 == -1);
}

TEST_CASE("ramification pair")
{
  // Two-point cover of P^1: the pair of the ramification divisor has
  // transition diag(x, 1), presenting O(1) + O.
  RatFunc x = RatFunc::x();
  std::vector<P1Chart> charts{P1Chart{UniPoly(Rational(1)), true},
                              P1Chart{UniPoly::x(), false}};
  std::vector<std::vector<RatFunc>> xi{{RatFunc::one(), x.inverse()},
                                       {x, RatFunc::one()}};
  std::vector<RatFunc> F{x, x.inverse()};
  P1Rep ram = dc::ramification_pair(charts, xi, F);
  CHECK(dc::validate_admissible(ram).valid());
  CHECK(ram.G[0][1] == Mat2R::diag(x, RatFunc::one()));
  auto s = p1::split_p1(p1::P1TransitionData(ram.G[0][1]));
  CHECK(s.e1 == 1);
  CHECK(s.e2 == 0);

  // Constant twist: trivially valid.
  std::vector<P1Chart> one_chart{P1Chart{UniPoly(Rational(1)), false}};
  std::vector<std::vector<RatFunc>> one_xi{{RatFunc::one()}};
  std::vector<RatFunc> one_F{x * x};
  P1Rep triv = dc::ramification_pair(one_chart, one_xi, one_F);
  CHECK(dc::validate_admissible(triv).valid());

  // Twist incompatible with the branch functions.
  CHECK_THROWS(dc::ramification_pair(charts, xi, {x, x}));
}

TEST_CASE("section norm")
{
  // Unit section of the structure sheaf: h_i = a_i1 = 1.
  P1Rep rep = conic::two_point_cover_pair();
  P1Rep structure = dc::group_law<RatFunc, P1Chart>({rep}, {0});
  auto norm = dc::section_norm(
      structure, {{RatFunc::one(), RatFunc::zero()}, {RatFunc::one(), RatFunc::zero()}});
  CHECK(norm.gluing_verified);
  CHECK(norm.h[0] == RatFunc::one());
  CHECK(norm.h[1] == RatFunc::one());

  // Tautological section of the conic pair: the norm cuts a tangent
  // line of the branch conic.
  auto cover = conic::ConicCover::standard();
  P2Rep pair = standard_conic_pair(cover);
  // Constant section (1,0) of the underlying bundle, moved into the
  // refined frames A_0 = [[1,0],[1,1]], A_1 = E, A_2 = swap.
  std::vector<std::pair<P2Func, P2Func>> data;
  std::vector<std::array<P2Func, 2>> vecs = {
      {P2Func::one(), P2Func::zero() - P2Func::one()},  // A_0^{-1} (1,0)
      {P2Func::one(), P2Func::zero()},
      {P2Func::zero(), P2Func::one()}};
  for (size_t i = 0; i < 3; ++i) {
    const auto& tri = pair.M[i];
    P2Func y = vecs[i][1] / tri.a1;
    P2Func x0 = vecs[i][0] - tri.a0 * y;
    data.push_back({x0, y});
  }
  auto cn = dc::section_norm(pair, data);
  CHECK(cn.gluing_verified);
  // On chart 2 the norm is -x1/x2: it cuts the tangent line x1 = 0.
  CHECK(cn.h[2] == P2Func::zero() - P2Func::coord_ratio(1, 2));

  // Broken section data is rejected.
  CHECK_THROWS_WITH(
      dc::section_norm(structure,
                       {{RatFunc::one(), RatFunc::zero()},
                        {RatFunc::x(), RatFunc::zero()}}),
      "not a global section");
}

TEST_CASE("equivalence witnesses")
{
  auto cover = conic::ConicCover::standard();
  P2Rep pair = standard_conic_pair(cover);
  P2Rep repA = dc::group_law<P2Func, P2Chart>({pair}, {1});

  // Identity witness between equal representations.
  std::vector<std::pair<P2Func, P2Func>> id_witness(
      3, {P2Func::one(), P2Func::zero()});
  CHECK(dc::verify_equivalence_witness(repA, repA, id_witness));

  // Zero witness fails the determinant condition.
  std::vector<std::pair<P2Func, P2Func>> zero_witness(
      3, {P2Func::zero(), P2Func::zero()});
  CHECK_FALSE(dc::verify_equivalence_witness(repA, repA, zero_witness));

  // The same pair refined through p = 1 and p = 2 yields equivalent
  // normal representations; the witness on chart 0 solves the
  // intertwining equation W_0 = K^B (K^A)^{-1} in the algebra Q[M^0].
  P2Rep raw;
  raw.charts = {P2Chart{{var(0)}}, P2Chart{{var(1)}}, P2Chart{{var(2)}}};
  raw.xi.assign(3, std::vector<P2Func>(3, P2Func::one()));
  raw.G.assign(3, std::vector<Mat2<P2Func>>(3, Mat2<P2Func>::identity()));
  for (int i = 0; i < 3; ++i) {
    raw.F.push_back(P2Func::on_chart(default_conic(), i));
    raw.M.push_back({P2Func::coord_ratio(0, i), P2Func::coord_ratio(1, i),
                     P2Func::coord_ratio(2, i)});
    for (int j = 0; j < 3; ++j) raw.xi[i][j] = P2Func::coord_ratio(i, j);
  }
  P2Rep goodA = dc::make_good(raw, {{P2Func::one()}, {}, {}});
  P2Rep goodB = dc::make_good(raw, {{P2Func(Rational(2))}, {}, {}});
  P2Rep nA = dc::group_law<P2Func, P2Chart>({goodA}, {1});
  P2Rep nB = dc::group_law<P2Func, P2Chart>({goodB}, {1});

  // Move both to the common refinement of chart 0.
  P2Chart common = overlap(goodA.charts[0], goodB.charts[0]);
  nA.charts[0] = common;
  nB.charts[0] = common;
  REQUIRE(dc::validate_admissible(nA).valid());
  REQUIRE(dc::validate_admissible(nB).valid());

  Mat2<P2Func> W0 = nB.G[0][1] * nA.G[0][1].inverse();
  CHECK(W0.a22 == W0.a11);
  CHECK(W0.a12 == W0.a21 * nA.F[0]);
  std::vector<std::pair<P2Func, P2Func>> witness{
      {W0.a11, W0.a21}, {P2Func::one(), P2Func::zero()},
      {P2Func::one(), P2Func::zero()}};
  CHECK(dc::verify_equivalence_witness(nA, nB, witness));

  // A corrupted witness fails.
  witness[0].second = P2Func::zero() - witness[0].second;
  if (!witness[0].second.is_zero())
    CHECK_FALSE(dc::verify_equivalence_witness(nA, nB, witness));

  // Non-normal inputs are rejected.
  CHECK_THROWS(dc::verify_equivalence_witness(pair, repA, id_witness));
}

TEST_CASE("branch decomposition")
{
  HomPoly3 F = default_conic();
  auto dec = dc::branch_decompose(F, var(1));
  REQUIRE(dec.has_value());
  CHECK(dec->first == var(0));
  CHECK(dec->second == var(2));
  CHECK(dec->first * dec->first + var(1) * dec->second == F);

  CHECK_FALSE(dc::branch_decompose(F, var(0)).has_value());

  CHECK_THROWS(dc::branch_decompose(F, var(0) * var(0)));
  CHECK_THROWS(dc::branch_decompose(F, HomPoly3()));
}

TEST_CASE("branch decomposition round trip")
{
  Rng rng(777);
  auto random_form = [&](int deg) {
    std::map<arith::Exponents, Rational> terms;
    for (int i = 0; i <= deg; ++i)
      for (int j = 0; i + j <= deg; ++j)
        terms[{i, j, deg - i - j}] = rng.rational(4);
    return HomPoly3(deg, std::move(terms));
  };

  int built = 0;
  while (built < 50) {
    int l = static_cast<int>(rng.integer(1, 4));  // 2l <= 8
    HomPoly3 a0 = random_form(l);
    HomPoly3 a1 = random_form(2 * l - 1);
    long c0 = rng.integer(-3, 3), c1 = rng.integer(-3, 3), c2 = rng.integer(-3, 3);
    if (c0 == 0 && c1 == 0 && c2 == 0) continue;
    HomPoly3 f = var(0) * Rational(c0) + var(1) * Rational(c1) + var(2) * Rational(c2);
    HomPoly3 F = a0 * a0 + f * a1;
    if (F.is_zero()) continue;
    ++built;
    auto dec = dc::branch_decompose(F, f);
    REQUIRE(dec.has_value());
    // The decomposition is unique only modulo a0 -> a0 + mu f, so the
    // oracle checks the identity, not coefficient equality.
    CHECK(dec->first * dec->first + f * dec->second == F);
    HomPoly3 diff = F - dec->first * dec->first;
    if (!diff.is_zero()) CHECK(diff.try_divide(f).has_value());
  }
}

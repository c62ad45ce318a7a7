#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_helpers.hpp"
#include "twocover/p1_bundles.hpp"

using namespace twocover::arith;
using namespace twocover::p1;
using testgen::Rng;

namespace {

UniPoly upoly(std::vector<long> coeffs)
{
  std::vector<Rational> c;
  for (long v : coeffs) c.emplace_back(v);
  return UniPoly(std::move(c));
}

Mat2R pmat(std::vector<long> a, std::vector<long> b, std::vector<long> c,
           std::vector<long> d)
{
  return {RatFunc(upoly(std::move(a))), RatFunc(upoly(std::move(b))),
          RatFunc(upoly(std::move(c))), RatFunc(upoly(std::move(d)))};
}

}  // namespace

TEST_CASE("triangularize basic cases")
{
  auto id = Mat2R::identity();
  auto t1 = triangularize(id);
  CHECK(t1.E_mat == id);
  CHECK(t1.T == id);

  auto t2 = triangularize(Mat2R::swap_J());
  CHECK(t2.E_mat == Mat2R::swap_J());
  CHECK(t2.T == id);

  // [[x,1],[x^2,x+1]]: a' = gcd(x, x^2) = x, constant det of E_mat.
  Mat2R g = pmat({0, 1}, {1}, {0, 0, 1}, {1, 1});
  auto t3 = triangularize(g);
  CHECK(t3.T.a21.is_zero());
  CHECK(t3.a_prime == upoly({0, 1}));
  CHECK(t3.E_mat.det().is_constant());
  CHECK(!t3.E_mat.det().is_zero());
  CHECK(t3.E_mat * g == t3.T);
  // det preserved up to the constant det(Eu).
  CHECK(t3.T.det() == t3.E_mat.det() * g.det());
  CHECK(t3.T == Mat2R::diag(RatFunc(upoly({0, 1})), RatFunc::one()));

  CHECK_THROWS_WITH(triangularize(pmat({0, 1}, {0, 1}, {0, 1}, {0, 1})),
                    "matrix not invertible over the function field");
}

TEST_CASE("triangularize structure property")
{
  Rng rng(31337);
  int done = 0;
  while (done < 100) {
    Mat2R g{RatFunc(rng.poly(4), rng.nonzero_poly(2)),
            RatFunc(rng.poly(4), rng.nonzero_poly(2)),
            RatFunc(rng.poly(4), rng.nonzero_poly(2)),
            RatFunc(rng.poly(4), rng.nonzero_poly(2))};
    if (g.det().is_zero()) continue;
    ++done;
    auto t = triangularize(g);
    CHECK(t.T.a21.is_zero());
    CHECK(t.E_mat * g == t.T);
    RatFunc de = t.E_mat.det();
    CHECK(de.is_constant());
    CHECK(t.a_prime.leading() == Rational(1));
    CHECK(t.d_prime.leading() == Rational(1));
    CHECK(t.b_prime.degree() < t.d_prime.degree());
    // a'd' lcd^2 = det(G) up to the constant.
    CHECK(RatFunc(t.a_prime * t.d_prime) * t.lcd * t.lcd == de * g.det());
    // a' = gcd of the first column of G/lcd.
    UniPoly a = (g.a11 / t.lcd).as_polynomial();
    UniPoly c = (g.a21 / t.lcd).as_polynomial();
    if (!(a.is_zero() && c.is_zero())) CHECK(poly_gcd(a, c) == t.a_prime);
  }
}

TEST_CASE("column invariants on stated cases")
{
  // diag(x^3, x): v=1, v1=2, v2=0, e1=2, e2=0, b=0.
  P1TransitionData g1(Mat2R::diag(RatFunc(upoly({0, 0, 0, 1})), RatFunc::x()));
  auto i1 = column_invariants(g1);
  CHECK(i1.v == 1);
  CHECK(i1.v1 == 2);
  CHECK(i1.v2 == 0);
  CHECK(i1.e1 == 2);
  CHECK(i1.e2 == 0);
  CHECK(i1.b.is_zero());

  P1TransitionData g2(Mat2R::swap_J());
  auto i2 = column_invariants(g2);
  CHECK(i2.v1 == 0);
  CHECK(i2.v2 == 0);
  CHECK(i2.v == 0);
  CHECK(i2.e1 == 0);
  CHECK(i2.e2 == 0);
  CHECK(i2.b.is_zero());

  // [[x,1],[0,x]]: v=0, v1=1, v2=0, e1=1, e2=1, b=1.
  P1TransitionData g3(pmat({0, 1}, {1}, {0}, {0, 1}));
  auto i3 = column_invariants(g3);
  CHECK(i3.v == 0);
  CHECK(i3.v1 == 1);
  CHECK(i3.v2 == 0);
  CHECK(i3.e1 == 1);
  CHECK(i3.e2 == 1);
  CHECK(i3.b == upoly({1}));
}

TEST_CASE("P1TransitionData validation")
{
  CHECK_THROWS(P1TransitionData(pmat({0, 1}, {0}, {0}, {-1, 1})));  // det x(x-1)
  // Non-Laurent entry.
  Mat2R bad = Mat2R::identity();
  bad.a12 = RatFunc(upoly({1}), upoly({-1, 1}));
  CHECK_THROWS(P1TransitionData(bad));
  // Singular.
  CHECK_THROWS(P1TransitionData(pmat({0, 1}, {0, 1}, {0, 1}, {0, 1})));
}

TEST_CASE("split_p1 stated cases")
{
  // x^k * J -> (k, k), the two-point cover pattern.
  for (long k : {0L, 1L, 2L, 5L}) {
    Mat2R g = Mat2R::swap_J() * RatFunc(UniPoly::monomial(k));
    auto s = split_p1(P1TransitionData(g));
    CHECK(s.e1 == k);
    CHECK(s.e2 == k);
    CHECK(verify_factorization(P1TransitionData(g), s));
  }

  // diag(x^3, x) -> (3, 1) with identity witnesses.
  P1TransitionData d31(Mat2R::diag(RatFunc(upoly({0, 0, 0, 1})), RatFunc::x()));
  auto s31 = split_p1(d31);
  CHECK(s31.e1 == 3);
  CHECK(s31.e2 == 1);
  CHECK(s31.A_x == Mat2R::identity());
  CHECK(s31.A_y == Mat2R::identity());
  CHECK(verify_factorization(d31, s31));

  // [[x,1],[0,x]] -> (1,1) with A_y = [[1,-y],[0,1]].
  P1TransitionData j11(pmat({0, 1}, {1}, {0}, {0, 1}));
  auto s11 = split_p1(j11);
  CHECK(s11.e1 == 1);
  CHECK(s11.e2 == 1);
  Mat2R expect_ay = Mat2R::identity();
  expect_ay.a12 = -RatFunc::x().inverse();
  CHECK(s11.A_y == expect_ay);
  CHECK(verify_factorization(j11, s11));
}

TEST_CASE("verify_factorization rejects bad witnesses")
{
  P1TransitionData id(Mat2R::identity());
  SplittingType ok{0, 0, Mat2R::identity(), Mat2R::identity()};
  CHECK(verify_factorization(id, ok));

  // Unsorted splitting must be rejected.
  P1TransitionData dx(Mat2R::diag(RatFunc::x(), RatFunc::one()));
  SplittingType bad{0, 1, Mat2R::identity(), Mat2R::identity()};
  CHECK_FALSE(verify_factorization(dx, bad));

  // Wrong total degree.
  SplittingType bad2{1, 0, Mat2R::identity(), Mat2R::identity()};
  CHECK_FALSE(verify_factorization(id, bad2));
}

TEST_CASE("split_p1 round trip property")
{
  Rng rng(987654321);
  for (int trial = 0; trial < 200; ++trial) {
    long e1 = rng.integer(-5, 5);
    long e2 = rng.integer(-5, 5);
    if (e1 < e2) std::swap(e1, e2);
    Mat2R P = rng.gl2_polynomial();
    Mat2R Q = testgen::subst_y(rng.gl2_polynomial());
    Mat2R core = Mat2R::diag(RatFunc::x().pow(e1), RatFunc::x().pow(e2));
    P1TransitionData g(P * core * Q);
    auto s = split_p1(g);
    CHECK(s.e1 == e1);
    CHECK(s.e2 == e2);
    CHECK(verify_factorization(g, s));
  }
}

TEST_CASE("trivialize_affine single chart")
{
  AffineCocycle c({DistinguishedOpen{UniPoly(Rational(1))}},
                  {{Mat2R::identity()}});
  auto A = trivialize_affine(c);
  REQUIRE(A.size() == 1);
  CHECK(A[0] == Mat2R::identity());
}

TEST_CASE("trivialize_affine stated two-chart cases")
{
  DistinguishedOpen U0{UniPoly::x()};
  DistinguishedOpen U1{upoly({-1, 1})};

  // G_01 = [[1, 1/(x(x-1))],[0,1]].
  Mat2R G01 = Mat2R::identity();
  G01.a12 = RatFunc(upoly({1}), upoly({0, -1, 1}));
  auto c = AffineCocycle::from_base_transitions(
      {U0, U1}, {Mat2R::identity(), G01.inverse()});
  auto A = trivialize_affine(c);
  REQUIRE(A.size() == 2);
  CHECK(A[0].inverse() * G01 * A[1] == Mat2R::identity());
  CHECK(regular_and_invertible_on(U0, A[0]));
  CHECK(regular_and_invertible_on(U1, A[1]));

  // G_01 = diag(x, 1/(x-1)).
  Mat2R G2 = Mat2R::diag(RatFunc::x(), RatFunc(upoly({1}), upoly({-1, 1})));
  auto c2 = AffineCocycle::from_base_transitions(
      {U0, U1}, {Mat2R::identity(), G2.inverse()});
  auto A2 = trivialize_affine(c2);
  CHECK(A2[0].inverse() * G2 * A2[1] == Mat2R::identity());
  CHECK(regular_and_invertible_on(U0, A2[0]));
  CHECK(regular_and_invertible_on(U1, A2[1]));
}

TEST_CASE("affine cocycle validation errors")
{
  // Opens failing to cover the line.
  CHECK_THROWS_WITH(
      AffineCocycle({DistinguishedOpen{UniPoly::x()}}, {{Mat2R::identity()}}),
      "opens do not cover the affine line");

  // Cocycle law violation on a synthesized-then-perturbed table.
  DistinguishedOpen U0{UniPoly::x()};
  DistinguishedOpen U1{upoly({-1, 1})};
  Mat2R G01 = Mat2R::identity();
  G01.a12 = RatFunc(upoly({1}), upoly({0, -1, 1}));
  std::vector<std::vector<Mat2R>> table{{Mat2R::identity(), G01},
                                        {G01.inverse(), Mat2R::identity()}};
  table[0][1].a11 = RatFunc(Rational(2));
  CHECK_THROWS(AffineCocycle({U0, U1}, table));

  // Transition with a pole outside the overlap.
  Mat2R bad = Mat2R::identity();
  bad.a12 = RatFunc(upoly({1}), upoly({-2, 1}));  // pole at x = 2
  CHECK_THROWS(AffineCocycle::from_base_transitions({U0, U1},
                                                    {Mat2R::identity(), bad}));
}

TEST_CASE("trivialize_affine randomized property")
{
  Rng rng(20250810);
  std::vector<UniPoly> hs{UniPoly::x(), upoly({-1, 1}), upoly({-2, 1})};

  auto random_chart_matrix = [&](const UniPoly& h) {
    // Random element of GL(2, O(U)) as a product of elementary factors
    // whose off-diagonal entries may have poles on the complement of U.
    Mat2R m = Mat2R::identity();
    int parts = static_cast<int>(rng.integer(1, 4));
    for (int k = 0; k < parts; ++k) {
      switch (rng.integer(0, 3)) {
        case 0: {
          Mat2R e = Mat2R::identity();
          e.a12 = RatFunc(rng.poly(2), h.pow(static_cast<int>(rng.integer(0, 2))));
          m = m * e;
          break;
        }
        case 1: {
          Mat2R e = Mat2R::identity();
          e.a21 = RatFunc(rng.poly(2), h.pow(static_cast<int>(rng.integer(0, 2))));
          m = m * e;
          break;
        }
        case 2: {
          RatFunc u1 = RatFunc(rng.nonzero_rational()) *
                       RatFunc(h).pow(rng.integer(-1, 1));
          RatFunc u2 = RatFunc(rng.nonzero_rational()) *
                       RatFunc(h).pow(rng.integer(-1, 1));
          m = m * Mat2R::diag(u1, u2);
          break;
        }
        default:
          m = m * Mat2R::swap_J();
          break;
      }
    }
    return m;
  };

  for (int trial = 0; trial < 100; ++trial) {
    size_t n = 2 + (trial % 2);  // alternate 2- and 3-chart covers
    std::vector<DistinguishedOpen> opens;
    std::vector<Mat2R> C;
    for (size_t i = 0; i < n; ++i) {
      opens.emplace_back(hs[i]);
      C.push_back(random_chart_matrix(hs[i]));
    }
    std::vector<Mat2R> base;
    for (size_t i = 0; i < n; ++i) base.push_back(C[i] * C[0].inverse());
    auto cocycle = AffineCocycle::from_base_transitions(opens, base);
    auto A = trivialize_affine(cocycle);
    for (size_t i = 0; i < n; ++i) {
      CHECK(regular_and_invertible_on(opens[i], A[i]));
      for (size_t j = 0; j < n; ++j)
        CHECK(A[i].inverse() * cocycle.transition(i, j) * A[j] == Mat2R::identity());
    }
  }
}

#include "twocover/conic.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <thread>

namespace twocover::conic {

using arith::Exponents;
using arith::is_squarefree;
using arith::poly_gcd;
using arith::squarefree_part;

namespace {

Rational dot3(const std::array<Rational, 3>& a, const Point3& p)
{
  return a[0] * p[0] + a[1] * p[1] + a[2] * p[2];
}

bool points_independent(const Point3& P, const Point3& Q)
{
  return P[0] * Q[1] - P[1] * Q[0] != 0 || P[0] * Q[2] - P[2] * Q[0] != 0 ||
         P[1] * Q[2] - P[2] * Q[1] != 0;
}

Mat33 mat33_identity()
{
  Mat33 m{};
  for (int i = 0; i < 3; ++i) m[i][i] = 1;
  return m;
}

Rational det33(const Mat33& m)
{
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat33 inverse33(const Mat33& m)
{
  Rational d = det33(m);
  if (d == 0) throw std::invalid_argument("singular coordinate transformation");
  Mat33 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
      int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      r[j][i] = (m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]) / d;
    }
  return r;
}

Point3 apply33(const Mat33& m, const Point3& p)
{
  Point3 r{Rational(0), Rational(0), Rational(0)};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i] += m[i][j] * p[j];
  return r;
}

std::array<Rational, 3> apply_form(const std::array<Rational, 3>& form, const Mat33& m)
{
  // form(C y) as a form in y: row vector times matrix.
  std::array<Rational, 3> r{Rational(0), Rational(0), Rational(0)};
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) r[j] += form[i] * m[i][j];
  return r;
}

HomPoly3 default_conic()
{
  HomPoly3 x0 = HomPoly3::variable(0);
  return x0 * x0 + HomPoly3::variable(1) * HomPoly3::variable(2);
}

// Polar form B(p, q) with F(p + tq) = F(p) + 2B(p,q) t + F(q) t^2.
Rational polar(const HomPoly3& F, const Point3& p, const Point3& q)
{
  UniPoly r = F.restrict_to_param(p, q);
  return r.coeff(1) / 2;
}

std::optional<Point3> search_rational_point(const HomPoly3& F, long bound)
{
  for (long height = 0; height <= bound; ++height)
    for (long a = -height; a <= height; ++a)
      for (long b = -height; b <= height; ++b) {
        // Points scanned with last nonzero coordinate normalized to the
        // current height marker; covers all small projective points.
        Point3 candidates[3] = {
            {Rational(height), Rational(a), Rational(b)},
            {Rational(a), Rational(height), Rational(b)},
            {Rational(a), Rational(b), Rational(height)}};
        for (const Point3& p : candidates) {
          if (p[0] == 0 && p[1] == 0 && p[2] == 0) continue;
          if (F.eval(p) == 0) return p;
        }
      }
  return std::nullopt;
}

Point3 gradient(const HomPoly3& F, const Point3& p)
{
  // For the quadric F with matrix A the gradient at p is 2 A p.
  auto A = arith::conic_matrix(F);
  Point3 g{Rational(0), Rational(0), Rational(0)};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g[i] += 2 * A[i][j] * p[j];
  return g;
}

Point3 cross(const Point3& a, const Point3& b)
{
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

LineInP2 line_from_data(const std::array<Rational, 3>& form, const Point3& P,
                        const Point3& Q)
{
  if (form[0] == 0 && form[1] == 0 && form[2] == 0)
    throw std::invalid_argument("zero line form");
  if (!points_independent(P, Q))
    throw std::invalid_argument("line parameterization points are dependent");
  if (dot3(form, P) != 0 || dot3(form, Q) != 0)
    throw std::invalid_argument("parameterization points do not lie on the line");
  return {form, P, Q};
}

LineInP2 line_from_form(const std::array<Rational, 3>& form)
{
  int pivot = -1;
  for (int i = 0; i < 3; ++i)
    if (form[i] != 0) {
      pivot = i;
      break;
    }
  if (pivot < 0) throw std::invalid_argument("zero line form");
  int other[2];
  int n = 0;
  for (int i = 0; i < 3; ++i)
    if (i != pivot) other[n++] = i;
  Point3 P{Rational(0), Rational(0), Rational(0)};
  Point3 Q{Rational(0), Rational(0), Rational(0)};
  P[other[0]] = 1;
  P[pivot] = -form[other[0]] / form[pivot];
  Q[other[1]] = 1;
  Q[pivot] = -form[other[1]] / form[pivot];
  return line_from_data(form, P, Q);
}

ConicCover::ConicCover(const HomPoly3& F) : F_(F), F0_(default_conic())
{
  if (F.degree() != 2) throw std::invalid_argument("branch form must have degree 2");
  if (!arith::conic_is_smooth(F)) throw std::invalid_argument("singular conic");
  C_ = mat33_identity();
  Cinv_ = C_;
  if (F == F0_) return;

  standard_ = false;
  auto p = search_rational_point(F, 24);
  if (!p)
    throw std::invalid_argument(
        "no rational point found on the conic within the search bound");

  // Second rational point: the residual intersection of a line through p.
  std::optional<Point3> q;
  for (long a = -6; a <= 6 && !q; ++a)
    for (long b = -6; b <= 6 && !q; ++b)
      for (long c = -6; c <= 6 && !q; ++c) {
        Point3 d{Rational(a), Rational(b), Rational(c)};
        if ((d[0] == 0 && d[1] == 0 && d[2] == 0) || !points_independent(*p, d))
          continue;
        Rational fd = F.eval(d);
        Rational bp = polar(F, *p, d);
        if (fd == 0 || bp == 0) continue;
        Rational t = -2 * bp / fd;
        Point3 cand{(*p)[0] + t * d[0], (*p)[1] + t * d[1], (*p)[2] + t * d[2]};
        if (F.eval(cand) != 0) throw std::logic_error("chord point not on conic");
        q = cand;
      }
  if (!q) throw std::invalid_argument("could not find a second rational point");

  Point3 tp = gradient(F, *p);
  Point3 tq = gradient(F, *q);
  Point3 r = cross(tp, tq);

  // Columns r, p, q bring F to a00 y0^2 + a12 y1 y2; rescale the last
  // column to equalize the two coefficients.
  Mat33 C;
  for (int i = 0; i < 3; ++i) {
    C[i][0] = r[i];
    C[i][1] = (*p)[i];
    C[i][2] = (*q)[i];
  }
  if (det33(C) == 0) throw std::logic_error("degenerate frame from conic points");
  // Fy = a00 y0^2 + a12 y1 y2 by construction.
  HomPoly3 Fy = F.substitute(C);
  Rational a00 = Fy.coeff({2, 0, 0});
  Rational a12 = Fy.coeff({0, 1, 1});
  if (a00 == 0 || a12 == 0) throw std::logic_error("normal form reduction failed");
  for (int i = 0; i < 3; ++i) C[i][2] = C[i][2] * (a00 / a12);
  C_ = C;
  Cinv_ = inverse33(C);

  HomPoly3 check = F.substitute(C_);
  if (!(check == F0_ * a00)) throw std::logic_error("normal form reduction failed");
}

ConicCover ConicCover::standard() { return ConicCover(default_conic()); }

LineInP2 ConicCover::to_internal(const LineInP2& line) const
{
  if (standard_) return line;
  return line_from_data(apply_form(line.form, C_), apply33(Cinv_, line.P),
                        apply33(Cinv_, line.Q));
}

LineInP2 ConicCover::from_internal(const LineInP2& line) const
{
  if (standard_) return line;
  return line_from_data(apply_form(line.form, Cinv_), apply33(C_, line.P),
                        apply33(C_, line.Q));
}

P2Rep standard_conic_pair(const ConicCover& cover)
{
  (void)cover;  // the pair lives in the normalized coordinates
  P2Rep raw;
  size_t n = 3;
  raw.charts.reserve(n);
  for (int i = 0; i < 3; ++i) raw.charts.push_back(P2Chart{{HomPoly3::variable(i)}});
  raw.xi.assign(n, std::vector<P2Func>(n, P2Func::one()));
  raw.G.assign(n, std::vector<dc::Mat2<P2Func>>(n, dc::Mat2<P2Func>::identity()));
  raw.F.reserve(n);
  raw.M.reserve(n);
  HomPoly3 F0 = default_conic();
  for (int i = 0; i < 3; ++i) {
    raw.F.push_back(P2Func::on_chart(F0, i));
    raw.M.push_back({P2Func::coord_ratio(0, i), P2Func::coord_ratio(1, i),
                     P2Func::coord_ratio(2, i)});
    for (int j = 0; j < 3; ++j) raw.xi[i][j] = P2Func::coord_ratio(i, j);
  }
  std::vector<std::vector<P2Func>> p_choices{{P2Func::one()}, {}, {}};
  return dc::make_good(raw, p_choices);
}

P1Rep two_point_cover_pair()
{
  P1Rep raw;
  RatFunc x = RatFunc::x();
  raw.charts = {P1Chart{UniPoly(Rational(1)), true}, P1Chart{UniPoly::x(), false}};
  raw.xi = {{RatFunc::one(), x.inverse()}, {x, RatFunc::one()}};
  raw.F = {x, x.inverse()};
  raw.G.assign(2, std::vector<Mat2R>(2, Mat2R::identity()));
  raw.M = {{RatFunc::zero(), RatFunc::one(), x},
           {RatFunc::zero(), x.inverse(), RatFunc::one()}};
  return dc::make_good(raw, {{}, {}});
}

RestrictedLineBundle restrict_to_line(const P2Rep& rep, const LineInP2& line)
{
  size_t n = rep.size();
  std::vector<size_t> kept;
  std::vector<RestrictedLineBundle::LineChart> charts;
  for (size_t i = 0; i < n; ++i) {
    UniPoly h(Rational(1));
    bool inf_removed = false;
    bool empty = false;
    for (const HomPoly3& g : rep.charts[i].removed) {
      UniPoly gt = g.restrict_to_param(line.P, line.Q);
      if (gt.is_zero()) {
        empty = true;  // the line lies inside {g = 0}
        break;
      }
      if (!gt.is_constant()) h = h * gt;
      if (gt.degree() < g.degree()) inf_removed = true;
    }
    if (empty) continue;
    kept.push_back(i);
    charts.push_back({squarefree_part(h), inf_removed});
  }
  if (kept.empty()) throw std::invalid_argument("line misses every chart");

  // Covering check for the induced cover of the line.
  UniPoly common = charts[0].h;
  bool inf_covered = !charts[0].infinity_removed;
  for (size_t a = 1; a < kept.size(); ++a) {
    common = poly_gcd(common, charts[a].h);
    inf_covered = inf_covered || !charts[a].infinity_removed;
  }
  if (common.degree() > 0 || !inf_covered)
    throw std::invalid_argument("restricted charts do not cover the line");

  RestrictedLineBundle out;
  out.charts = charts;
  out.transitions.assign(kept.size(), std::vector<Mat2R>(kept.size()));
  for (size_t a = 0; a < kept.size(); ++a)
    for (size_t b = 0; b < kept.size(); ++b)
      out.transitions[a][b] = rep.G[kept[a]][kept[b]].map(
          [&](const P2Func& f) { return f.restrict(line.P, line.Q); });

  for (size_t a = 0; a < kept.size() && !out.two_chart; ++a) {
    if (!charts[a].h.is_constant() || !charts[a].infinity_removed) continue;
    for (size_t b = 0; b < kept.size(); ++b) {
      if (b == a) continue;
      bool only_zero = charts[b].h.is_constant() ||
                       charts[b].h == UniPoly::x();
      if (only_zero && !charts[b].infinity_removed) {
        out.two_chart = std::make_pair(a, b);
        break;
      }
    }
  }
  return out;
}

p1::AffineCocycle RestrictedLineBundle::affine_part() const
{
  std::vector<arith::DistinguishedOpen> opens;
  opens.reserve(charts.size());
  for (const auto& c : charts) opens.emplace_back(c.h);
  return p1::AffineCocycle(opens, transitions);
}

p1::SplittingType split_restricted(const RestrictedLineBundle& r)
{
  if (r.two_chart) {
    auto [a, b] = *r.two_chart;
    return p1::split_p1(p1::P1TransitionData(r.transitions[a][b]));
  }

  // Trivialize over both affine charts of the line and compare frames.
  p1::AffineCocycle on_t = r.affine_part();
  auto A = trivialize_affine(on_t);

  std::vector<arith::DistinguishedOpen> opens_s;
  std::vector<std::vector<Mat2R>> trans_s(r.charts.size(),
                                          std::vector<Mat2R>(r.charts.size()));
  for (const auto& c : r.charts) {
    // Punctures seen from the chart at infinity: reversed roots, plus
    // s = 0 when infinity itself is removed.
    UniPoly hs = c.h.reversed().monic();
    if (c.infinity_removed) hs = hs * UniPoly::x();
    opens_s.emplace_back(squarefree_part(hs));
  }
  for (size_t i = 0; i < r.charts.size(); ++i)
    for (size_t j = 0; j < r.charts.size(); ++j)
      trans_s[i][j] = r.transitions[i][j].map(
          [](const RatFunc& f) { return f.subst_inverse(); });
  p1::AffineCocycle on_s(opens_s, trans_s);
  auto B = trivialize_affine(on_s);

  std::optional<Mat2R> G;
  for (size_t i = 0; i < r.charts.size(); ++i) {
    Mat2R Bi_t = B[i].map([](const RatFunc& f) { return f.subst_inverse(); });
    Mat2R cand = A[i].inverse() * Bi_t;
    if (!G)
      G = cand;
    else if (!(*G == cand))
      throw std::logic_error("global frames disagree between charts");
  }
  return p1::split_p1(p1::P1TransitionData(*G));
}

LineClass classify_line(const ConicCover& cover, const LineInP2& line)
{
  LineInP2 l = cover.to_internal(line);
  const HomPoly3& F0 = cover.normal_form();
  Rational fp = F0.eval(l.P);
  Rational fq = F0.eval(l.Q);
  Rational b = polar(F0, l.P, l.Q);
  Rational disc = b * b - fp * fq;
  if (disc == 0) return LineClass::tangent;
  return LineClass::transversal;
}

namespace {

bool line_contains(const LineInP2& line, const Point3& p)
{
  return dot3(line.form, p) == 0;
}

// Parameterization adapted to the two-chart route: P on {x2 = 0}, Q on
// {x1 = 0}; valid when the line avoids [1:0:0].
std::optional<LineInP2> adapt_for_two_charts(const LineInP2& line)
{
  const auto& f = line.form;
  if (f[0] == 0) return std::nullopt;  // the line passes through [1:0:0]
  Point3 P{f[1], -f[0], Rational(0)};
  Point3 Q{f[2], Rational(0), -f[0]};
  return line_from_data(f, P, Q);
}

// The projective transformation from the tangent-line argument:
// x0 = (y1+y2)/2, x1 = y0-(y1-y2)/2, x2 = y0+(y1-y2)/2.  It preserves
// x0^2 + x1 x2.
Mat33 printed_transformation()
{
  Mat33 m;
  m[0] = {Rational(0), Rational(1, 2), Rational(1, 2)};
  m[1] = {Rational(1), Rational(-1, 2), Rational(1, 2)};
  m[2] = {Rational(1), Rational(1, 2), Rational(-1, 2)};
  return m;
}

p1::SplittingType split_on_internal_line(const P2Rep& rep_n, const LineInP2& line)
{
  if (auto adapted = adapt_for_two_charts(line)) {
    auto restricted = restrict_to_line(rep_n, *adapted);
    if (restricted.two_chart) return split_restricted(restricted);
  }
  // Transform coordinates (the branch form is preserved) and retry.
  Mat33 T = printed_transformation();
  std::array<Rational, 3> tf = apply_form(line.form, T);
  if (tf[0] != 0) {
    LineInP2 moved = line_from_form(tf);
    if (auto adapted = adapt_for_two_charts(moved)) {
      auto restricted = restrict_to_line(rep_n, *adapted);
      if (restricted.two_chart) return split_restricted(restricted);
    }
  }
  // General route through both affine trivializations.
  return split_restricted(restrict_to_line(rep_n, line));
}

}  // namespace

p1::SplittingType splitting_on_line(const ConicCover& cover, long n,
                                    const LineInP2& line)
{
  P2Rep pair = standard_conic_pair(cover);
  P2Rep rep_n = dc::group_law<P2Func, P2Chart>({pair}, {n});
  return split_on_internal_line(rep_n, cover.to_internal(line));
}

std::vector<LineInP2> tangent_lines(const ConicCover& cover,
                                    const std::vector<Rational>& params)
{
  std::vector<LineInP2> out;
  out.reserve(params.size());
  for (const Rational& b : params) {
    if (b == 0) throw std::invalid_argument("tangent parameter b must be nonzero");
    Rational c = Rational(-1) / (4 * b);
    LineInP2 internal = line_from_form({Rational(1), c, b});
    out.push_back(cover.from_internal(internal));
  }
  return out;
}

std::array<LineInP2, 2> coordinate_tangent_lines(const ConicCover& cover)
{
  LineInP2 l1 = line_from_form({Rational(0), Rational(1), Rational(0)});
  LineInP2 l2 = line_from_form({Rational(0), Rational(0), Rational(1)});
  return {cover.from_internal(l1), cover.from_internal(l2)};
}

std::vector<LineInP2> random_transversal_lines(const ConicCover& cover, int count,
                                               uint64_t seed)
{
  std::mt19937_64 eng(seed);
  std::uniform_int_distribution<long> coeff(-9, 9);
  std::vector<LineInP2> out;
  std::vector<std::array<Rational, 3>> seen;
  while (static_cast<int>(out.size()) < count) {
    std::array<Rational, 3> f{Rational(coeff(eng)), Rational(coeff(eng)),
                              Rational(coeff(eng))};
    if (f[0] == 0 && f[1] == 0 && f[2] == 0) continue;
    LineInP2 internal = line_from_form(f);
    LineInP2 user = cover.from_internal(internal);
    if (classify_line(cover, user) != LineClass::transversal) continue;
    bool dup = false;
    for (const auto& g : seen) {
      // Projective duplicate test: proportional forms.
      if (g[0] * f[1] == g[1] * f[0] && g[0] * f[2] == g[2] * f[0] &&
          g[1] * f[2] == g[2] * f[1])
        dup = true;
    }
    if (dup) continue;
    seen.push_back(f);
    out.push_back(user);
  }
  return out;
}

std::vector<ScanRow> jumping_scan(const ConicCover& cover, long n,
                                  const std::vector<LineInP2>& lines, int jobs)
{
  if (lines.empty()) throw std::invalid_argument("jumping_scan needs lines");
  P2Rep pair = standard_conic_pair(cover);
  P2Rep rep_n = dc::group_law<P2Func, P2Chart>({pair}, {n});

  std::vector<ScanRow> rows(lines.size());
  size_t total = lines.size();
  if (jobs < 1) jobs = 1;
  size_t workers = std::min<size_t>(jobs, total);

  auto work = [&](size_t start) {
    for (size_t i = start; i < total; i += workers) {
      rows[i].line = lines[i];
      rows[i].type = split_on_internal_line(rep_n, cover.to_internal(lines[i]));
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          work(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  // Modal splitting type of the batch; ties favour the balanced type
  // (e1 can only jump upward on special lines).
  std::map<std::pair<long, long>, int> counts;
  for (const auto& row : rows) ++counts[{row.type.e1, row.type.e2}];
  std::pair<long, long> mode = counts.begin()->first;
  int best = 0;
  for (const auto& [type, count] : counts)
    if (count > best || (count == best && type.first < mode.first)) {
      mode = type;
      best = count;
    }
  for (auto& row : rows)
    row.is_jumping = std::make_pair(row.type.e1, row.type.e2) != mode;
  return rows;
}

}  // namespace twocover::conic

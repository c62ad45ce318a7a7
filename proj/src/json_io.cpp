#include "twocover/json_io.hpp"

#include <sstream>

namespace twocover::cli {

using arith::HomPoly3;
using arith::Mat2;
using arith::P2Func;
using arith::Rational;
using arith::RatFunc;
using arith::UniPoly;

json to_json(const Rational& q) { return arith::rational_to_string(q); }

json to_json(const UniPoly& p)
{
  json terms = json::array();
  for (int k = 0; k <= p.degree(); ++k) {
    if (p.coeff(k) == 0) continue;
    terms.push_back({{"exponents", json::array({k})}, {"coeff", to_json(p.coeff(k))}});
  }
  return terms;
}

json to_json(const HomPoly3& p)
{
  json terms = json::array();
  for (const auto& [e, c] : p.terms())
    terms.push_back(
        {{"exponents", json::array({e[0], e[1], e[2]})}, {"coeff", to_json(c)}});
  return terms;
}

json to_json(const RatFunc& f)
{
  return {{"num", to_json(f.num())}, {"den", to_json(f.den())}};
}

json to_json(const P2Func& f)
{
  return {{"num", to_json(f.num())}, {"den", to_json(f.den())}};
}

template <class K>
static json mat_to_json(const Mat2<K>& m)
{
  return json::array({json::array({to_json(m.a11), to_json(m.a12)}),
                      json::array({to_json(m.a21), to_json(m.a22)})});
}

json to_json(const Mat2<RatFunc>& m) { return mat_to_json(m); }
json to_json(const Mat2<P2Func>& m) { return mat_to_json(m); }

json to_json(const p1::SplittingType& s)
{
  return {{"e", json::array({s.e1, s.e2})},
          {"Ax", to_json(s.A_x)},
          {"Ay", to_json(s.A_y)}};
}

json to_json(const conic::LineInP2& line)
{
  auto point = [](const arith::Point3& p) {
    return json::array({to_json(p[0]), to_json(p[1]), to_json(p[2])});
  };
  return {{"form",
           json::array({to_json(line.form[0]), to_json(line.form[1]),
                        to_json(line.form[2])})},
          {"P", point(line.P)},
          {"Q", point(line.Q)}};
}

json to_json(const conic::SectionBasis& basis)
{
  json arr = json::array();
  for (const auto& e : basis.basis)
    arr.push_back({{"S1", to_json(e.S1)}, {"S2", to_json(e.S2)}, {"bound", e.bound}});
  return {{"bidegree", json::array({basis.k1, basis.k2})},
          {"degree_bound", basis.degree_bound},
          {"dimension", basis.dimension},
          {"saturated", basis.saturated},
          {"basis", arr}};
}

json to_json(const conic::RestrictedLineBundle& r)
{
  if (r.two_chart) {
    auto [a, b] = *r.two_chart;
    return {{"kind", "p1"}, {"matrix", to_json(r.transitions[a][b])}};
  }
  json charts = json::array();
  for (const auto& c : r.charts)
    charts.push_back(
        {{"h", to_json(c.h)}, {"infinity_removed", c.infinity_removed}});
  json table = json::array();
  for (const auto& row : r.transitions) {
    json jrow = json::array();
    for (const auto& m : row) jrow.push_back(to_json(m));
    table.push_back(jrow);
  }
  return {{"kind", "affine"}, {"charts", charts}, {"transitions", table}};
}

template <class K, class C, class ChartFn, class EntryFn>
static json rep_to_json(const dc::PairRep<K, C>& rep, ChartFn chart_fn, EntryFn entry)
{
  json charts = json::array();
  for (const auto& c : rep.charts) charts.push_back(chart_fn(c));
  json xi = json::array(), G = json::array(), F = json::array(), M = json::array();
  for (size_t i = 0; i < rep.size(); ++i) {
    json xi_row = json::array(), g_row = json::array();
    for (size_t j = 0; j < rep.size(); ++j) {
      xi_row.push_back(entry(rep.xi[i][j]));
      g_row.push_back(mat_to_json(rep.G[i][j]));
    }
    xi.push_back(xi_row);
    G.push_back(g_row);
    F.push_back(entry(rep.F[i]));
    M.push_back({{"a0", entry(rep.M[i].a0)},
                 {"a1", entry(rep.M[i].a1)},
                 {"a2", entry(rep.M[i].a2)}});
  }
  return {{"charts", charts}, {"xi", xi},           {"F", F},
          {"G", G},           {"M", M},
          {"good", rep.is_good},                    {"normal", rep.is_normal}};
}

json to_json(const conic::P2Rep& rep)
{
  return rep_to_json(
      rep,
      [](const arith::P2Chart& c) {
        json removed = json::array();
        for (const auto& g : c.removed) removed.push_back(to_json(g));
        return json{{"removed", removed}};
      },
      [](const P2Func& f) { return to_json(f); });
}

json to_json(const conic::P1Rep& rep)
{
  return rep_to_json(
      rep,
      [](const arith::P1Chart& c) {
        return json{{"h", to_json(c.h)}, {"infinity_removed", c.infinity_removed}};
      },
      [](const RatFunc& f) { return to_json(f); });
}

// --- input parsing ---
// Polynomial values are accepted either as expression strings or as
// the coefficient-map arrays the tool itself emits.

namespace {

UniPoly unipoly_from_json(const json& j)
{
  if (j.is_string()) return parse_unipoly(j.get<std::string>());
  if (j.is_array()) {
    int deg = 0;
    for (const auto& t : j) {
      if (!t.is_object() || !t.contains("exponents") || !t.contains("coeff"))
        throw InputError("polynomial term must be {exponents, coeff}");
      deg = std::max(deg, t.at("exponents").at(0).get<int>());
    }
    std::vector<Rational> c(j.empty() ? 0 : deg + 1, Rational(0));
    for (const auto& t : j)
      c[t.at("exponents").at(0).get<int>()] =
          arith::parse_rational(t.at("coeff").get<std::string>());
    return UniPoly(std::move(c));
  }
  throw InputError("polynomial must be a string or a coefficient map");
}

HomPoly3 hompoly3_from_json(const json& j)
{
  if (j.is_string()) return parse_hompoly3(j.get<std::string>());
  if (j.is_array()) {
    if (j.empty()) return HomPoly3();
    std::map<arith::Exponents, Rational> terms;
    int deg = -1;
    for (const auto& t : j) {
      if (!t.is_object() || !t.contains("exponents") || !t.contains("coeff"))
        throw InputError("polynomial term must be {exponents, coeff}");
      const json& e = t.at("exponents");
      if (!e.is_array() || e.size() != 3)
        throw InputError("form terms need three exponents");
      arith::Exponents exp{e[0].get<int>(), e[1].get<int>(), e[2].get<int>()};
      int d = exp[0] + exp[1] + exp[2];
      if (deg < 0) deg = d;
      if (d != deg) throw InputError("form terms are not homogeneous");
      terms[exp] = arith::parse_rational(t.at("coeff").get<std::string>());
    }
    return HomPoly3(deg, std::move(terms));
  }
  throw InputError("form must be a string or a coefficient map");
}

}  // namespace

RatFunc ratfunc_from_json(const json& j)
{
  if (j.is_object() && j.contains("num"))
    return RatFunc(unipoly_from_json(j.at("num")), unipoly_from_json(j.at("den")));
  return RatFunc(unipoly_from_json(j));
}

P2Func p2func_from_json(const json& j)
{
  if (j.is_object() && j.contains("num")) {
    HomPoly3 num = hompoly3_from_json(j.at("num"));
    HomPoly3 den = hompoly3_from_json(j.at("den"));
    if (num.is_zero()) return P2Func::zero();
    return P2Func(num, den);
  }
  HomPoly3 h = hompoly3_from_json(j);
  if (h.is_zero()) return P2Func::zero();
  if (h.degree() != 0) throw InputError("chart function needs a denominator");
  return P2Func(h, HomPoly3::constant(Rational(1)));
}

template <class K, class EntryFn>
static Mat2<K> mat_from_json(const json& j, EntryFn entry)
{
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 ||
      !j[1].is_array() || j[1].size() != 2)
    throw InputError("matrix must be a 2x2 array");
  return {entry(j[0][0]), entry(j[0][1]), entry(j[1][0]), entry(j[1][1])};
}

Mat2<RatFunc> mat2r_from_json(const json& j)
{
  return mat_from_json<RatFunc>(j, ratfunc_from_json);
}

Mat2<P2Func> mat2p_from_json(const json& j)
{
  return mat_from_json<P2Func>(j, p2func_from_json);
}

conic::LineInP2 line_from_json(const json& j)
{
  if (!j.is_object() || !j.contains("form"))
    throw InputError("line needs a 'form' array");
  const json& f = j.at("form");
  if (!f.is_array() || f.size() != 3) throw InputError("line form must have 3 entries");
  std::array<Rational, 3> form;
  for (int i = 0; i < 3; ++i)
    form[i] = arith::parse_rational(f[i].is_string() ? f[i].get<std::string>()
                                                     : f[i].dump());
  if (j.contains("P") || j.contains("Q")) {
    auto point = [](const json& p) {
      if (!p.is_array() || p.size() != 3) throw InputError("point must have 3 entries");
      arith::Point3 out;
      for (int i = 0; i < 3; ++i)
        out[i] = arith::parse_rational(p[i].is_string() ? p[i].get<std::string>()
                                                        : p[i].dump());
      return out;
    };
    return conic::line_from_data(form, point(j.at("P")), point(j.at("Q")));
  }
  return conic::line_from_form(form);
}

template <class K, class C, class ChartFn, class EntryFn>
static dc::PairRep<K, C> rep_from_json(const json& j, ChartFn chart_fn, EntryFn entry)
{
  dc::PairRep<K, C> rep;
  for (const auto& c : j.at("charts")) rep.charts.push_back(chart_fn(c));
  size_t n = rep.charts.size();
  auto table = [&](const json& t) {
    if (!t.is_array() || t.size() != n) throw InputError("table size mismatch");
    return t;
  };
  for (const auto& row : table(j.at("xi"))) {
    std::vector<K> r;
    for (const auto& e : table(row)) r.push_back(entry(e));
    rep.xi.push_back(std::move(r));
  }
  for (const auto& e : table(j.at("F"))) rep.F.push_back(entry(e));
  for (const auto& row : table(j.at("G"))) {
    std::vector<Mat2<K>> r;
    for (const auto& e : table(row)) r.push_back(mat_from_json<K>(e, entry));
    rep.G.push_back(std::move(r));
  }
  for (const auto& m : table(j.at("M")))
    rep.M.push_back({entry(m.at("a0")), entry(m.at("a1")), entry(m.at("a2"))});
  rep.is_good = j.value("good", false);
  rep.is_normal = j.value("normal", false);
  return rep;
}

conic::P2Rep p2rep_from_json(const json& j)
{
  return rep_from_json<P2Func, arith::P2Chart>(
      j,
      [](const json& c) {
        arith::P2Chart chart;
        for (const auto& g : c.at("removed"))
          chart.removed.push_back(hompoly3_from_json(g));
        return chart;
      },
      p2func_from_json);
}

conic::P1Rep p1rep_from_json(const json& j)
{
  return rep_from_json<RatFunc, arith::P1Chart>(
      j,
      [](const json& c) {
        arith::P1Chart chart;
        chart.h = unipoly_from_json(c.at("h"));
        chart.infinity_removed = c.value("infinity_removed", false);
        return chart;
      },
      ratfunc_from_json);
}

// --- text rendering ---

namespace {

// Recognizes a nonempty coefficient-map array and rebuilds the
// canonical expression string ("3/2*x^2 - x + 7").
std::optional<std::string> polynomial_string(const json& j)
{
  if (!j.is_array() || j.empty()) return std::nullopt;
  size_t nvars = 0;
  for (const auto& t : j) {
    if (!t.is_object() || t.size() != 2 || !t.contains("coeff") ||
        !t.contains("exponents"))
      return std::nullopt;
    const json& e = t.at("exponents");
    if (!e.is_array() || (e.size() != 1 && e.size() != 3)) return std::nullopt;
    if (nvars == 0) nvars = e.size();
    if (e.size() != nvars) return std::nullopt;
  }
  if (nvars == 1) {
    int deg = 0;
    for (const auto& t : j) deg = std::max(deg, t.at("exponents")[0].get<int>());
    std::vector<Rational> c(deg + 1, Rational(0));
    for (const auto& t : j)
      c[t.at("exponents")[0].get<int>()] =
          arith::parse_rational(t.at("coeff").get<std::string>());
    return UniPoly(std::move(c)).to_string();
  }
  std::map<arith::Exponents, Rational> terms;
  int deg = -1;
  for (const auto& t : j) {
    const json& e = t.at("exponents");
    arith::Exponents exp{e[0].get<int>(), e[1].get<int>(), e[2].get<int>()};
    int d = exp[0] + exp[1] + exp[2];
    if (deg < 0) deg = d;
    if (d != deg) return std::nullopt;
    terms[exp] = arith::parse_rational(t.at("coeff").get<std::string>());
  }
  return HomPoly3(deg, std::move(terms)).to_string();
}

std::optional<std::string> fraction_string(const json& j)
{
  if (!j.is_object() || j.size() != 2 || !j.contains("num") || !j.contains("den"))
    return std::nullopt;
  auto render_part = [](const json& p) -> std::optional<std::string> {
    if (p.is_array() && p.empty()) return std::string("0");
    return polynomial_string(p);
  };
  auto num = render_part(j.at("num"));
  auto den = render_part(j.at("den"));
  if (!num || !den) return std::nullopt;
  if (*den == "1") return *num;
  return "(" + *num + ")/(" + *den + ")";
}

std::optional<std::string> leaf_string(const json& j)
{
  if (auto f = fraction_string(j)) return f;
  if (auto p = polynomial_string(j)) return p;
  return std::nullopt;
}

void render(const json& j, std::ostream& os, int indent)
{
  std::string pad(indent * 2, ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      os << pad << it.key() << ":";
      if (auto s = leaf_string(it.value())) {
        os << " " << *s << "\n";
      } else if (it.value().is_object() ||
                 (it.value().is_array() && !it.value().empty() &&
                  !it.value()[0].is_primitive())) {
        os << "\n";
        render(it.value(), os, indent + 1);
      } else {
        os << " " << it.value().dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (auto s = leaf_string(e)) {
        os << pad << "- " << *s << "\n";
      } else if (e.is_primitive()) {
        os << pad << "- " << e.dump() << "\n";
      } else {
        os << pad << "-\n";
        render(e, os, indent + 1);
      }
    }
  } else {
    os << pad << j.dump() << "\n";
  }
}

}  // namespace

std::string render_text(const json& j)
{
  std::ostringstream os;
  render(j, os, 0);
  return os.str();
}

}  // namespace twocover::cli

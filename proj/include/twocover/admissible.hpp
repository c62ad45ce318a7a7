#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "twocover/mat2.hpp"

namespace twocover::dc {

using arith::Mat2;

// The morphism matrix M_i = [[a0, a2], [a1, -a0]] of one chart.
template <class K>
struct MTriple {
  K a0, a1, a2;

  Mat2<K> matrix() const { return {a0, a2, a1, K::zero() - a0}; }
  MTriple negated() const { return {K::zero() - a0, K::zero() - a1, K::zero() - a2}; }
};

// Chart-level representation of an admissible pair: transitions G_ij of
// the rank-2 bundle, the twist cocycle xi_ij of O(-L), branch functions
// F_i and morphism triples (a_i0, a_i1, a_i2) with a0^2 + a1 a2 = F.
template <class K, class C>
struct PairRep {
  std::vector<C> charts;
  std::vector<std::vector<K>> xi;
  std::vector<K> F;
  std::vector<std::vector<Mat2<K>>> G;
  std::vector<MTriple<K>> M;
  bool is_good = false;
  bool is_normal = false;

  size_t size() const { return charts.size(); }
  Mat2<K> normal_m(size_t i) const
  {
    return {K::zero(), F[i], K::one(), K::zero()};
  }
  Mat2<K> structure_transition(size_t i, size_t j) const
  {
    return Mat2<K>::diag(K::one(), xi[i][j]);
  }
};

struct ValidationReport {
  std::vector<std::string> defects;
  bool valid() const { return defects.empty(); }
  std::string to_string() const
  {
    if (defects.empty()) return "valid";
    std::ostringstream os;
    for (const auto& d : defects) os << d << "\n";
    return os.str();
  }
};

template <class K, class C>
ValidationReport validate_admissible(const PairRep<K, C>& rep)
{
  ValidationReport report;
  auto fail = [&](const std::string& what) { report.defects.push_back(what); };
  size_t n = rep.size();
  if (rep.xi.size() != n || rep.F.size() != n || rep.G.size() != n || rep.M.size() != n) {
    fail("table sizes do not match the chart count");
    return report;
  }
  for (size_t i = 0; i < n; ++i)
    if (rep.xi[i].size() != n || rep.G[i].size() != n) {
      fail("table sizes do not match the chart count");
      return report;
    }

  auto idx2 = [](size_t i, size_t j) {
    std::ostringstream os;
    os << "(" << i << "," << j << ")";
    return os.str();
  };

  for (size_t i = 0; i < n; ++i) {
    if (!(rep.xi[i][i] == K::one())) fail("xi_ii != 1 at chart " + std::to_string(i));
    if (!(rep.G[i][i] == Mat2<K>::identity()))
      fail("G_ii != identity at chart " + std::to_string(i));
    K lhs = rep.M[i].a0 * rep.M[i].a0 + rep.M[i].a1 * rep.M[i].a2;
    if (!(lhs == rep.F[i]))
      fail("a0^2 + a1*a2 != F at chart " + std::to_string(i));
  }

  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      C over = overlap(rep.charts[i], rep.charts[j]);
      if (rep.xi[i][j].is_zero() || !over.is_unit(rep.xi[i][j]))
        fail("xi not a unit on overlap " + idx2(i, j));
      K det = rep.G[i][j].det();
      if (det.is_zero() || !over.is_unit(det))
        fail("det G not invertible on overlap " + idx2(i, j));
      for (size_t k = 0; k < n; ++k) {
        if (!(rep.xi[i][k] == rep.xi[i][j] * rep.xi[j][k]))
          fail("xi cocycle law fails at (" + std::to_string(i) + "," +
               std::to_string(j) + "," + std::to_string(k) + ")");
        if (!(rep.G[i][k] == rep.G[i][j] * rep.G[j][k]))
          fail("G cocycle law fails at (" + std::to_string(i) + "," +
               std::to_string(j) + "," + std::to_string(k) + ")");
      }
      if (!det.is_zero()) {
        Mat2<K> compat = rep.G[i][j].inverse() * rep.M[i].matrix() * rep.G[i][j];
        compat = compat * rep.xi[i][j];
        if (!(compat == rep.M[j].matrix()))
          fail("M_j != xi G^-1 M_i G on overlap " + idx2(i, j));
      }
    }

  if (rep.is_good)
    for (size_t i = 0; i < n; ++i)
      if (rep.M[i].a1.is_zero() || !rep.charts[i].is_unit(rep.M[i].a1))
        fail("good flag set but a1 is not a unit on chart " + std::to_string(i));
  if (rep.is_normal)
    for (size_t i = 0; i < n; ++i)
      if (!rep.M[i].a0.is_zero() || !(rep.M[i].a1 == K::one()) ||
          !(rep.M[i].a2 == rep.F[i]))
        fail("normal flag set but M != [[0,F],[1,0]] at chart " + std::to_string(i));
  return report;
}

template <class K, class C>
void require_valid(const PairRep<K, C>& rep, const char* what)
{
  auto report = validate_admissible(rep);
  if (!report.valid())
    throw std::invalid_argument(std::string(what) + ": " + report.to_string());
}

// Good representation via the refinement of Lemma-style chart matrices:
// chart (i,1) keeps M_i when a_i1 is a unit, chart (i,2) conjugates by
// the swap, and each p in p_choices[i] contributes the chart cut out by
// a_i1 - 2p a_i0 - p^2 a_i2 != 0 via conjugation with [[1,0],[p,1]].
template <class K, class C>
PairRep<K, C> make_good(const PairRep<K, C>& rep,
                        const std::vector<std::vector<K>>& p_choices)
{
  require_valid(rep, "make_good input");
  if (p_choices.size() != rep.size())
    throw std::invalid_argument("one p-list per chart required");

  struct NewChart {
    size_t base;
    Mat2<K> A;
    C chart;
  };
  std::vector<NewChart> charts;
  for (size_t i = 0; i < rep.size(); ++i) {
    const auto& tri = rep.M[i];
    if (p_choices[i].empty()) {
      if (!tri.a1.is_zero() && rep.charts[i].is_unit(tri.a1)) {
        charts.push_back({i, Mat2<K>::identity(), rep.charts[i]});
      } else if (!tri.a2.is_zero() && rep.charts[i].is_unit(tri.a2)) {
        charts.push_back({i, Mat2<K>::swap_J(), rep.charts[i]});
      } else {
        throw std::invalid_argument("cannot certify covering");
      }
      continue;
    }
    for (const K& p : p_choices[i]) {
      Mat2<K> A = Mat2<K>::identity();
      A.a21 = p;
      K a1_star = tri.a1 - (p + p) * tri.a0 - p * p * tri.a2;
      if (a1_star.is_zero())
        throw std::invalid_argument("cannot certify covering");
      charts.push_back({i, A, refine(rep.charts[i], a1_star)});
    }
  }

  size_t m = charts.size();
  PairRep<K, C> out;
  out.charts.reserve(m);
  for (const auto& nc : charts) out.charts.push_back(nc.chart);
  out.F.reserve(m);
  out.M.reserve(m);
  out.xi.assign(m, std::vector<K>(m, K::one()));
  out.G.assign(m, std::vector<Mat2<K>>(m, Mat2<K>::identity()));
  for (size_t a = 0; a < m; ++a) {
    size_t i = charts[a].base;
    out.F.push_back(rep.F[i]);
    Mat2<K> Ms = charts[a].A.inverse() * rep.M[i].matrix() * charts[a].A;
    out.M.push_back({Ms.a11, Ms.a21, Ms.a12});
    for (size_t b = 0; b < m; ++b) {
      size_t j = charts[b].base;
      out.xi[a][b] = rep.xi[i][j];
      out.G[a][b] = charts[a].A.inverse() * rep.G[i][j] * charts[b].A;
    }
  }
  out.is_good = true;
  out.is_normal = false;
  require_valid(out, "make_good output");
  return out;
}

template <class K, class C>
Mat2<K> k_plus(const PairRep<K, C>& rep, size_t i, size_t j)
{
  if (!rep.is_good) throw std::invalid_argument("k_plus needs a good representation");
  const auto& tri = rep.M[i];
  if (tri.a1.is_zero()) throw std::invalid_argument("a_i1 not invertible");
  const Mat2<K>& g = rep.G[i][j];
  K u = tri.a1 * g.a11 - tri.a0 * g.a21;
  Mat2<K> num = Mat2<K>::identity() * u + rep.normal_m(i) * g.a21;
  return num * tri.a1.inverse();
}

template <class K, class C>
Mat2<K> k_minus(const PairRep<K, C>& rep, size_t i, size_t j)
{
  if (!rep.is_good) throw std::invalid_argument("k_minus needs a good representation");
  const auto& tri = rep.M[i];
  if (tri.a1.is_zero()) throw std::invalid_argument("a_i1 not invertible");
  const Mat2<K>& g = rep.G[i][j];
  K det = g.det();
  if (det.is_zero()) throw std::invalid_argument("det G_ij not invertible");
  K u = tri.a1 * g.a11 - tri.a0 * g.a21;
  Mat2<K> num = Mat2<K>::identity() * u - rep.normal_m(i) * g.a21;
  return num * (rep.xi[i][j] / (tri.a1 * det));
}

// Transition functions of the tensor power product: the normal
// representation with G^[n]_ij = prod_k K_ij^(k)(n_k)^|n_k| * G^0_ij.
template <class K, class C>
PairRep<K, C> group_law(const std::vector<PairRep<K, C>>& reps,
                        const std::vector<long>& exponents)
{
  if (reps.empty()) throw std::invalid_argument("no pairs given");
  if (reps.size() != exponents.size())
    throw std::invalid_argument("one exponent per pair required");
  const auto& base = reps.front();
  for (const auto& r : reps) {
    if (!r.is_good) throw std::invalid_argument("group_law needs good representations");
    if (!(r.charts == base.charts) || !(r.xi == base.xi) || !(r.F == base.F))
      throw std::invalid_argument("pairs do not share cover, twist and branch data");
  }

  size_t n = base.size();
  PairRep<K, C> out;
  out.charts = base.charts;
  out.xi = base.xi;
  out.F = base.F;
  out.G.assign(n, std::vector<Mat2<K>>(n, Mat2<K>::identity()));
  out.M.reserve(n);
  for (size_t i = 0; i < n; ++i) out.M.push_back({K::zero(), K::one(), base.F[i]});
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Mat2<K> acc = Mat2<K>::identity();
      for (size_t k = 0; k < reps.size(); ++k) {
        long nk = exponents[k];
        if (nk == 0) continue;
        Mat2<K> km = nk > 0 ? k_plus(reps[k], i, j) : k_minus(reps[k], i, j);
        acc = acc * km.pow(nk > 0 ? nk : -nk);
      }
      out.G[i][j] = acc * base.structure_transition(i, j);
    }
  out.is_good = true;
  out.is_normal = true;
  return out;
}

template <class K, class C>
PairRep<K, C> inverse_pair(const PairRep<K, C>& rep)
{
  PairRep<K, C> out = rep;
  size_t n = rep.size();
  for (size_t i = 0; i < n; ++i) {
    out.M[i] = rep.M[i].negated();
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      K det = rep.G[i][j].det();
      if (det.is_zero()) throw std::invalid_argument("det G_ij not invertible");
      out.G[i][j] = rep.G[i][j] * (rep.xi[i][j] / det);
    }
  }
  out.is_normal = false;
  return out;
}

template <class K, class C>
PairRep<K, C> conjugate_pair(const PairRep<K, C>& rep)
{
  PairRep<K, C> out = rep;
  for (size_t i = 0; i < rep.size(); ++i) out.M[i] = rep.M[i].negated();
  out.is_normal = false;
  return out;
}

// Pair of the ramification divisor: transitions diag(xi^-1, 1) with the
// normal morphism matrix.
template <class K, class C>
PairRep<K, C> ramification_pair(const std::vector<C>& charts,
                                const std::vector<std::vector<K>>& xi,
                                const std::vector<K>& F)
{
  size_t n = charts.size();
  if (xi.size() != n || F.size() != n)
    throw std::invalid_argument("table sizes do not match the chart count");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (xi[i][j].is_zero()) throw std::invalid_argument("xi must be nonzero");
      for (size_t k = 0; k < n; ++k)
        if (!(xi[i][k] == xi[i][j] * xi[j][k]))
          throw std::invalid_argument("xi is not a cocycle");
      if (!(F[j] == xi[i][j] * xi[i][j] * F[i]))
        throw std::invalid_argument("branch functions incompatible with the twist");
    }
  PairRep<K, C> out;
  out.charts = charts;
  out.xi = xi;
  out.F = F;
  out.G.assign(n, std::vector<Mat2<K>>(n, Mat2<K>::identity()));
  out.M.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    out.M.push_back({K::zero(), K::one(), F[i]});
    for (size_t j = 0; j < n; ++j)
      out.G[i][j] = Mat2<K>::diag(xi[i][j].inverse(), K::one());
  }
  out.is_good = true;
  out.is_normal = true;
  require_valid(out, "ramification pair");
  return out;
}

template <class K>
struct SectionNormResult {
  std::vector<K> h;
  bool gluing_verified = false;
};

// Per-chart section data (x_i, y_i) of a global section x_i + y_i t_i.
template <class K, class C>
SectionNormResult<K> section_norm(const PairRep<K, C>& rep,
                                  const std::vector<std::pair<K, K>>& sections)
{
  if (!rep.is_good) throw std::invalid_argument("section_norm needs a good representation");
  size_t n = rep.size();
  if (sections.size() != n)
    throw std::invalid_argument("one section pair per chart required");

  // The coordinate vector of the section in chart i is
  // (x_i + a_i0 y_i, a_i1 y_i); it must transform by G_ij.
  std::vector<std::pair<K, K>> vec(n);
  for (size_t i = 0; i < n; ++i) {
    const auto& [x, y] = sections[i];
    vec[i] = {x + rep.M[i].a0 * y, rep.M[i].a1 * y};
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Mat2<K>& g = rep.G[i][j];
      K t1 = g.a11 * vec[j].first + g.a12 * vec[j].second;
      K t2 = g.a21 * vec[j].first + g.a22 * vec[j].second;
      if (!(t1 == vec[i].first) || !(t2 == vec[i].second))
        throw std::invalid_argument("not a global section");
    }

  SectionNormResult<K> out;
  out.h.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const auto& [x, y] = sections[i];
    out.h.push_back(rep.M[i].a1 * (x * x - y * y * rep.F[i]));
  }
  out.gluing_verified = true;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      K lhs = (rep.G[i][j].det() / rep.xi[i][j]) * out.h[j];
      if (!(lhs == out.h[i])) out.gluing_verified = false;
    }
  return out;
}

// Intertwining witness W_i = [[alpha_i, beta_i F_i], [beta_i, alpha_i]]
// between two normal representations.
template <class K, class C>
bool verify_equivalence_witness(const PairRep<K, C>& repA, const PairRep<K, C>& repB,
                                const std::vector<std::pair<K, K>>& witness)
{
  if (!repA.is_normal || !repB.is_normal)
    throw std::invalid_argument("equivalence witnesses require normal representations");
  if (!(repA.charts == repB.charts) || !(repA.F == repB.F))
    throw std::invalid_argument("representations live on different covers");
  size_t n = repA.size();
  if (witness.size() != n) throw std::invalid_argument("one witness pair per chart");

  std::vector<Mat2<K>> W(n);
  for (size_t i = 0; i < n; ++i) {
    const auto& [alpha, beta] = witness[i];
    W[i] = {alpha, beta * repA.F[i], beta, alpha};
    K det = alpha * alpha - beta * beta * repA.F[i];
    if (det.is_zero() || !repA.charts[i].is_unit(det)) return false;
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!(W[i] * repA.G[i][j] == repB.G[i][j] * W[j])) return false;
    }
  return true;
}

}  // namespace twocover::dc

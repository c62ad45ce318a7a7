#pragma once

#include <cstdint>
#include <optional>

#include "twocover/admissible.hpp"
#include "twocover/p1_bundles.hpp"
#include "twocover/p2func.hpp"

namespace twocover::conic {

using arith::HomPoly3;
using arith::Mat2R;
using arith::P1Chart;
using arith::P2Chart;
using arith::P2Func;
using arith::Point3;
using arith::Rational;
using arith::RatFunc;
using arith::UniPoly;

using P2Rep = dc::PairRep<P2Func, P2Chart>;
using P1Rep = dc::PairRep<RatFunc, P1Chart>;

using Mat33 = std::array<std::array<Rational, 3>, 3>;

// Line in P^2 with a rational parameterization t -> [P + t*Q].
struct LineInP2 {
  std::array<Rational, 3> form;
  Point3 P, Q;
};

LineInP2 line_from_form(const std::array<Rational, 3>& form);
LineInP2 line_from_data(const std::array<Rational, 3>& form, const Point3& P,
                        const Point3& Q);

// Double cover of P^2 branched at a smooth conic.  Arbitrary smooth
// conics over Q are reduced to the normal form x0^2 + x1*x2 by an exact
// congruence transformation through a rational point (found by bounded
// search); conics without a small rational point are rejected.
class ConicCover {
 public:
  explicit ConicCover(const HomPoly3& F);
  static ConicCover standard();

  const HomPoly3& branch() const { return F_; }
  const HomPoly3& normal_form() const { return F0_; }
  bool is_standard() const { return standard_; }

  // User coordinates x = C * y with F(C y) = lambda * (y0^2 + y1 y2).
  const Mat33& transform() const { return C_; }
  const Mat33& transform_inverse() const { return Cinv_; }

  // Line translated into the normalized coordinates.
  LineInP2 to_internal(const LineInP2& line) const;
  LineInP2 from_internal(const LineInP2& line) const;

 private:
  HomPoly3 F_;
  HomPoly3 F0_;
  bool standard_ = true;
  Mat33 C_{}, Cinv_{};
};

// The good representation of the pair for O_X(0,1) on the refined cover
// (charts: U_0 cut by -2x0+x1-x2 != 0, U_1, U_2), in normalized
// coordinates.
P2Rep standard_conic_pair(const ConicCover& cover);

// One-dimensional analogue: the double cover of P^1 branched at two
// points (F = x0*x1), as a good representation over Q(x), x = x1/x0.
P1Rep two_point_cover_pair();

// Restriction of a representation's bundle data to a line.  Charts of
// the induced cover of the line carry their puncture data in the
// parameter t; `two_chart` is set when a pair of charts realizes the
// standard two-chart cover of P^1 directly.
struct RestrictedLineBundle {
  struct LineChart {
    UniPoly h;              // squarefree finite punctures
    bool infinity_removed;  // true when [Q] is outside the chart
  };
  std::vector<LineChart> charts;
  std::vector<std::vector<Mat2R>> transitions;
  std::optional<std::pair<size_t, size_t>> two_chart;

  p1::AffineCocycle affine_part() const;  // cocycle over the t-line
};

RestrictedLineBundle restrict_to_line(const P2Rep& rep, const LineInP2& line);

// Splitting type of a restricted bundle; uses the direct two-chart
// route when available and the double Algorithm-1 trivialization
// otherwise.
p1::SplittingType split_restricted(const RestrictedLineBundle& r);

// Full pipeline: group law at exponent n, restriction, splitting.
p1::SplittingType splitting_on_line(const ConicCover& cover, long n,
                                    const LineInP2& line);

enum class LineClass { transversal, tangent };
LineClass classify_line(const ConicCover& cover, const LineInP2& line);

// Tangent line family x0 + c*x1 + b*x2 with c = -1/(4b); b must be
// nonzero.  For non-default conics the family is carried back through
// the coordinate transformation.
std::vector<LineInP2> tangent_lines(const ConicCover& cover,
                                    const std::vector<Rational>& params);
// The coordinate tangent lines x1 = 0 and x2 = 0.
std::array<LineInP2, 2> coordinate_tangent_lines(const ConicCover& cover);

// Deterministic seeded sample of pairwise distinct transversal lines.
std::vector<LineInP2> random_transversal_lines(const ConicCover& cover, int count,
                                               uint64_t seed);

struct ScanRow {
  LineInP2 line;
  p1::SplittingType type;
  bool is_jumping = false;
};

// Splitting per line with jumping flags relative to the batch mode;
// lines are processed across `jobs` workers, results in input order.
std::vector<ScanRow> jumping_scan(const ConicCover& cover, long n,
                                  const std::vector<LineInP2>& lines, int jobs = 1);

// Global sections of phi_* O_X(k1,k2) (k1 >= k2) over U_1 u U_2.
// Sections are pairs of chart-U_2 polynomials stored as forms S over
// x2^bound.
struct SectionPair {
  HomPoly3 S1, S2;
  int bound = 0;
  long k1 = 0, k2 = 0;
};

struct SectionBasis {
  long k1 = 0, k2 = 0;
  int degree_bound = 0;
  std::vector<SectionPair> basis;
  int dimension = 0;
  bool saturated = false;
};

SectionBasis global_sections(const ConicCover& cover, long k1, long k2,
                             int degree_bound);

struct SectionImage {
  HomPoly3 reduced_form;  // (s1^2 - s2^2 F) cleared of x2 powers
  int degree = 0;         // total degree as a chart-U_2 polynomial
  bool gluing_verified = false;
};

SectionImage section_image_degree(const ConicCover& cover, const SectionPair& elem);

}  // namespace twocover::conic

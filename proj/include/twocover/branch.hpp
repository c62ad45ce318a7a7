#pragma once

#include <optional>
#include <utility>

#include "twocover/hompoly3.hpp"

namespace twocover::dc {

using arith::HomPoly3;

// Branch decomposition F = a0^2 + f*a1 along the line f = 0.
// F homogeneous of even degree, f nonzero linear.  Returns the canonical
// pair (a0 has no monomial in the leading variable of f) or nothing when
// F restricted to the line is not a rational square.
std::optional<std::pair<HomPoly3, HomPoly3>> branch_decompose(const HomPoly3& F,
                                                              const HomPoly3& f);

}  // namespace twocover::dc

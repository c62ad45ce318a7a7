#pragma once

#include <map>
#include <string>
#include <vector>

#include "twocover/hompoly3.hpp"
#include "twocover/unipoly.hpp"

namespace twocover::cli {

using arith::HomPoly3;
using arith::Rational;
using arith::UniPoly;

// Raised for any malformed user input; carries a position when the
// error comes from the expression parser.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Recursive-descent parser for polynomial expressions over a declared
// variable set:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := rational | var | '(' expr ')'
// Rational literals are integers or p/q; no decimals.
class PolyExpr {
 public:
  static PolyExpr parse(const std::string& text, const std::vector<std::string>& vars);

  // Exponent vector (aligned with the declared variables) -> coefficient.
  const std::map<std::vector<int>, Rational>& terms() const { return terms_; }
  size_t nvars() const { return nvars_; }

 private:
  size_t nvars_ = 0;
  std::map<std::vector<int>, Rational> terms_;
};

// Parses in variables x0,x1,x2 and checks homogeneity.
HomPoly3 parse_hompoly3(const std::string& text);
// Parses in the single variable x.
UniPoly parse_unipoly(const std::string& text);

}  // namespace twocover::cli

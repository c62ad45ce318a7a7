#include "twocover/parse.hpp"

#include <cctype>
#include <sstream>

namespace twocover::cli {

namespace {

using Terms = std::map<std::vector<int>, Rational>;

Terms constant_terms(size_t nvars, const Rational& q)
{
  Terms t;
  if (q != 0) t[std::vector<int>(nvars, 0)] = q;
  return t;
}

Terms add(const Terms& a, const Terms& b)
{
  Terms r = a;
  for (const auto& [e, c] : b) {
    r[e] += c;
    if (r[e] == 0) r.erase(e);
  }
  return r;
}

Terms negate(const Terms& a)
{
  Terms r;
  for (const auto& [e, c] : a) r[e] = -c;
  return r;
}

Terms multiply(const Terms& a, const Terms& b, size_t nvars)
{
  Terms r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(nvars);
      for (size_t i = 0; i < nvars; ++i) e[i] = ea[i] + eb[i];
      r[e] += ca * cb;
      if (r[e] == 0) r.erase(e);
    }
  return r;
}

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& vars)
      : text_(text), vars_(vars)
  {
  }

  Terms run()
  {
    Terms t = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const
  {
    std::ostringstream os;
    os << "syntax error at position " << pos_ << ": " << what;
    throw InputError(os.str());
  }

  void skip_ws()
  {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(char c)
  {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek()
  {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Terms expr()
  {
    bool neg = eat('-');
    Terms acc = term();
    if (neg) acc = negate(acc);
    while (true) {
      if (eat('+'))
        acc = add(acc, term());
      else if (eat('-'))
        acc = add(acc, negate(term()));
      else
        break;
    }
    return acc;
  }

  Terms term()
  {
    Terms acc = factor();
    while (eat('*')) acc = multiply(acc, factor(), vars_.size());
    return acc;
  }

  Terms factor()
  {
    Terms base_t = base();
    if (eat('^')) {
      skip_ws();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("exponent must be a nonnegative integer");
      long e = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        e = e * 10 + (text_[pos_] - '0');
        if (e > 1000) fail("exponent too large");
        ++pos_;
      }
      Terms acc = constant_terms(vars_.size(), Rational(1));
      for (long k = 0; k < e; ++k) acc = multiply(acc, base_t, vars_.size());
      return acc;
    }
    return base_t;
  }

  Terms base()
  {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Terms t = expr();
      if (!eat(')')) fail("expected ')'");
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return rational_literal();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return variable();
    fail("expected a rational, a variable or '('");
  }

  Terms rational_literal()
  {
    size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::string num = text_.substr(start, pos_ - start);
    std::string den = "1";
    size_t save = pos_;
    if (eat('/')) {
      skip_ws();
      size_t dstart = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      if (pos_ == dstart) fail("expected denominator digits");
      den = text_.substr(dstart, pos_ - dstart);
      if (arith::Integer(den) == 0) fail("zero denominator");
    } else {
      pos_ = save;
    }
    return constant_terms(vars_.size(),
                          Rational(arith::Integer(num), arith::Integer(den)));
  }

  Terms variable()
  {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    for (size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) {
        std::vector<int> e(vars_.size(), 0);
        e[i] = 1;
        Terms t;
        t[e] = Rational(1);
        return t;
      }
    pos_ = start;
    fail("unknown variable '" + name + "'");
  }

  const std::string& text_;
  const std::vector<std::string>& vars_;
  size_t pos_ = 0;
};

}  // namespace

PolyExpr PolyExpr::parse(const std::string& text, const std::vector<std::string>& vars)
{
  Parser p(text, vars);
  PolyExpr out;
  out.nvars_ = vars.size();
  out.terms_ = p.run();
  return out;
}

HomPoly3 parse_hompoly3(const std::string& text)
{
  PolyExpr e = PolyExpr::parse(text, {"x0", "x1", "x2"});
  if (e.terms().empty()) return HomPoly3();
  int degree = -1;
  std::map<arith::Exponents, Rational> terms;
  for (const auto& [exp, c] : e.terms()) {
    int d = exp[0] + exp[1] + exp[2];
    if (degree < 0) degree = d;
    if (d != degree)
      throw InputError("polynomial is not homogeneous: '" + text + "'");
    terms[{exp[0], exp[1], exp[2]}] = c;
  }
  return HomPoly3(degree, std::move(terms));
}

UniPoly parse_unipoly(const std::string& text)
{
  PolyExpr e = PolyExpr::parse(text, {"x"});
  if (e.terms().empty()) return UniPoly();
  int degree = 0;
  for (const auto& [exp, c] : e.terms()) degree = std::max(degree, exp[0]);
  std::vector<Rational> coeffs(degree + 1, Rational(0));
  for (const auto& [exp, c] : e.terms()) coeffs[exp[0]] = c;
  return UniPoly(std::move(coeffs));
}

}  // namespace twocover::cli

#include "twocover/rational.hpp"

#include <sstream>

namespace twocover::arith {

Rational parse_rational(const std::string& text)
{
  auto bad = [&]() -> std::runtime_error {
    return std::runtime_error("invalid rational literal: '" + text + "'");
  };
  std::string s = text;
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(Integer(s));
    }
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw bad();
    return Rational(num, den);
  } catch (const std::exception&) {
    throw bad();
  }
}

std::string rational_to_string(const Rational& q)
{
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

namespace {

bool integer_sqrt(const Integer& n, Integer& root)
{
  if (n < 0) return false;
  root = sqrt(n);
  return root * root == n;
}

}  // namespace

bool rational_sqrt(const Rational& q, Rational& root)
{
  Integer rn, rd;
  if (!integer_sqrt(numerator(q), rn)) return false;
  if (!integer_sqrt(denominator(q), rd)) return false;
  root = Rational(rn, rd);
  return true;
}

}  // namespace twocover::arith

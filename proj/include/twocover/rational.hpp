#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace twocover::arith {

using Integer = boost::multiprecision::cpp_int;

// Exact rationals, always reduced with positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline bool is_integral(const Rational& q) { return denominator(q) == 1; }

// Parses "p", "-p" or "p/q" with integer p, q.  No decimals.
Rational parse_rational(const std::string& text);

// Renders as "p" or "p/q".
std::string rational_to_string(const Rational& q);

// Square root if q is a square of a rational, otherwise no value.
// The returned root is nonnegative.
bool rational_sqrt(const Rational& q, Rational& root);

}  // namespace twocover::arith

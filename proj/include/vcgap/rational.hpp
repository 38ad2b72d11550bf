#pragma once

#include <gmpxx.h>

#include <string>

namespace vcgap {

using Rational = mpq_class;

// "p/q", or "p" when the denominator is 1.
[[nodiscard]] std::string to_string(const Rational& r);
[[nodiscard]] Rational parse_rational(const std::string& text);
// Exact conversion; every finite double is a dyadic rational.
[[nodiscard]] Rational exact_rational(double x);
// Simplest fraction within `tol` of x (continued fractions); falls back to
// the exact dyadic value when no denominator below 2^40 is close enough.
[[nodiscard]] Rational simplest_rational(double x, double tol);
[[nodiscard]] inline double to_double(const Rational& r) { return r.get_d(); }
[[nodiscard]] inline double to_double(double x) { return x; }
[[nodiscard]] Rational pow(const Rational& base, int exp);
// num/den in lowest terms.
[[nodiscard]] inline Rational make_rational(long num, long den) {
  Rational r{mpz_class(num), mpz_class(den)};
  r.canonicalize();
  return r;
}

}  // namespace vcgap

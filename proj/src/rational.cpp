#include "vcgap/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace vcgap {

std::string to_string(const Rational& r) {
  Rational c(r);
  c.canonicalize();
  return c.get_str();
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0 || r.get_den() == 0) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
  r.canonicalize();
  return r;
}

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
  return Rational(x);
}

Rational simplest_rational(double x, double tol) {
  const Rational exact = exact_rational(x);
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  Rational rest = exact;
  const mpz_class cap = mpz_class(1) << 40;
  for (int it = 0; it < 128; ++it) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    const mpz_class h2 = a * h1 + h0;
    const mpz_class k2 = a * k1 + k0;
    if (k2 > cap) break;
    Rational candidate{h2, k2};
    candidate.canonicalize();
    if (std::abs(to_double(candidate - exact)) <= tol) return candidate;
    rest -= a;
    if (rest == 0) return candidate;
    rest = 1 / rest;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
  }
  return exact;
}

Rational pow(const Rational& base, int exp) {
  if (exp < 0) throw std::invalid_argument("negative exponent");
  Rational out(1);
  Rational b(base);
  while (exp > 0) {
    if (exp & 1) out *= b;
    b *= b;
    exp >>= 1;
  }
  return out;
}

}  // namespace vcgap

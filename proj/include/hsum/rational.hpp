#pragma once

#include <gmpxx.h>

#include <string>

#include "hsum/error.hpp"

namespace hsum {

/// Arbitrary-precision rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0 || r.get_den() == 0)
    throw UsageError("malformed rational '" + text + "'");
  r.canonicalize();
  return r;
}

inline Rational pow_int(const Rational& base, unsigned e) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

inline Rational factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

inline Rational binomial(unsigned n, unsigned k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

}  // namespace hsum

#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <string_view>

#include "hsum/error.hpp"

namespace hsum {

using ComplexValue = std::complex<double>;

namespace detail {

inline bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  std::string buf(s);
  char* end = nullptr;
  out = std::strtod(buf.c_str(), &end);
  return end == buf.c_str() + buf.size();
}

}  // namespace detail

/// Parses "a", "bi", "a+bi", "a-bi" (also "i", "-i", "a+i").
inline ComplexValue parse_complex(std::string_view text) {
  auto fail = [&] { return UsageError("malformed complex literal '" + std::string(text) + "'"); };
  if (text.empty()) throw fail();
  if (text.back() != 'i') {
    double re = 0;
    if (!detail::parse_double(text, re)) throw fail();
    return {re, 0.0};
  }
  std::string_view body = text.substr(0, text.size() - 1);
  // split at the last sign that is not the leading one or part of an exponent
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  double re = 0, im = 0;
  std::string_view im_part = split == std::string_view::npos ? body : body.substr(split);
  if (split != std::string_view::npos && !detail::parse_double(body.substr(0, split), re)) throw fail();
  if (im_part.empty() || im_part == "+")
    im = 1;
  else if (im_part == "-")
    im = -1;
  else if (!detail::parse_double(im_part, im))
    throw fail();
  return {re, im};
}

/// "a+bi" with the given number of significant digits.
inline std::string format_complex(ComplexValue z, int digits = 17) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.*g%+.*gi", digits, z.real(), digits, z.imag());
  return buf;
}

inline std::string format_real(long double x, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", digits, x);
  return buf;
}

/// Distance from z to the nearest non-positive integer.
inline double distance_to_pole(ComplexValue z) {
  const double re = z.real() > 0 ? 0.0 : std::round(z.real());
  return std::abs(z - ComplexValue(re, 0.0));
}

inline bool is_nonpositive_integer(ComplexValue z) {
  return z.imag() == 0 && z.real() <= 0 && z.real() == std::round(z.real());
}

}  // namespace hsum

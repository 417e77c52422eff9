#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "hsum/error.hpp"
#include "hsum/rational.hpp"
#include "hsum/special_fn.hpp"

namespace hsum {

/// Bernoulli numbers B_0..B_n (B_1 = -1/2), exact.
inline std::vector<Rational> bernoulli_numbers(unsigned n) {
  std::vector<Rational> b(n + 1);
  b[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    Rational s = 0;
    for (unsigned k = 0; k < m; ++k) s += binomial(m + 1, k) * b[k];
    b[m] = -s / Rational(m + 1);
  }
  return b;
}

namespace detail {

inline constexpr unsigned kPolylogTerms = 80;

inline const std::vector<double>& zeta_nonpositive() {
  // zeta(-m) = (-1)^m B_{m+1} / (m+1)
  static const std::vector<double> table = [] {
    const auto b = bernoulli_numbers(kPolylogTerms + 2);
    std::vector<double> z(kPolylogTerms + 1);
    for (unsigned m = 0; m <= kPolylogTerms; ++m) {
      Rational v = b[m + 1] / Rational(m + 1);
      if (m % 2) v = -v;
      z[m] = v.get_d();
    }
    return z;
  }();
  return table;
}

/// Li_n(e^mu) for |mu| < 2 pi:
///   mu^(n-1)/(n-1)! [H_(n-1) - ln(-mu)] + sum_{k != n-1} zeta(n-k) mu^k / k!
inline std::complex<double> polylog_log_series(int n, std::complex<double> mu) {
  const auto& zneg = zeta_nonpositive();
  double harmonic = 0;
  for (int j = 1; j < n; ++j) harmonic += 1.0 / j;
  std::complex<double> sum = 0, power = 1;  // power = mu^k / k!
  for (int k = 0; k <= static_cast<int>(kPolylogTerms); ++k) {
    if (k > 0) power *= mu / static_cast<double>(k);
    if (k == n - 1) {
      sum += power * (harmonic - std::log(-mu));
      continue;
    }
    const int s = n - k;
    const double z = s >= 2 ? static_cast<double>(ConstantTable::zeta(s)) : zneg[static_cast<unsigned>(-s)];
    const std::complex<double> term = z * power;
    sum += term;
    if (k > n + 4 && term != 0.0 && std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace detail

/// Li_n(x) for real x in [-1, 1], 2 <= n <= 6.
inline double polylog(int n, double x) {
  if (n < 2 || n > 6) throw UsageError("polylog order must lie in 2..6");
  if (!(x >= -1 && x <= 1)) throw UsageError("polylog argument outside [-1, 1]");
  if (x == 1) return static_cast<double>(ConstantTable::zeta(n));
  if (x == -1) return -(1 - std::ldexp(1.0, 1 - n)) * static_cast<double>(ConstantTable::zeta(n));
  if (std::fabs(x) <= 0.5) {
    double sum = 0, p = x;
    for (int k = 1; k < 200; ++k, p *= x) {
      const double term = p / std::pow(k, n);
      sum += term;
      if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return sum;
  }
  const std::complex<double> mu =
      x > 0 ? std::complex<double>(std::log(x), 0) : std::complex<double>(std::log(-x), ConstantTable::pi);
  return detail::polylog_log_series(n, mu).real();
}

/// Li_2(x) for x in [0, 1] given both x and 1 - x (accurate near x = 1).
inline double li2(double x, double one_minus_x) {
  if (x <= 0.5) return polylog(2, x);
  if (one_minus_x == 0) return static_cast<double>(ConstantTable::zeta2);
  return detail::polylog_log_series(2, {std::log1p(-one_minus_x), 0}).real();
}

inline double li2(double x) { return li2(x, 1 - x); }
inline double li3(double x) { return polylog(3, x); }

/// Nielsen S_{1,2}(x) = 1/2 int_0^x ln^2(1-t)/t dt, x in [0, 1].
inline double nielsen_s12(double x) {
  if (!(x >= 0 && x <= 1)) throw UsageError("S_{1,2} argument outside [0, 1]");
  if (x == 1) return static_cast<double>(ConstantTable::zeta3);
  if (x <= 0.5) {
    // sum_n H_{n-1} x^n / n^2
    double sum = 0, h = 0, p = x;
    for (int n = 1; n < 400; ++n, p *= x) {
      const double term = h * p / (double(n) * n);
      sum += term;
      h += 1.0 / n;
      if (n > 2 && term < 1e-18 * sum) break;
    }
    return sum;
  }
  const double y = 1 - x;
  const double ly = std::log(y), lx = std::log(x);
  return static_cast<double>(ConstantTable::zeta3) - polylog(3, y) + ly * polylog(2, y) + 0.5 * lx * ly * ly;
}

/// Numerator functions of the continuable basic functions.
enum class Numerator { li2, li3, s12, log1p_over_1px, li2_over_1px };

inline Numerator parse_numerator(const std::string& s) {
  if (s == "Li2") return Numerator::li2;
  if (s == "Li3") return Numerator::li3;
  if (s == "S12") return Numerator::s12;
  if (s == "ln(1+x)/(1+x)") return Numerator::log1p_over_1px;
  if (s == "Li2(x)/(1+x)") return Numerator::li2_over_1px;
  throw UsageError("unknown numerator descriptor '" + s + "'");
}

/// Evaluates a numerator descriptor at x in (0, 1].
inline double numerator_eval(Numerator which, double x) {
  if (!(x > 0 && x <= 1)) throw UsageError("numerator_eval: x outside (0, 1]");
  switch (which) {
    case Numerator::li2: return li2(x);
    case Numerator::li3: return li3(x);
    case Numerator::s12: return nielsen_s12(x);
    case Numerator::log1p_over_1px: return std::log1p(x) / (1 + x);
    case Numerator::li2_over_1px: return li2(x) / (1 + x);
  }
  return 0;
}

inline double numerator_eval(const std::string& descriptor, double x) {
  return numerator_eval(parse_numerator(descriptor), x);
}

}  // namespace hsum

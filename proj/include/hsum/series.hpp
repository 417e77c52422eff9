#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "hsum/complex.hpp"
#include "hsum/error.hpp"
#include "hsum/rational.hpp"

namespace hsum {

/// Truncated power series in t with exact rational coefficients.
class RationalSeries {
public:
  explicit RationalSeries(unsigned order = 0) : c_(order + 1, Rational(0)) {}
  explicit RationalSeries(std::vector<Rational> c) : c_(std::move(c)) {}

  unsigned order() const noexcept { return static_cast<unsigned>(c_.size()) - 1; }
  const Rational& operator[](std::size_t i) const { return c_[i]; }
  Rational& operator[](std::size_t i) { return c_[i]; }
  const std::vector<Rational>& coefficients() const noexcept { return c_; }

  /// ln(1 - s t) = -sum_k (s t)^k / k.
  static RationalSeries log_one_minus(unsigned order, const Rational& s = 1) {
    RationalSeries r(order);
    Rational p = 1;
    for (unsigned k = 1; k <= order; ++k) {
      p *= s;
      r[k] = -p / Rational(k);
    }
    return r;
  }

  /// 1 / (a - t) = sum_k t^k / a^(k+1).
  static RationalSeries inverse_linear(unsigned order, const Rational& a) {
    RationalSeries r(order);
    Rational p = 1 / a;
    for (unsigned k = 0; k <= order; ++k, p /= a) r[k] = p;
    return r;
  }

  /// sum_k t^(k + shift) / (k + shift)^p restricted to exponents >= 1, then divided by t^shift.
  static RationalSeries polylog(unsigned order, unsigned p, unsigned divide_by_t = 0) {
    RationalSeries r(order);
    for (unsigned k = 0; k <= order; ++k) {
      const unsigned e = k + divide_by_t;
      if (e == 0) continue;
      r[k] = Rational(1) / pow_int(Rational(e), p);
    }
    return r;
  }

  friend RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
    const unsigned n = std::min(a.order(), b.order());
    RationalSeries out(n);
    for (unsigned i = 0; i <= n; ++i) {
      if (a[i] == 0) continue;
      for (unsigned j = 0; i + j <= n; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
  }

  friend RationalSeries operator+(const RationalSeries& a, const RationalSeries& b) {
    const unsigned n = std::min(a.order(), b.order());
    RationalSeries out(n);
    for (unsigned i = 0; i <= n; ++i) out[i] = a[i] + b[i];
    return out;
  }

  RationalSeries& operator*=(const Rational& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

private:
  std::vector<Rational> c_;
};

/// Taylor jet of a function at a point: c[i] = f^(i)(z) / i!.
class Jet {
public:
  explicit Jet(unsigned order = 0) : c_(order + 1, ComplexValue(0)) {}

  unsigned order() const noexcept { return static_cast<unsigned>(c_.size()) - 1; }
  ComplexValue& operator[](std::size_t i) { return c_[i]; }
  const ComplexValue& operator[](std::size_t i) const { return c_[i]; }

  /// i-th derivative.
  ComplexValue derivative(unsigned i) const {
    double f = 1;
    for (unsigned k = 2; k <= i; ++k) f *= k;
    return c_[i] * f;
  }

  static Jet constant(unsigned order, ComplexValue v) {
    Jet j(order);
    j[0] = v;
    return j;
  }

  /// Jet of 1 / z.
  static Jet reciprocal(unsigned order, ComplexValue z) {
    Jet j(order);
    ComplexValue p = 1.0 / z;
    for (unsigned i = 0; i <= order; ++i, p /= -z) j[i] = p;
    return j;
  }

  /// Jet of f' from the jet of f (one order lower).
  Jet differentiated() const {
    Jet j(order() == 0 ? 0 : order() - 1);
    for (unsigned i = 0; i + 1 <= order(); ++i) j[i] = c_[i + 1] * static_cast<double>(i + 1);
    return j;
  }

  Jet truncated(unsigned order) const {
    Jet j(order);
    for (unsigned i = 0; i <= order && i <= this->order(); ++i) j[i] = c_[i];
    return j;
  }

  Jet& operator+=(const Jet& o) {
    for (unsigned i = 0; i <= order(); ++i) c_[i] += o[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (unsigned i = 0; i <= order(); ++i) c_[i] -= o[i];
    return *this;
  }
  Jet& operator*=(ComplexValue s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, ComplexValue s) { return a *= s; }
  friend Jet operator*(ComplexValue s, Jet a) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet out(std::min(a.order(), b.order()));
    for (unsigned i = 0; i <= out.order(); ++i)
      for (unsigned j = 0; i + j <= out.order(); ++j) out[i + j] += a[i] * b[j];
    return out;
  }

private:
  std::vector<ComplexValue> c_;
};

/// Omega(z) = sum_k a_k k! / (z (z+1) ... (z+k)), the Mellin transform of phi
/// when phi(1 - t) = sum_k a_k t^k.
struct FactorialSeries {
  std::vector<Rational> coefficients;
  /// Below this real part the truncated series is not trusted.
  double z_min = 1;
};

struct SeriesValue {
  ComplexValue value;
  /// Magnitude of the last term added.
  double error_estimate = 0;
  /// Set when Re z < z_min.
  bool below_threshold = false;
};

inline SeriesValue factorial_series_eval(const FactorialSeries& s, ComplexValue z, unsigned terms) {
  if (is_nonpositive_integer(z))
    throw PoleError(z, "factorial series pole at z = " + format_complex(z, 6));
  SeriesValue out;
  out.below_threshold = z.real() < s.z_min;
  const unsigned n = std::min<unsigned>(terms, static_cast<unsigned>(s.coefficients.size()));
  ComplexValue q = 1.0 / z;  // k! / (z)_{k+1}
  for (unsigned k = 0; k < n; ++k) {
    if (k > 0) q *= static_cast<double>(k) / (z + static_cast<double>(k));
    const ComplexValue term = s.coefficients[k].get_d() * q;
    out.value += term;
    out.error_estimate = std::abs(term);
  }
  return out;
}

/// Stirling numbers of the second kind S(n, k) for n, k <= max.
inline std::vector<std::vector<Rational>> stirling2_table(unsigned max) {
  std::vector<std::vector<Rational>> s(max + 1, std::vector<Rational>(max + 1, Rational(0)));
  s[0][0] = 1;
  for (unsigned n = 1; n <= max; ++n)
    for (unsigned k = 1; k <= n; ++k) s[n][k] = Rational(k) * s[n - 1][k] + s[n - 1][k - 1];
  return s;
}

/// sum_j c_j z^(-j); coefficient index is the power of 1/z.
struct AsymptoticSeries {
  std::vector<Rational> coefficients;
  /// Evaluation is refused for |z| below this bound.
  double min_modulus = 10;
};

/// Converts a factorial series to its asymptotic expansion through z^(-order):
///   1/(z)_{k+1} = sum_{n > k} (-1)^(n-k-1) S(n-1, k) z^(-n).
inline AsymptoticSeries factorial_to_asymptotic(const FactorialSeries& s, unsigned order) {
  if (s.coefficients.size() < order)
    throw CapabilityError("factorial series too short for the requested asymptotic order");
  const auto st = stirling2_table(order);
  AsymptoticSeries out;
  out.coefficients.assign(order + 1, Rational(0));
  for (unsigned n = 1; n <= order; ++n) {
    Rational c = 0;
    for (unsigned k = 0; k < n; ++k) {
      if (s.coefficients[k] == 0) continue;
      Rational term = s.coefficients[k] * factorial(k) * st[n - 1][k];
      if ((n - k - 1) % 2) term = -term;
      c += term;
    }
    out.coefficients[n] = c;
  }
  return out;
}

/// Truncated asymptotic sum. With terms == 0 the sum stops before the smallest
/// term (optimal truncation); the error estimate is the first omitted term.
inline SeriesValue asymptotic_eval(const AsymptoticSeries& s, ComplexValue z, unsigned terms = 0) {
  if (std::abs(z) < s.min_modulus)
    throw CapabilityError("asymptotic series evaluated below |z| = " + format_real(s.min_modulus, 4));
  SeriesValue out;
  const ComplexValue inv = 1.0 / z;
  ComplexValue p = 1;
  const std::size_t last = terms == 0 ? s.coefficients.size() - 1
                                      : std::min<std::size_t>(terms, s.coefficients.size() - 1);
  double previous = INFINITY;
  out.error_estimate = 0;
  for (std::size_t j = 0; j < s.coefficients.size(); ++j, p *= inv) {
    const ComplexValue term = s.coefficients[j].get_d() * p;
    const double mag = std::abs(term);
    if (j > last || (terms == 0 && j > 1 && mag > previous && mag != 0)) {
      out.error_estimate = mag;
      return out;
    }
    out.value += term;
    if (mag != 0) previous = mag;
  }
  out.error_estimate = std::isinf(previous) ? 0 : previous;
  return out;
}

}  // namespace hsum

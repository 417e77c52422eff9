#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "hsum/complex.hpp"
#include "hsum/error.hpp"

namespace hsum {

/// Mathematical constants, as 36-digit literals and their double values.
struct ConstantTable {
  static constexpr const char* gamma_e_digits = "0.577215664901532860606512090082402431";
  static constexpr const char* ln2_digits = "0.693147180559945309417232121458176568";
  static constexpr const char* zeta_digits[7] = {
      nullptr,
      nullptr,
      "1.644934066848226436472415166646025189",
      "1.202056903159594285399738161511449991",
      "1.082323233711138191516003696541167903",
      "1.036927755143369926331365486457034168",
      "1.017343061984449139714517929790920528",
  };

  static constexpr long double gamma_e = 0.577215664901532860606512090082402431L;
  static constexpr long double ln2 = 0.693147180559945309417232121458176568L;
  static constexpr long double zeta2 = 1.644934066848226436472415166646025189L;
  static constexpr long double zeta3 = 1.202056903159594285399738161511449991L;
  static constexpr long double zeta4 = 1.082323233711138191516003696541167903L;
  static constexpr long double zeta5 = 1.036927755143369926331365486457034168L;
  static constexpr long double zeta6 = 1.017343061984449139714517929790920528L;
  static constexpr long double pi = 3.141592653589793238462643383279502884L;

  /// zeta(k) for 2 <= k <= 6.
  static long double zeta(int k) {
    switch (k) {
      case 2: return zeta2;
      case 3: return zeta3;
      case 4: return zeta4;
      case 5: return zeta5;
      case 6: return zeta6;
      default: throw UsageError("constant table holds zeta(2..6) only");
    }
  }

  /// Value of a symbolic constant name (zeta2..zeta6, ln2, gammaE).
  static long double value(const std::string& sym) {
    if (sym == "ln2") return ln2;
    if (sym == "gammaE") return gamma_e;
    if (sym.size() == 5 && sym.compare(0, 4, "zeta") == 0) return zeta(sym[4] - '0');
    throw UsageError("unknown constant '" + sym + "'");
  }
};

struct PsiOptions {
  /// Arguments are shifted right until Re z >= shift_threshold.
  double shift_threshold = 12;
  /// Bernoulli terms B_2 .. B_{2 * max_bernoulli} in the asymptotic expansion (max 8).
  int max_bernoulli = 7;
};

namespace detail {

inline constexpr double kBernoulli2n[9] = {1.0,
                                           1.0 / 6,
                                           -1.0 / 30,
                                           1.0 / 42,
                                           -1.0 / 30,
                                           5.0 / 66,
                                           -691.0 / 2730,
                                           7.0 / 6,
                                           -3617.0 / 510};

inline double fact(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace detail

/// Polygamma psi^(k)(z) for complex z off the non-positive integers.
inline ComplexValue psi(ComplexValue z, unsigned k = 0, const PsiOptions& opt = {}) {
  if (is_nonpositive_integer(z))
    throw PoleError(z, "polygamma pole at z = " + format_complex(z, 6));
  const int kk = static_cast<int>(k);
  const double kfact = detail::fact(kk);
  const double sign_k = (k % 2) ? -1.0 : 1.0;  // (-1)^k
  ComplexValue shift_sum = 0;
  while (z.real() < opt.shift_threshold) {
    // psi^(k)(z) = psi^(k)(z+1) - (-1)^k k! / z^(k+1)
    shift_sum -= sign_k * kfact / std::pow(z, kk + 1);
    z += 1.0;
  }
  const ComplexValue inv = 1.0 / z;
  const ComplexValue inv2 = inv * inv;
  const int nb = std::min(opt.max_bernoulli, 8);
  ComplexValue asym;
  if (k == 0) {
    asym = std::log(z) - 0.5 * inv;
    ComplexValue p = inv2;
    for (int n = 1; n <= nb; ++n, p *= inv2) asym -= detail::kBernoulli2n[n] / (2.0 * n) * p;
  } else {
    // (-1)^(k+1) [ (k-1)!/z^k + k!/(2 z^(k+1)) + sum B_2n (2n+k-1)!/((2n)! z^(2n+k)) ]
    const ComplexValue zk = std::pow(inv, kk);
    ComplexValue s = detail::fact(kk - 1) * zk + 0.5 * kfact * zk * inv;
    ComplexValue p = zk * inv2;
    for (int n = 1; n <= nb; ++n, p *= inv2)
      s += detail::kBernoulli2n[n] * detail::fact(2 * n + kk - 1) / detail::fact(2 * n) * p;
    asym = -sign_k * s;
  }
  return asym + shift_sum;
}

/// k-th derivative of beta(z) = [psi((z+1)/2) - psi(z/2)] / 2.
inline ComplexValue beta_fn(ComplexValue z, unsigned k = 0, const PsiOptions& opt = {}) {
  if (is_nonpositive_integer(z))
    throw PoleError(z, "beta pole at z = " + format_complex(z, 6));
  const double scale = std::ldexp(1.0, -static_cast<int>(k) - 1);
  return scale * (psi(0.5 * (z + 1.0), k, opt) - psi(0.5 * z, k, opt));
}

/// |psi(z/2) - psi(z) + beta(z) + ln 2|, the residual of the w=1 duplication relation.
inline double duplication_check(ComplexValue z) {
  const ComplexValue r = psi(0.5 * z) - psi(z) + beta_fn(z) + static_cast<double>(ConstantTable::ln2);
  return std::abs(r);
}

}  // namespace hsum

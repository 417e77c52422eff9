#pragma once

#include <cmath>
#include <string>

#include "hsum/complex.hpp"
#include "hsum/continuation.hpp"
#include "hsum/error.hpp"
#include "hsum/exact_eval.hpp"
#include "hsum/expr.hpp"
#include "hsum/mellin_oracle.hpp"
#include "hsum/polylog.hpp"
#include "hsum/special_fn.hpp"

namespace hsum {

/// Numeric value at integer N with the symbolic constants substituted.
inline long double eval_numeric(const HarmonicExpr& e, unsigned n, SumCache* cache = nullptr) {
  long double total = 0;
  for (const auto& [k, c] : e.terms()) {
    long double prod = c.get_d();
    for (const auto& [sym, pw] : k.constants) prod *= std::pow(ConstantTable::value(sym), static_cast<long double>(pw));
    for (const auto& s : k.sums) prod *= eval_exact(s, n, EvalOptions{}, cache).get_d();
    total += prod;
  }
  return total;
}

/// Integer-argument form of a continuable basic function:
///   M[f](N) = sign^N * expr(N - 1).
struct SumForm {
  int alternating = 1;  // -1 when the value carries (-1)^N
  HarmonicExpr expr;
};

inline SumForm sum_form(const std::string& id) {
  auto term = [](std::initializer_list<std::pair<const std::string, unsigned>> c, std::vector<IndexVector> s) {
    return TermKey{ConstMonomial(c), std::move(s)};
  };
  SumForm f;
  if (id == "F0") {
    f.expr.add_term(term({}, {IndexVector{1}}), 1);
  } else if (id == "F1") {
    f.alternating = -1;
    f.expr.add_term(term({}, {IndexVector{1, -1}}), 1);
    f.expr.add_term(term({{"ln2", 1}}, {IndexVector{1}}), 1);
    f.expr.add_term(term({{"ln2", 1}}, {IndexVector{-1}}), -1);
    f.expr.add_term(term({{"ln2", 2}}, {}), Rational(-1, 2));
  } else if (id == "F2") {
    f.expr.add_term(term({{"zeta2", 1}}, {IndexVector{1}}), 1);
    f.expr.add_term(term({}, {IndexVector{2, 1}}), -1);
  } else if (id == "F3") {
    f.alternating = -1;
    f.expr.add_term(term({}, {IndexVector{-2, 1}}), 1);
    f.expr.add_term(term({{"zeta2", 1}}, {IndexVector{-1}}), -1);
    f.expr.add_term(term({{"zeta2", 1}, {"ln2", 1}}, {}), -1);
    f.expr.add_term(term({{"zeta3", 1}}, {}), Rational(5, 8));
  } else {
    throw CapabilityError("no harmonic-sum form for '" + id + "'");
  }
  return f;
}

/// Value of a continuable basic function at integer N >= 1 from exact sums.
inline long double sum_form_value(const std::string& id, unsigned n, SumCache* cache = nullptr) {
  if (n == 0) throw PoleError(ComplexValue(0), "basic function pole at N = 0");
  const SumForm f = sum_form(id);
  const long double v = eval_numeric(f.expr, n - 1, cache);
  return (f.alternating < 0 && (n % 2)) ? -v : v;
}

/// Three evaluations of M[(x^(N-1) - 1)/(1 - x^2)](N) that must coincide.
struct DuplicationSides {
  ComplexValue split;       // 1/2 [-(psi(N) + gammaE) + beta(N) - ln2]
  ComplexValue half_angle;  // 1/2 [psi(1/2) - psi(N/2)]
  ComplexValue quadrature;
  double quadrature_error = 0;
};

inline DuplicationSides partial_fraction_duplication(ComplexValue n, bool with_quadrature = true) {
  const double g = static_cast<double>(ConstantTable::gamma_e), l2 = static_cast<double>(ConstantTable::ln2);
  DuplicationSides d;
  d.split = 0.5 * (-(psi(n) + g) + beta_fn(n) - l2);
  d.half_angle = 0.5 * (psi(0.5) - psi(0.5 * n));
  if (with_quadrature) {
    const auto q = mellin_numeric("plus_1mx2", n);
    d.quadrature = q.value;
    d.quadrature_error = q.error_estimate;
  }
  return d;
}

/// Three evaluations of M[ln(1 - x^2)](N).
struct LogDuplicationSides {
  ComplexValue split;       // M[ln(1-x)] + M[ln(1+x)] = -S1(N)/N + (ln2 - beta(N+1))/N
  ComplexValue half_angle;  // -S1(N/2)/N
  ComplexValue quadrature;
  double quadrature_error = 0;
};

/// S1 continued through psi: S1(z) = psi(z+1) + gammaE.
inline ComplexValue harmonic_s1(ComplexValue z) { return psi(z + 1.0) + static_cast<double>(ConstantTable::gamma_e); }

inline LogDuplicationSides log_duplication(ComplexValue n, bool with_quadrature = true) {
  const double l2 = static_cast<double>(ConstantTable::ln2);
  LogDuplicationSides d;
  d.split = -harmonic_s1(n) / n + (l2 - beta_fn(n + 1.0)) / n;
  d.half_angle = -harmonic_s1(0.5 * n) / n;
  if (with_quadrature) {
    const auto q = mellin_numeric("log_1mx2", n);
    d.quadrature = q.value;
    d.quadrature_error = q.error_estimate;
  }
  return d;
}

/// |Li_k(x^2) - 2^(k-1) [Li_k(x) + Li_k(-x)]|.
inline double polylog_duplication_residual(int k, double x) {
  return std::fabs(polylog(k, x * x) - std::ldexp(1.0, k - 1) * (polylog(k, x) + polylog(k, -x)));
}

/// |S_{-1}(N) - ((-1)^N beta(N+1) - ln2)|.
inline double alternating_harmonic_residual(unsigned n) {
  const double exact = eval_exact(IndexVector{-1}, n).get_d();
  const double sign = (n % 2) ? -1.0 : 1.0;
  const ComplexValue rhs = sign * beta_fn(static_cast<double>(n) + 1.0) - static_cast<double>(ConstantTable::ln2);
  return std::abs(rhs - exact);
}

/// |S_1(N) - (psi(N+1) + gammaE)|.
inline double harmonic_psi_residual(unsigned n) {
  return std::abs(harmonic_s1(static_cast<double>(n)) - eval_exact(IndexVector{1}, n).get_d());
}

/// |S_2(N) - (zeta2 - d/dN S_1(N))| with S_1(N) = M[1/(x-1)_+](N+1) differentiated analytically.
inline double derivative_closure_residual(unsigned n, const ContinuationConfig& cfg = {}) {
  const ComplexValue ds1 = differentiate("F0", static_cast<double>(n) + 1.0, cfg);
  const ComplexValue rhs = static_cast<double>(ConstantTable::zeta2) - ds1;
  return std::abs(rhs - eval_exact(IndexVector{2}, n).get_d());
}

/// M[ln(1-x)/(1+x)](N) = -F1(N) - [psi(N) + gammaE - ln2] beta(N) + beta'(N),
/// returned as (continuation side, quadrature side, quadrature error).
struct LogOverOnePlusSides {
  ComplexValue continued;
  ComplexValue quadrature;
  double quadrature_error = 0;
};

inline LogOverOnePlusSides log_over_one_plus(ComplexValue n, const ContinuationConfig& cfg = {}) {
  const double g = static_cast<double>(ConstantTable::gamma_e), l2 = static_cast<double>(ConstantTable::ln2);
  LogOverOnePlusSides s;
  s.continued = -evaluate_complex("F1", n, cfg) - (psi(n) + g - l2) * beta_fn(n) + beta_fn(n, 1);
  const auto q = mellin_numeric("log_1mx_over_1px", n);
  s.quadrature = q.value;
  s.quadrature_error = q.error_estimate;
  return s;
}

}  // namespace hsum

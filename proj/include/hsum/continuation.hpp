#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hsum/complex.hpp"
#include "hsum/error.hpp"
#include "hsum/rational.hpp"
#include "hsum/series.hpp"
#include "hsum/special_fn.hpp"

namespace hsum {

// ---------------------------------------------------------------------------
// Registry of basic functions f(x) whose Mellin transforms span the sums.
// ---------------------------------------------------------------------------

enum class Support { continuable, registry_only };

inline const char* to_string(Support s) {
  return s == Support::continuable ? "continuable" : "registry-only";
}

struct BasicFunction {
  std::string id;
  unsigned weight = 0;
  std::string numerator;
  /// Denominator 1/(x + sign): +1 for 1/(x+1), -1 for 1/(x-1).
  int denominator_sign = 1;
  /// For 1/(x-1): integrand taken as (x^(N-1) - 1) f(x).
  bool plus_regularized = false;
  Support support = Support::registry_only;
  std::string designation;
};

namespace detail {

inline std::vector<BasicFunction> build_registry() {
  std::vector<BasicFunction> r;
  auto add = [&r](unsigned w, std::string num, int sign, Support s = Support::registry_only) {
    BasicFunction f;
    f.id = "F" + std::to_string(r.size());
    f.weight = w;
    f.numerator = std::move(num);
    f.denominator_sign = sign;
    f.plus_regularized = sign < 0;
    f.support = s;
    f.designation = f.numerator + "/(x" + (sign < 0 ? "-" : "+") + "1)" + (sign < 0 ? "_+" : "");
    r.push_back(std::move(f));
  };
  auto both = [&add](unsigned w, const std::string& num) {
    add(w, num, -1);
    add(w, num, +1);
  };
  add(1, "1", -1, Support::continuable);                  // F0
  add(2, "ln(1+x)", +1, Support::continuable);             // F1
  add(3, "Li2(x)", -1, Support::continuable);              // F2
  add(3, "Li2(x)", +1, Support::continuable);              // F3
  add(4, "Li3(x)", +1);
  both(4, "S12(x)");
  both(5, "Li4(x)");
  both(5, "S13(x)");
  both(5, "S22(x)");
  both(5, "Li2(x)^2");
  both(5, "ln(x)S12(-x)-Li2(-x)^2/2");
  add(6, "Li5(x)", +1);
  both(6, "S14(x)");
  both(6, "S23(x)");
  both(6, "S32(x)");
  both(6, "Li2(x)Li3(x)");
  both(6, "S12(x)Li2(x)");
  add(6, "A1(x)", +1);
  both(6, "A2(x)");
  add(6, "A3(x)", +1);
  add(6, "H(0,-1,0,1,1;x)", -1);
  add(6, "A1(-x)+N_alpha(x)", +1);
  return r;
}

}  // namespace detail

inline const std::vector<BasicFunction>& registry() {
  static const std::vector<BasicFunction> table = detail::build_registry();
  return table;
}

struct RegistryFilter {
  unsigned min_weight = 1;
  unsigned max_weight = 6;
  std::optional<Support> support;
};

inline std::vector<BasicFunction> registry_list(const RegistryFilter& filter = {}) {
  std::vector<BasicFunction> out;
  for (const auto& f : registry())
    if (f.weight >= filter.min_weight && f.weight <= filter.max_weight &&
        (!filter.support || *filter.support == f.support))
      out.push_back(f);
  return out;
}

/// Basic-function counts per perturbative class; informational only.
struct PhysicsClassCount {
  std::string quantity;
  std::string count;
};

inline const std::vector<PhysicsClassCount>& physics_class_counts() {
  static const std::vector<PhysicsClassCount> t = {
      {"O(as) Wilson coefficients / anomalous dimensions", "1"},
      {"O(as^2) anomalous dimensions", "2"},
      {"O(as^2) Wilson coefficients", "<=5"},
      {"O(as^3) anomalous dimensions", "15"},
      {"O(as^3) Wilson coefficients", "35"},
  };
  return t;
}

inline const BasicFunction& find_function(const std::string& id) {
  for (const auto& f : registry())
    if (f.id == id) return f;
  throw UsageError("unknown basic function '" + id + "'");
}

inline const BasicFunction& require_continuable(const std::string& id) {
  const auto& f = find_function(id);
  if (f.support != Support::continuable)
    throw CapabilityError(id + " (" + f.designation + ") is registry-only; no continuation available");
  return f;
}

// ---------------------------------------------------------------------------
// Numerators analytic at x = 1, with exact Taylor coefficients of phi(1 - t).
// ---------------------------------------------------------------------------

struct AnalyticComponent {
  std::string id;
  std::string description;
  /// Integral of phi over (0,1), i.e. its Mellin transform at z = 1.
  long double mellin_at_one = 0;
};

inline const std::vector<AnalyticComponent>& analytic_components() {
  static const std::vector<AnalyticComponent> t = {
      {"one", "1", 1.0L},
      {"x", "x", 0.5L},
      {"one_minus_x", "1-x", 0.5L},
      {"log_half_1px_over_1px", "ln((1+x)/2)/(1+x)", 0},
      {"li2_1mx_over_1px", "Li2(1-x)/(1+x)", 0},
      {"li2_1mx_over_1mx", "Li2(1-x)/(1-x)", ConstantTable::zeta3},
  };
  return t;
}

namespace detail {

inline const AnalyticComponent& find_component(const std::string& id) {
  for (const auto& c : analytic_components())
    if (c.id == id) return c;
  throw UsageError("unknown analytic component '" + id + "'");
}

inline RationalSeries component_series(const std::string& id, unsigned order) {
  if (id == "one") {
    RationalSeries s(order);
    s[0] = 1;
    return s;
  }
  if (id == "x") {
    RationalSeries s(order);
    s[0] = 1;
    if (order >= 1) s[1] = -1;
    return s;
  }
  if (id == "one_minus_x") {
    RationalSeries s(order);
    if (order >= 1) s[1] = 1;
    return s;
  }
  // x = 1 - t: ln((1+x)/2) = ln(1 - t/2), 1/(1+x) = 1/(2-t)
  if (id == "log_half_1px_over_1px")
    return RationalSeries::log_one_minus(order, Rational(1, 2)) * RationalSeries::inverse_linear(order, 2);
  if (id == "li2_1mx_over_1px") return RationalSeries::polylog(order, 2) * RationalSeries::inverse_linear(order, 2);
  if (id == "li2_1mx_over_1mx") return RationalSeries::polylog(order, 2, 1);
  throw UsageError("unknown analytic component '" + id + "'");
}

}  // namespace detail

/// Exact Taylor coefficients a_0..a_order of phi(1 - t) for an analytic component,
/// optionally multiplied by ln^log_power(x) = ln^log_power(1 - t).
inline std::vector<Rational> component_taylor(const std::string& id, unsigned order, unsigned log_power = 0) {
  RationalSeries s = detail::component_series(id, order);
  const RationalSeries log_x = RationalSeries::log_one_minus(order);
  for (unsigned i = 0; i < log_power; ++i) s = s * log_x;
  return s.coefficients();
}

/// taylor_at_one for basic-function ids or analytic components. Basic functions
/// whose numerator is not analytic with rational coefficients at x = 1 must go
/// through map_branch first.
inline std::vector<Rational> taylor_at_one(const std::string& id, unsigned order) {
  if (id == "F0") return component_taylor("one", order);
  for (const auto& c : analytic_components())
    if (c.id == id) return component_taylor(id, order);
  const auto& f = find_function(id);
  if (id == "F1")
    throw CapabilityError("F1 is analytic at x=1 but its coefficients carry ln2; use map_branch(F1), "
                          "component log_half_1px_over_1px");
  throw CapabilityError(f.designation + " has a branch point at x=1; apply map_branch first");
}

struct FactorialSeriesCache {
  static const FactorialSeries& get(const std::string& component, unsigned log_power, unsigned terms) {
    static std::mutex mutex;
    static std::map<std::tuple<std::string, unsigned, unsigned>, FactorialSeries> cache;
    std::lock_guard lock(mutex);
    auto key = std::make_tuple(component, log_power, terms);
    auto it = cache.find(key);
    if (it == cache.end()) {
      detail::find_component(component);
      FactorialSeries s;
      s.coefficients = component_taylor(component, terms, log_power);
      it = cache.emplace(key, std::move(s)).first;
    }
    return it->second;
  }
};

inline FactorialSeries factorial_series(const std::string& component, unsigned terms, unsigned log_power = 0) {
  return FactorialSeriesCache::get(component, log_power, terms);
}

/// Asymptotic coefficients c_0..c_order (powers of 1/N) of M[component](N).
inline AsymptoticSeries asymptotic_coeffs(const std::string& component, unsigned order) {
  return factorial_to_asymptotic(factorial_series(component, order), order);
}

// ---------------------------------------------------------------------------
// Branch mapping: decomposition of a continuable basic function into pieces
// with closed or factorial-series Mellin transforms.
// ---------------------------------------------------------------------------

enum class MellinKind {
  /// M[phi] of an analytic component; minus M[phi](1) when plus_subtracted.
  factorial_series,
  /// M[1/(1+x)] = beta(z)
  beta,
  /// M[1/(x-1)_+] = psi(z) + gammaE
  plus_harmonic,
  /// M[ln(x) ln(1-x)/(1+x)]
  loglog_over_one_plus,
  /// int (x^(z-1) - 1) ln(x) ln(1-x)/(1-x) dx
  loglog_over_one_minus_plus,
};

struct MellinTerm {
  MellinKind kind;
  double coefficient = 1;
  std::string coefficient_label;
  std::string component;
  bool plus_subtracted = false;
  std::string description;
};

struct BranchDecomposition {
  std::string id;
  std::string mapping;
  std::vector<MellinTerm> terms;
};

inline BranchDecomposition map_branch(const std::string& id) {
  const auto& f = require_continuable(id);
  const double z2 = static_cast<double>(ConstantTable::zeta2);
  const double l2 = static_cast<double>(ConstantTable::ln2);
  BranchDecomposition d;
  d.id = f.id;
  if (id == "F0") {
    d.mapping = "identity (numerator 1)";
    d.terms = {{MellinKind::plus_harmonic, 1, "1", "", false, "psi(z) + gammaE"}};
  } else if (id == "F1") {
    d.mapping = "identity; ln(1+x) = ln2 + ln((1+x)/2) is analytic at x=1";
    d.terms = {{MellinKind::factorial_series, 1, "1", "log_half_1px_over_1px", false,
                "factorial series of ln((1+x)/2)/(1+x)"},
               {MellinKind::beta, l2, "ln2", "", false, "ln2 beta(z)"}};
  } else if (id == "F2") {
    d.mapping = "Li2(x) -> -Li2(1-x) - ln(x) ln(1-x) + zeta2";
    d.terms = {{MellinKind::plus_harmonic, z2, "zeta2", "", false, "zeta2 (psi(z) + gammaE)"},
               {MellinKind::factorial_series, 1, "1", "li2_1mx_over_1mx", true,
                "factorial series of Li2(1-x)/(1-x), minus zeta3"},
               {MellinKind::loglog_over_one_minus_plus, 1, "1", "", false,
                "(psi(z)+gammaE) psi'(z) - psi''(z)/2 - zeta3"}};
  } else {
    d.mapping = "Li2(x) -> -Li2(1-x) - ln(x) ln(1-x) + zeta2";
    d.terms = {{MellinKind::beta, z2, "zeta2", "", false, "zeta2 beta(z)"},
               {MellinKind::factorial_series, -1, "-1", "li2_1mx_over_1px", false,
                "factorial series of Li2(1-x)/(1+x)"},
               {MellinKind::loglog_over_one_plus, -1, "-1", "", false,
                "d/dz [-F1(z) - (psi(z)+gammaE-ln2) beta(z) + beta'(z)]"}};
  }
  return d;
}

// ---------------------------------------------------------------------------
// Evaluation.
// ---------------------------------------------------------------------------

struct ContinuationConfig {
  /// Arguments are shifted right until Re z >= shift_target.
  double shift_target = 20;
  unsigned factorial_terms = 30;
  /// Distance to a non-positive integer below which accuracy is flagged.
  double near_pole_distance = 1e-3;
};

/// Forward shift identity F(z+1) = sign * F(z) + inhomogeneity(z).
struct ShiftIdentity {
  int sign = 1;
  ComplexValue inhomogeneity;
  std::string formula;
};

namespace detail {

inline Jet psi_jet(ComplexValue z, unsigned order) {
  Jet j(order);
  double f = 1;
  for (unsigned i = 0; i <= order; ++i) {
    if (i > 1) f *= i;
    j[i] = psi(z, i) / f;
  }
  return j;
}

/// Jet of S1(z-1) = psi(z) + gammaE.
inline Jet harmonic_jet(ComplexValue z, unsigned order) {
  Jet j = psi_jet(z, order);
  j[0] += static_cast<double>(ConstantTable::gamma_e);
  return j;
}

inline Jet beta_jet(ComplexValue z, unsigned order) {
  Jet j(order);
  double f = 1;
  for (unsigned i = 0; i <= order; ++i) {
    if (i > 1) f *= i;
    j[i] = beta_fn(z, i) / f;
  }
  return j;
}

inline int shift_sign(const std::string& id) { return (id == "F0" || id == "F2") ? 1 : -1; }

inline Jet shift_inhomogeneity_jet(const std::string& id, ComplexValue z, unsigned order) {
  const double z2 = static_cast<double>(ConstantTable::zeta2);
  const Jet inv = Jet::reciprocal(order, z);
  if (id == "F0") return inv;
  if (id == "F1") {
    // (ln2 - beta(z+1)) / z
    Jet b = beta_jet(z + 1.0, order) * -1.0;
    b[0] += static_cast<double>(ConstantTable::ln2);
    return b * inv;
  }
  // F2, F3: zeta2/z - (psi(z+1) + gammaE)/z^2
  return inv * z2 - harmonic_jet(z + 1.0, order) * (inv * inv);
}

inline Jet factorial_series_jet(const MellinTerm& t, ComplexValue z, unsigned order, unsigned terms) {
  Jet j(order);
  double f = 1;
  for (unsigned m = 0; m <= order; ++m) {
    if (m > 1) f *= m;
    const auto& s = FactorialSeriesCache::get(t.component, m, terms);
    j[m] = factorial_series_eval(s, z, terms).value / f;
  }
  if (t.plus_subtracted) j[0] -= static_cast<double>(find_component(t.component).mellin_at_one);
  return j;
}

inline Jet large_argument_jet(const std::string& id, ComplexValue z, unsigned order,
                              const ContinuationConfig& cfg);

inline Jet term_jet(const MellinTerm& t, ComplexValue z, unsigned order, const ContinuationConfig& cfg) {
  const double g = static_cast<double>(ConstantTable::gamma_e);
  const double l2 = static_cast<double>(ConstantTable::ln2);
  switch (t.kind) {
    case MellinKind::factorial_series: return factorial_series_jet(t, z, order, cfg.factorial_terms);
    case MellinKind::beta: return beta_jet(z, order);
    case MellinKind::plus_harmonic: return harmonic_jet(z, order);
    case MellinKind::loglog_over_one_plus: {
      // K(z) = M[ln(1-x)/(1+x)] = -F1(z) - (psi(z) + gammaE - ln2) beta(z) + beta'(z); result K'(z)
      const unsigned k = order + 1;
      Jet psi_shifted = psi_jet(z, k);
      psi_shifted[0] += g - l2;
      const Jet b = beta_jet(z, k + 1);
      Jet kj = large_argument_jet("F1", z, k, cfg) * -1.0;
      kj -= psi_shifted * b.truncated(k);
      kj += b.differentiated();
      return kj.differentiated();
    }
    case MellinKind::loglog_over_one_minus_plus: {
      // (psi(z) + gammaE) psi'(z) - psi''(z)/2 - zeta3
      const Jet h = harmonic_jet(z, order + 2);
      const Jet d1 = h.differentiated();
      const Jet d2 = d1.differentiated();
      Jet out = h.truncated(order) * d1.truncated(order) - d2 * 0.5;
      out[0] -= static_cast<double>(ConstantTable::zeta3);
      return out;
    }
  }
  return Jet(order);
}

inline Jet large_argument_jet(const std::string& id, ComplexValue z, unsigned order,
                              const ContinuationConfig& cfg) {
  Jet out(order);
  for (const auto& t : map_branch(id).terms) out += term_jet(t, z, order, cfg) * t.coefficient;
  return out;
}

}  // namespace detail

/// Ingredients of the one-step shift identity at z.
inline ShiftIdentity recursion_shift(const std::string& id, ComplexValue z) {
  require_continuable(id);
  if (is_nonpositive_integer(z)) throw PoleError(z, "shift identity at a pole z = " + format_complex(z, 6));
  ShiftIdentity s;
  s.sign = detail::shift_sign(id);
  s.inhomogeneity = detail::shift_inhomogeneity_jet(id, z, 0)[0];
  if (id == "F0")
    s.formula = "F0(z+1) = F0(z) + 1/z";
  else if (id == "F1")
    s.formula = "F1(z+1) = -F1(z) + (ln2 - beta(z+1))/z";
  else if (id == "F2")
    s.formula = "F2(z+1) = F2(z) + (1/z)[zeta2 - (psi(z+1)+gammaE)/z]";
  else
    s.formula = "F3(z+1) = -F3(z) + (1/z)[zeta2 - (psi(z+1)+gammaE)/z]";
  return s;
}

struct ContinuationResult {
  Jet jet;
  unsigned shifts = 0;
  /// Set within near_pole_distance of a non-positive integer.
  bool degraded_accuracy = false;
};

/// Taylor jet of the Mellin transform of a continuable function at complex z.
inline ContinuationResult evaluate_jet(const std::string& id, ComplexValue z, unsigned order,
                                       const ContinuationConfig& cfg = {}) {
  require_continuable(id);
  if (is_nonpositive_integer(z))
    throw PoleError(z, id + ": pole at z = " + format_complex(z, 6));
  ContinuationResult r;
  r.degraded_accuracy = distance_to_pole(z) < cfg.near_pole_distance;
  const double deficit = cfg.shift_target - z.real();
  r.shifts = deficit > 0 ? static_cast<unsigned>(std::ceil(deficit)) : 0;
  Jet j = detail::large_argument_jet(id, z + static_cast<double>(r.shifts), order, cfg);
  const double sign = detail::shift_sign(id);
  // F(z) = sign * (F(z+1) - r(z))
  for (unsigned s = r.shifts; s-- > 0;)
    j = (j - detail::shift_inhomogeneity_jet(id, z + static_cast<double>(s), order)) * sign;
  r.jet = j;
  return r;
}

inline ComplexValue evaluate_complex(const std::string& id, ComplexValue z, const ContinuationConfig& cfg = {}) {
  return evaluate_jet(id, z, 0, cfg).jet[0];
}

/// d/dz of the continued Mellin transform, from the analytic jet.
inline ComplexValue differentiate(const std::string& id, ComplexValue z, const ContinuationConfig& cfg = {}) {
  return evaluate_jet(id, z, 1, cfg).jet[1];
}

}  // namespace hsum

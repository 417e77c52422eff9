#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "hsum/complex.hpp"
#include "hsum/error.hpp"
#include "hsum/polylog.hpp"
#include "hsum/special_fn.hpp"

namespace hsum {

enum class EndpointMode {
  /// Gauss-Kronrod directly on [0,1]; plus-regularized integrands are refused.
  plain,
  /// Direct on [0,1] with the (x^(N-1) - 1) subtraction applied.
  plus_subtraction,
  /// x = e^-u on (0,1/2] and x = 1 - e^-u on [1/2,1), subtraction applied.
  log_endpoint,
};

struct QuadratureSpec {
  double relative_error = 1e-11;
  double absolute_error = 1e-15;
  unsigned max_subdivisions = 4000;
  EndpointMode mode = EndpointMode::log_endpoint;
};

struct QuadratureResult {
  ComplexValue value;
  double error_estimate = 0;
  unsigned intervals = 0;
};

/// Nonconvergence within the subdivision budget; carries the best estimate.
class QuadratureError : public ResourceError {
public:
  QuadratureError(const std::string& what, QuadratureResult best)
      : ResourceError(what), best_(best) {}
  const QuadratureResult& best() const noexcept { return best_; }

private:
  QuadratureResult best_;
};

namespace detail {
inline double log_x(double x, double one_minus_x) { return x < 0.5 ? std::log(x) : std::log1p(-one_minus_x); }
}  // namespace detail

/// Integrand of a Mellin transform. For plus-regularized integrands the value is
/// (x^(N-1) - 1)/(x - 1) * weight(x), otherwise x^(N-1) * weight(x).
/// weight receives both x and 1 - x so it can stay accurate near x = 1.
struct MellinIntegrand {
  std::string id;
  std::string description;
  bool plus = false;
  std::function<double(double x, double one_minus_x)> weight;
};

inline const std::vector<MellinIntegrand>& mellin_integrands() {
  static const std::vector<MellinIntegrand> t = {
      {"F0", "1/(x-1)_+", true, [](double, double) { return 1.0; }},
      {"F1", "ln(1+x)/(1+x)", false, [](double x, double) { return std::log1p(x) / (1 + x); }},
      {"F2", "Li2(x)/(x-1)_+", true, [](double x, double y) { return li2(x, y); }},
      {"F3", "Li2(x)/(1+x)", false, [](double x, double y) { return li2(x, y) / (1 + x); }},
      {"one", "1", false, [](double, double) { return 1.0; }},
      {"x", "x", false, [](double x, double) { return x; }},
      {"one_minus_x", "1-x", false, [](double, double y) { return y; }},
      {"log_half_1px_over_1px", "ln((1+x)/2)/(1+x)", false,
       [](double x, double y) { return std::log1p(-0.5 * y) / (1 + x); }},
      {"li2_1mx_over_1px", "Li2(1-x)/(1+x)", false, [](double x, double y) { return li2(y, x) / (1 + x); }},
      {"li2_1mx_over_1mx", "Li2(1-x)/(1-x)", false, [](double x, double y) { return li2(y, x) / y; }},
      {"log_1mx", "ln(1-x)", false, [](double, double y) { return std::log(y); }},
      {"log_1px", "ln(1+x)", false, [](double x, double) { return std::log1p(x); }},
      {"log_1mx2", "ln(1-x^2)", false, [](double x, double y) { return std::log(y) + std::log1p(x); }},
      {"log_1mx_over_1px", "ln(1-x)/(1+x)", false, [](double x, double y) { return std::log(y) / (1 + x); }},
      {"loglog_over_1px", "ln(x)ln(1-x)/(1+x)", false,
       [](double x, double y) { return detail::log_x(x, y) * std::log(y) / (1 + x); }},
      // (x^(N-1) - 1)/(1 - x^2) = -(x^(N-1) - 1)/(x - 1) * 1/(1+x)
      {"plus_1mx2", "1/(1-x^2)_+", true, [](double x, double) { return -1.0 / (1 + x); }},
  };
  return t;
}

inline const MellinIntegrand& find_integrand(const std::string& id) {
  for (const auto& f : mellin_integrands())
    if (f.id == id) return f;
  throw CapabilityError("no quadrature integrand for '" + id + "'");
}

namespace detail {

// 21-point Gauss-Kronrod; gauss weights belong to the odd-indexed nodes.
inline constexpr double kKronrodNodes[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr double kKronrodWeights[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525634454, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr double kGaussWeights[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a, b;
  ComplexValue value;
  double error;
  double magnitude;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gauss_kronrod(const F& f, double a, double b) {
  const double center = 0.5 * (a + b), half = 0.5 * (b - a);
  const ComplexValue fc = f(center);
  ComplexValue kronrod = fc * kKronrodWeights[10];
  ComplexValue gauss = 0;
  double magnitude = std::abs(fc) * kKronrodWeights[10];
  for (int i = 0; i < 10; ++i) {
    const double dx = half * kKronrodNodes[i];
    const ComplexValue f1 = f(center - dx), f2 = f(center + dx);
    kronrod += kKronrodWeights[i] * (f1 + f2);
    magnitude += kKronrodWeights[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * (f1 + f2);
  }
  Segment s{a, b, kronrod * half, 0, magnitude * std::fabs(half)};
  // |K - G| without the usual power-law rescaling: conservative for smooth integrands
  s.error = std::abs((kronrod - gauss) * half) + 50 * std::numeric_limits<double>::epsilon() * s.magnitude;
  return s;
}

/// Adaptive bisection on several starting intervals sharing one error budget.
template <class F>
QuadratureResult adaptive(const F& f, const std::vector<std::pair<double, double>>& ranges,
                          const QuadratureSpec& spec) {
  std::priority_queue<Segment> heap;
  for (const auto& [a, b] : ranges) heap.push(gauss_kronrod(f, a, b));
  auto totals = [&heap] {
    auto copy = heap;
    ComplexValue v = 0;
    double e = 0;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().error;
      copy.pop();
    }
    return std::make_pair(v, e);
  };
  ComplexValue value = 0;
  double error = 0;
  {
    auto [v, e] = totals();
    value = v;
    error = e;
  }
  unsigned intervals = static_cast<unsigned>(heap.size());
  while (error > std::max(spec.absolute_error, spec.relative_error * std::abs(value))) {
    if (intervals >= spec.max_subdivisions)
      throw QuadratureError("quadrature did not converge within " + std::to_string(spec.max_subdivisions) +
                                " intervals",
                            {value, error, intervals});
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = gauss_kronrod(f, worst.a, mid), right = gauss_kronrod(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
    if (intervals % 64 == 0) {
      auto [v, e] = totals();  // refresh to shed accumulated rounding
      value = v;
      error = e;
    }
  }
  auto [v, e] = totals();
  return {v, e, intervals};
}

/// (x^(N-1) - 1)/(x - 1) from x and 1 - x, stable as x -> 1.
inline ComplexValue plus_kernel(ComplexValue n, double x, double one_minus_x) {
  if (one_minus_x == 0) return n - 1.0;
  if (x == 0) return n.real() > 1 ? ComplexValue(1) / one_minus_x : ComplexValue(0);
  const ComplexValue w = (n - 1.0) * log_x(x, one_minus_x);
  // complex expm1
  const double ea = std::expm1(w.real());
  const double sb = std::sin(0.5 * w.imag());
  const ComplexValue em1(ea - 2 * (ea + 1) * sb * sb, (ea + 1) * std::sin(w.imag()));
  return em1 / (-one_minus_x);
}

inline ComplexValue mellin_power(ComplexValue n, double x, double one_minus_x) {
  if (x == 0) return 0;
  return std::exp((n - 1.0) * log_x(x, one_minus_x));
}

}  // namespace detail

/// Adaptive-quadrature Mellin transform int_0^1 x^(N-1) f(x) dx, Re N > 0.
inline QuadratureResult mellin_numeric(const MellinIntegrand& f, ComplexValue n, const QuadratureSpec& spec = {}) {
  if (!(n.real() > 0)) throw UsageError("mellin_numeric requires Re N > 0");
  auto integrand = [&](double x, double y) -> ComplexValue {
    if (f.plus) return detail::plus_kernel(n, x, y) * f.weight(x, y);
    return detail::mellin_power(n, x, y) * f.weight(x, y);
  };
  switch (spec.mode) {
    case EndpointMode::plain:
      if (f.plus) throw CapabilityError("plain mode cannot integrate the plus-regularized " + f.id);
      [[fallthrough]];
    case EndpointMode::plus_subtraction:
      return detail::adaptive([&](double x) { return integrand(x, 1 - x); }, {{0.0, 0.5}, {0.5, 1.0}}, spec);
    case EndpointMode::log_endpoint:
      break;
  }
  const double ln2 = static_cast<double>(ConstantTable::ln2);
  // decay e^(-min(Re N,1) u) on the x = e^-u side, e^-u on the other
  const double upper0 = ln2 + 48.0 / std::min(n.real(), 1.0);
  const double upper1 = 48.0;
  auto near_zero = [&](double u) {
    const double x = std::exp(-u);
    return integrand(x, -std::expm1(-u)) * x;
  };
  auto near_one = [&](double u) {
    const double y = std::exp(-u);
    return integrand(-std::expm1(-u), y) * y;
  };
  // one adaptive pass per side, errors added
  std::vector<std::pair<double, double>> r0, r1;
  for (double a = ln2; a < upper0; a = std::min(upper0, a * 2 + 1)) r0.emplace_back(a, std::min(upper0, a * 2 + 1));
  for (double a = ln2; a < upper1; a = std::min(upper1, a * 2 + 1)) r1.emplace_back(a, std::min(upper1, a * 2 + 1));
  QuadratureSpec half = spec;
  half.relative_error *= 0.5;
  half.absolute_error *= 0.5;
  // both sides always run so a failure still reports the whole integral
  QuadratureResult side[2];
  std::string failure;
  const auto run = [&](auto f, const std::vector<std::pair<double, double>>& ranges, QuadratureResult& out) {
    try {
      out = detail::adaptive(f, ranges, half);
    } catch (const QuadratureError& e) {
      out = e.best();
      failure = e.what();
    }
  };
  run(near_zero, r0, side[0]);
  run(near_one, r1, side[1]);
  const QuadratureResult total{side[0].value + side[1].value, side[0].error_estimate + side[1].error_estimate,
                               side[0].intervals + side[1].intervals};
  if (!failure.empty()) throw QuadratureError(failure, total);
  return total;
}

inline QuadratureResult mellin_numeric(const std::string& id, ComplexValue n, const QuadratureSpec& spec = {}) {
  return mellin_numeric(find_integrand(id), n, spec);
}

}  // namespace hsum

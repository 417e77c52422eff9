#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <vector>

#include "hsum/error.hpp"
#include "hsum/index.hpp"
#include "hsum/rational.hpp"

namespace hsum {

namespace detail {

inline Rational inverse_power(unsigned k, unsigned p) {
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), k, p);
  return Rational(Integer(1), den);
}

inline bool negative_term(int letter, std::uint64_t k) { return letter < 0 && (k & 1u); }

/// S_v(k) for k = 0..n. Works from the innermost index outwards, so each
/// level reuses the previous level's table (the memo keyed by suffix and k).
inline std::vector<Rational> nested_table(const IndexVector& v, unsigned n) {
  std::vector<Rational> inner(n + 1, Rational(1));
  std::vector<Rational> level(n + 1);
  for (std::size_t i = v.depth(); i-- > 0;) {
    const int letter = v[i];
    const auto p = static_cast<unsigned>(std::abs(letter));
    level[0] = 0;
    for (unsigned k = 1; k <= n; ++k) {
      Rational term = inverse_power(k, p) * inner[k];
      if (negative_term(letter, k))
        level[k] = level[k - 1] - term;
      else
        level[k] = level[k - 1] + term;
    }
    std::swap(inner, level);
  }
  return inner;
}

}  // namespace detail

struct EvalOptions {
  /// Upper bound on weight(v) * N for exact evaluation.
  std::uint64_t work_budget = 200000;
};

/// Shared memo of exact values S_v(0..n) per index vector. Entries only grow.
class SumCache {
public:
  std::shared_ptr<const std::vector<Rational>> lookup(const IndexVector& v, unsigned n) const {
    std::shared_lock lock(mutex_);
    auto it = table_.find(v.entries());
    if (it != table_.end() && it->second->size() > n) return it->second;
    return nullptr;
  }

  std::shared_ptr<const std::vector<Rational>> store(const IndexVector& v,
                                                     std::vector<Rational> values) {
    auto ptr = std::make_shared<const std::vector<Rational>>(std::move(values));
    std::unique_lock lock(mutex_);
    auto& slot = table_[v.entries()];
    if (!slot || slot->size() < ptr->size()) slot = ptr;
    return slot;
  }

private:
  mutable std::shared_mutex mutex_;
  std::map<std::vector<int>, std::shared_ptr<const std::vector<Rational>>> table_;
};

inline void check_budget(const IndexVector& v, std::uint64_t n, const EvalOptions& opt) {
  if (static_cast<std::uint64_t>(v.weight()) * n > opt.work_budget)
    throw ResourceError("exact evaluation of S_{" + v.str() + "}(" + std::to_string(n) +
                        ") exceeds the work budget " + std::to_string(opt.work_budget));
}

/// Exact S_v(N); S_v(0) = 0.
inline Rational eval_exact(const IndexVector& v, unsigned n, const EvalOptions& opt = {},
                           SumCache* cache = nullptr) {
  if (v.empty()) throw UsageError("eval_exact: empty index vector");
  if (n == 0) return 0;
  check_budget(v, n, opt);
  if (cache) {
    if (auto hit = cache->lookup(v, n)) return (*hit)[n];
    return (*cache->store(v, detail::nested_table(v, n)))[n];
  }
  return detail::nested_table(v, n)[n];
}

/// Exact S_v(k) for every k = 0..n.
inline std::vector<Rational> eval_exact_table(const IndexVector& v, unsigned n,
                                              const EvalOptions& opt = {}) {
  if (v.empty()) throw UsageError("eval_exact: empty index vector");
  check_budget(v, n, opt);
  return detail::nested_table(v, n);
}

inline constexpr unsigned kOracleMaxN = 200;
inline constexpr std::size_t kOracleMaxDepth = 4;

/// Brute-force S_v(N): explicit nested loops over N >= k1 >= k2 >= ... >= kd >= 1,
/// each term accumulated on the common denominator lcm(1..N)^weight.
inline Rational eval_oracle(const IndexVector& v, unsigned n) {
  if (v.empty()) throw UsageError("eval_oracle: empty index vector");
  if (n > kOracleMaxN || v.depth() > kOracleMaxDepth)
    throw UsageError("eval_oracle limited to N <= 200 and depth <= 4");
  if (n == 0) return 0;

  Integer lcm = 1;
  for (unsigned k = 2; k <= n; ++k) mpz_lcm_ui(lcm.get_mpz_t(), lcm.get_mpz_t(), k);
  Integer common;
  mpz_pow_ui(common.get_mpz_t(), lcm.get_mpz_t(), v.weight());

  const std::size_t d = v.depth();
  std::array<unsigned, kOracleMaxDepth> power{};
  for (std::size_t i = 0; i < d; ++i) power[i] = static_cast<unsigned>(std::abs(v[i]));

  Integer total = 0;
  std::array<Integer, kOracleMaxDepth + 1> denom;
  std::array<int, kOracleMaxDepth + 1> sign{};
  denom[0] = 1;
  sign[0] = 1;
  Integer quotient, factor;

  // level i chooses k_{i+1} in 1..upper
  auto loop = [&](auto&& self, std::size_t level, unsigned upper) -> void {
    for (unsigned k = 1; k <= upper; ++k) {
      mpz_ui_pow_ui(factor.get_mpz_t(), k, power[level]);
      denom[level + 1] = denom[level] * factor;
      sign[level + 1] = detail::negative_term(v[level], k) ? -sign[level] : sign[level];
      if (level + 1 == d) {
        mpz_divexact(quotient.get_mpz_t(), common.get_mpz_t(), denom[level + 1].get_mpz_t());
        if (sign[level + 1] < 0)
          total -= quotient;
        else
          total += quotient;
      } else {
        self(self, level + 1, k);
      }
    }
  };
  loop(loop, 0, n);

  Rational out(total, common);
  out.canonicalize();
  return out;
}

/// Floating evaluation with a rigorous-style running error bound.
struct FloatResult {
  long double value = 0;
  long double error_bound = 0;
  unsigned precision_bits = 53;
};

namespace detail {

template <class Real>
struct FloatLevel {
  std::vector<Real> value, abs, err;
};

/// Compensated (Neumaier) accumulation of S_{suffix(i)}(k) for k = 0..n.
template <class Real>
FloatLevel<Real> float_table(const IndexVector& v, unsigned n) {
  const Real eps = std::numeric_limits<Real>::epsilon();
  FloatLevel<Real> inner{std::vector<Real>(n + 1, Real(1)), std::vector<Real>(n + 1, Real(1)),
                         std::vector<Real>(n + 1, Real(0))};
  FloatLevel<Real> level{std::vector<Real>(n + 1), std::vector<Real>(n + 1),
                         std::vector<Real>(n + 1)};
  for (std::size_t i = v.depth(); i-- > 0;) {
    const int letter = v[i];
    const int p = std::abs(letter);
    Real sum = 0, comp = 0, abs_sum = 0, err = 0;
    level.value[0] = level.abs[0] = level.err[0] = 0;
    for (unsigned k = 1; k <= n; ++k) {
      const Real w = Real(1) / std::pow(Real(k), Real(p));
      Real term = w * inner.value[k];
      if (negative_term(letter, k)) term = -term;
      const Real t = sum + term;
      if (std::fabs(sum) >= std::fabs(term))
        comp += (sum - t) + term;
      else
        comp += (term - t) + sum;
      sum = t;
      abs_sum += w * inner.abs[k];
      err += w * (inner.err[k] + 4 * eps * inner.abs[k]);
      level.value[k] = sum + comp;
      level.abs[k] = abs_sum;
      level.err[k] = err + 2 * eps * std::fabs(sum) + Real(k) * eps * eps * abs_sum;
    }
    std::swap(inner, level);
  }
  return inner;
}

}  // namespace detail

/// Floating S_v(N). precision_bits <= 53 runs in double, otherwise long double.
inline FloatResult eval_float(const IndexVector& v, unsigned n, unsigned precision_bits = 53) {
  if (v.empty()) throw UsageError("eval_float: empty index vector");
  if (n < 1) throw UsageError("eval_float requires N >= 1");
  FloatResult r;
  if (precision_bits <= 53) {
    auto t = detail::float_table<double>(v, n);
    r = {t.value[n], t.err[n], 53};
  } else {
    auto t = detail::float_table<long double>(v, n);
    r = {t.value[n], t.err[n], std::numeric_limits<long double>::digits};
  }
  return r;
}

struct LimitResult {
  enum class Kind { finite, divergent };
  Kind kind = Kind::finite;
  long double value = 0;
  long double error_estimate = 0;
  bool finite() const noexcept { return kind == Kind::finite; }
};

namespace detail {

/// Solves the square system a x = b in place (partial pivoting).
inline std::vector<long double> solve_dense(std::vector<std::vector<long double>> a,
                                            std::vector<long double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const long double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<long double> x(n);
  for (std::size_t c = n; c-- > 0;) {
    long double s = b[c];
    for (std::size_t k = c + 1; k < n; ++k) s -= a[c][k] * x[k];
    x[c] = s / a[c][c];
  }
  return x;
}

/// Fits S(N) = L + sum_{j=1..orders} sum_{p=0..logs} c_{jp} ln^p N / N^j through the
/// largest-N ladder points and returns L.
inline long double extrapolate(const std::vector<unsigned>& ladder,
                               const std::vector<long double>& values, unsigned orders,
                               unsigned logs) {
  const std::size_t unknowns = 1 + static_cast<std::size_t>(orders) * (logs + 1);
  const std::size_t first = ladder.size() - unknowns;
  const long double n0 = ladder[first];
  std::vector<std::vector<long double>> a(unknowns, std::vector<long double>(unknowns));
  std::vector<long double> b(unknowns);
  for (std::size_t r = 0; r < unknowns; ++r) {
    const long double n = ladder[first + r];
    const long double ln = std::log(n) / std::log(n0);
    a[r][0] = 1;
    std::size_t c = 1;
    for (unsigned j = 1; j <= orders; ++j)
      for (unsigned p = 0; p <= logs; ++p) a[r][c++] = std::pow(n0 / n, j) * std::pow(ln, p);
    b[r] = values[first + r];
  }
  return solve_dense(std::move(a), std::move(b))[0];
}

}  // namespace detail

/// Extrapolation ladder N = 2^7 .. 2^14.
inline std::vector<unsigned> limit_ladder() {
  std::vector<unsigned> out;
  for (unsigned e = 7; e <= 14; ++e) out.push_back(1u << e);
  return out;
}

/// N -> infinity limit of S_v(N); divergent exactly when the outer index is 1.
inline LimitResult limit_value(const IndexVector& v) {
  if (v.empty()) throw UsageError("limit_value: empty index vector");
  LimitResult out;
  if (v.front() == 1) {
    out.kind = LimitResult::Kind::divergent;
    return out;
  }
  const auto ladder = limit_ladder();
  const auto table = detail::float_table<long double>(v, ladder.back());
  std::vector<long double> values;
  for (unsigned n : ladder) values.push_back(table.value[n]);

  // ln N powers in the tail come from inner indices equal to 1
  unsigned logs = 0;
  for (std::size_t i = 1; i < v.depth(); ++i) logs += v[i] == 1;
  const std::size_t points = ladder.size() - 1;
  unsigned orders = 1;
  while (orders < 6 && 1 + (orders + 1) * (logs + 1) <= points) ++orders;
  if (1 + orders * (logs + 1) > points) {
    // too many log powers for the ladder: fall back to the plain tail value
    out.value = values.back();
    out.error_estimate = std::fabs(values.back() - values[values.size() - 2]);
    return out;
  }
  out.value = detail::extrapolate(ladder, values, orders, logs);
  const long double previous =
      orders > 1 ? detail::extrapolate(ladder, values, orders - 1, logs) : values.back();
  out.error_estimate = std::fabs(out.value - previous) + table.err[ladder.back()];
  return out;
}

}  // namespace hsum

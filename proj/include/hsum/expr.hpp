#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hsum/error.hpp"
#include "hsum/exact_eval.hpp"
#include "hsum/index.hpp"
#include "hsum/rational.hpp"

namespace hsum {

/// Symbolic constants that may multiply a harmonic sum: zeta2.., ln2, gammaE.
/// Powers are keyed by symbol name.
using ConstMonomial = std::map<std::string, unsigned>;

inline bool is_known_constant(const std::string& sym) {
  if (sym == "ln2" || sym == "gammaE") return true;
  if (sym.size() >= 5 && sym.compare(0, 4, "zeta") == 0) {
    const std::string k = sym.substr(4);
    return std::all_of(k.begin(), k.end(), [](unsigned char ch) { return std::isdigit(ch) != 0; }) &&
           std::stoi(k) >= 2;
  }
  return false;
}

/// One term's symbolic part: a constant monomial times a product of sums.
struct TermKey {
  ConstMonomial constants;
  /// Harmonic-sum factors, sorted under WordOrder; empty for a pure constant.
  std::vector<IndexVector> sums;

  friend bool operator==(const TermKey& a, const TermKey& b) {
    return a.constants == b.constants && a.sums == b.sums;
  }
  friend bool operator<(const TermKey& a, const TermKey& b) {
    if (a.sums.size() != b.sums.size()) return a.sums.size() < b.sums.size();
    const WordOrder less;
    for (std::size_t i = 0; i < a.sums.size(); ++i) {
      if (less(a.sums[i], b.sums[i])) return true;
      if (less(b.sums[i], a.sums[i])) return false;
    }
    return a.constants < b.constants;
  }
};

/// Exact rational-linear combination of (constants x harmonic sums) terms,
/// all sums sharing one implicit argument N. Zero coefficients are never stored.
class HarmonicExpr {
public:
  using Terms = std::map<TermKey, Rational>;

  HarmonicExpr() = default;

  static HarmonicExpr sum(const IndexVector& v, const Rational& c = 1) {
    HarmonicExpr e;
    e.add_term(TermKey{{}, {v}}, c);
    return e;
  }
  static HarmonicExpr constant(const Rational& c) {
    HarmonicExpr e;
    e.add_term(TermKey{}, c);
    return e;
  }

  void add_term(TermKey key, const Rational& c) {
    if (c == 0) return;
    std::sort(key.sums.begin(), key.sums.end(), WordOrder{});
    for (auto it = key.constants.begin(); it != key.constants.end();)
      it = it->second == 0 ? key.constants.erase(it) : std::next(it);
    auto [it, inserted] = terms_.try_emplace(std::move(key), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Coefficient of a single bare sum S_v.
  Rational coefficient(const IndexVector& v) const {
    auto it = terms_.find(TermKey{{}, {v}});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Largest number of sum factors in any term.
  std::size_t max_factors() const {
    std::size_t m = 0;
    for (const auto& [k, c] : terms_) m = std::max(m, k.sums.size());
    return m;
  }

  bool has_constants() const {
    return std::any_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return !t.first.constants.empty(); });
  }

  HarmonicExpr& operator+=(const HarmonicExpr& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  HarmonicExpr& operator-=(const HarmonicExpr& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  HarmonicExpr& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  friend HarmonicExpr operator+(HarmonicExpr a, const HarmonicExpr& b) { return a += b; }
  friend HarmonicExpr operator-(HarmonicExpr a, const HarmonicExpr& b) { return a -= b; }
  friend HarmonicExpr operator*(HarmonicExpr a, const Rational& s) { return a *= s; }

  /// Formal product: constants multiply, sum factors are concatenated (not stuffled).
  friend HarmonicExpr operator*(const HarmonicExpr& a, const HarmonicExpr& b) {
    HarmonicExpr out;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        TermKey k = ka;
        for (const auto& [sym, pw] : kb.constants) k.constants[sym] += pw;
        k.sums.insert(k.sums.end(), kb.sums.begin(), kb.sums.end());
        out.add_term(std::move(k), ca * cb);
      }
    return out;
  }

  friend bool operator==(const HarmonicExpr& a, const HarmonicExpr& b) {
    return a.terms_ == b.terms_;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      std::string coeff = to_string(c);
      if (!first) {
        if (coeff.front() == '-') {
          out += " - ";
          coeff.erase(0, 1);
        } else {
          out += " + ";
        }
      }
      first = false;
      std::string factors;
      for (const auto& [sym, pw] : k.constants)
        factors += (factors.empty() ? "" : "*") + sym + (pw > 1 ? "^" + std::to_string(pw) : "");
      for (const auto& s : k.sums) factors += (factors.empty() ? "" : "*") + ("S[" + s.str() + "]");
      if (factors.empty())
        out += coeff;
      else if (coeff == "1")
        out += factors;
      else if (coeff == "-1")
        out += "-" + factors;
      else
        out += coeff + "*" + factors;
    }
    return out;
  }

private:
  Terms terms_;
};

/// Exact value at integer N; the expression must be free of symbolic constants.
inline Rational eval_exact(const HarmonicExpr& e, unsigned n, SumCache* cache = nullptr) {
  Rational total = 0;
  for (const auto& [k, c] : e.terms()) {
    if (!k.constants.empty())
      throw CapabilityError("exact evaluation of an expression with symbolic constants");
    Rational prod = c;
    for (const auto& s : k.sums) prod *= eval_exact(s, n, EvalOptions{}, cache);
    total += prod;
  }
  return total;
}

}  // namespace hsum

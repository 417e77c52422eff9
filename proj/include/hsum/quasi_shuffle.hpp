#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "hsum/error.hpp"
#include "hsum/expr.hpp"
#include "hsum/index.hpp"
#include "hsum/rational.hpp"

namespace hsum {

inline constexpr unsigned kMaxProductWeight = 8;

namespace detail {

using WordCombination = std::map<std::vector<int>, Rational>;

inline int merge_letters(int x, int y) {
  const int magnitude = std::abs(x) + std::abs(y);
  return ((x < 0) != (y < 0)) ? -magnitude : magnitude;
}

// Quasi-shuffle on words a[i..], b[j..]:
//   (x,A) * (y,B) = (x, A*(y,B)) + (y, (x,A)*B) - (x.y, A*B)
inline const WordCombination& stuffle_words(
    const std::vector<int>& a, std::size_t i, const std::vector<int>& b, std::size_t j,
    std::map<std::pair<std::size_t, std::size_t>, WordCombination>& memo) {
  auto key = std::make_pair(i, j);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  WordCombination out;
  if (i == a.size()) {
    out[std::vector<int>(b.begin() + static_cast<std::ptrdiff_t>(j), b.end())] = 1;
  } else if (j == b.size()) {
    out[std::vector<int>(a.begin() + static_cast<std::ptrdiff_t>(i), a.end())] = 1;
  } else {
    auto prefixed = [&out](int letter, const WordCombination& tail, const Rational& sign) {
      for (const auto& [w, c] : tail) {
        std::vector<int> word;
        word.reserve(w.size() + 1);
        word.push_back(letter);
        word.insert(word.end(), w.begin(), w.end());
        auto& slot = out[word];
        slot += sign * c;
      }
    };
    prefixed(a[i], stuffle_words(a, i + 1, b, j, memo), 1);
    prefixed(b[j], stuffle_words(a, i, b, j + 1, memo), 1);
    prefixed(merge_letters(a[i], b[j]), stuffle_words(a, i + 1, b, j + 1, memo), -1);
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  }
  return memo.emplace(key, std::move(out)).first->second;
}

}  // namespace detail

/// S_a(N) * S_b(N) as a linear combination of single harmonic sums.
inline HarmonicExpr stuffle_product(const IndexVector& a, const IndexVector& b) {
  if (a.empty() || b.empty()) throw UsageError("stuffle_product: empty index vector");
  if (a.weight() + b.weight() > kMaxProductWeight)
    throw UsageError("stuffle_product: total weight above " + std::to_string(kMaxProductWeight));
  std::map<std::pair<std::size_t, std::size_t>, detail::WordCombination> memo;
  const auto& words = detail::stuffle_words(a.entries(), 0, b.entries(), 0, memo);
  HarmonicExpr out;
  for (const auto& [w, c] : words) out.add_term(TermKey{{}, {IndexVector(w)}}, c);
  return out;
}

/// One stuffle relation S_a * S_b - stuffle_product(a, b) = 0.
struct Relation {
  IndexVector a, b;
  HarmonicExpr linear;  // stuffle_product(a, b)

  /// The relation as a single expression equal to zero.
  HarmonicExpr expression() const {
    HarmonicExpr e;
    e.add_term(TermKey{{}, {a, b}}, 1);
    return e - linear;
  }
};

/// All stuffle relations among weight-w sums generated by pairs of lower weight.
struct RelationSystem {
  unsigned weight = 0;
  std::vector<Relation> relations;
};

inline RelationSystem build_relations(unsigned w) {
  if (w < 2 || w > 6) throw UsageError("build_relations: weight must lie in 2..6");
  RelationSystem sys;
  sys.weight = w;
  for (unsigned wa = 1; 2 * wa <= w; ++wa) {
    const auto left = enumerate_sums(wa);
    const auto right = enumerate_sums(w - wa);
    for (std::size_t i = 0; i < left.size(); ++i)
      for (std::size_t j = (2 * wa == w ? i : 0); j < right.size(); ++j)
        sys.relations.push_back({left[i], right[j], stuffle_product(left[i], right[j])});
  }
  return sys;
}

/// Elimination column order: non-Lyndon words first (depth descending, then
/// WordOrder), Lyndon words last.
inline std::vector<IndexVector> elimination_order(unsigned w) {
  auto words = enumerate_sums(w);
  std::stable_sort(words.begin(), words.end(), [](const IndexVector& x, const IndexVector& y) {
    const bool lx = is_lyndon(x), ly = is_lyndon(y);
    if (lx != ly) return !lx;
    if (!lx && x.depth() != y.depth()) return x.depth() > y.depth();
    return WordOrder{}(x, y);
  });
  return words;
}

/// Row-reduced form of a RelationSystem.
struct Elimination {
  unsigned weight = 0;
  std::size_t rank = 0;
  std::vector<IndexVector> pivots;  // eliminated sums
  std::vector<IndexVector> free;    // surviving (independent) sums
  /// For each pivot: S_pivot expressed through free sums and pair products.
  std::map<std::vector<int>, HarmonicExpr> solution;
};

inline Elimination eliminate(const RelationSystem& sys) {
  const auto columns = elimination_order(sys.weight);
  std::unordered_map<IndexVector, std::size_t> column_of;
  for (std::size_t c = 0; c < columns.size(); ++c) column_of.emplace(columns[c], c);

  struct Row {
    std::map<std::size_t, Rational> lhs;  // column -> coefficient in stuffle(a, b)
    std::map<std::size_t, Rational> rhs;  // relation id -> coefficient of S_a * S_b
  };
  std::vector<Row> rows;
  rows.reserve(sys.relations.size());
  for (std::size_t r = 0; r < sys.relations.size(); ++r) {
    Row row;
    for (const auto& [k, c] : sys.relations[r].linear.terms()) row.lhs[column_of.at(k.sums.front())] = c;
    row.rhs[r] = 1;
    rows.push_back(std::move(row));
  }

  auto axpy = [](std::map<std::size_t, Rational>& y, const Rational& f,
                 const std::map<std::size_t, Rational>& x) {
    for (const auto& [k, v] : x) {
      auto [it, inserted] = y.try_emplace(k, 0);
      it->second -= f * v;
      if (it->second == 0) y.erase(it);
    }
  };

  Elimination out;
  out.weight = sys.weight;
  std::vector<bool> used(rows.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> pivot_rows;  // (column, row)
  for (std::size_t c = 0; c < columns.size(); ++c) {
    std::size_t best = rows.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (used[r] || !rows[r].lhs.count(c)) continue;
      if (best == rows.size() || rows[r].lhs.size() + rows[r].rhs.size() <
                                     rows[best].lhs.size() + rows[best].rhs.size())
        best = r;
    }
    if (best == rows.size()) {
      out.free.push_back(columns[c]);
      continue;
    }
    used[best] = true;
    Row& p = rows[best];
    const Rational inv = 1 / p.lhs.at(c);
    for (auto& [k, v] : p.lhs) v *= inv;
    for (auto& [k, v] : p.rhs) v *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == best) continue;
      auto it = rows[r].lhs.find(c);
      if (it == rows[r].lhs.end()) continue;
      const Rational f = it->second;
      axpy(rows[r].lhs, f, p.lhs);
      axpy(rows[r].rhs, f, p.rhs);
    }
    pivot_rows.emplace_back(c, best);
    out.pivots.push_back(columns[c]);
  }
  out.rank = out.pivots.size();

  for (const auto& [c, r] : pivot_rows) {
    HarmonicExpr e;
    for (const auto& [rel, coeff] : rows[r].rhs)
      e.add_term(TermKey{{}, {sys.relations[rel].a, sys.relations[rel].b}}, coeff);
    for (const auto& [col, coeff] : rows[r].lhs)
      if (col != c) e.add_term(TermKey{{}, {columns[col]}}, -coeff);
    out.solution.emplace(columns[c].entries(), std::move(e));
  }
  return out;
}

struct ReduceOptions {
  /// Weight-6 reduction builds an ~800 x 486 exact system; opt-in only.
  bool allow_weight6 = false;
};

/// Reduces sums to polynomials in Lyndon-word sums. Eliminations are built lazily
/// per weight and shared; safe for concurrent use.
class BasisReducer {
public:
  static BasisReducer& shared() {
    static BasisReducer instance;
    return instance;
  }

  std::shared_ptr<const Elimination> elimination(unsigned w) {
    std::shared_ptr<Slot> slot;
    {
      std::lock_guard lock(mutex_);
      auto& s = slots_[w];
      if (!s) s = std::make_shared<Slot>();
      slot = s;
    }
    std::call_once(slot->once, [&] {
      slot->value = std::make_shared<const Elimination>(eliminate(build_relations(w)));
    });
    return slot->value;
  }

  HarmonicExpr reduce(const IndexVector& v, const ReduceOptions& opt = {}) {
    if (v.empty()) throw UsageError("reduce_to_basis: empty index vector");
    const unsigned w = v.weight();
    if (w > 6 || (w == 6 && !opt.allow_weight6))
      throw CapabilityError("reduce_to_basis supports weight <= 5 (weight 6 behind an opt-in flag)");
    if (is_lyndon(v)) return HarmonicExpr::sum(v);
    {
      std::lock_guard lock(mutex_);
      if (auto it = memo_.find(v.entries()); it != memo_.end()) return it->second;
    }
    const auto elim = elimination(w);
    const HarmonicExpr& raw = elim->solution.at(v.entries());
    HarmonicExpr out;
    for (const auto& [k, c] : raw.terms()) {
      HarmonicExpr term = HarmonicExpr::constant(c);
      for (const auto& s : k.sums) term = term * reduce(s, opt);
      out += term;
    }
    std::lock_guard lock(mutex_);
    memo_.emplace(v.entries(), out);
    return out;
  }

private:
  struct Slot {
    std::once_flag once;
    std::shared_ptr<const Elimination> value;
  };
  std::mutex mutex_;
  std::map<unsigned, std::shared_ptr<Slot>> slots_;
  std::map<std::vector<int>, HarmonicExpr> memo_;
};

inline HarmonicExpr reduce_to_basis(const IndexVector& v, const ReduceOptions& opt = {}) {
  return BasisReducer::shared().reduce(v, opt);
}

}  // namespace hsum

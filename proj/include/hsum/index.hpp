#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "hsum/error.hpp"
#include "hsum/rational.hpp"

namespace hsum {

/// Index list (a1,...,ad) of a nested harmonic sum S_{a1,...,ad}(N).
///
/// Entries are nonzero signed integers; the sign selects an alternating
/// factor and the absolute value the power of the summation variable.
class IndexVector {
public:
  IndexVector() = default;
  IndexVector(std::initializer_list<int> entries) : entries_(entries) { validate(); }
  explicit IndexVector(std::vector<int> entries) : entries_(std::move(entries)) { validate(); }

  const std::vector<int>& entries() const noexcept { return entries_; }
  std::size_t depth() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  int front() const { return entries_.front(); }

  unsigned weight() const noexcept {
    unsigned w = 0;
    for (int a : entries_) w += static_cast<unsigned>(std::abs(a));
    return w;
  }

  /// Indices after the first one; the inner sum of the recursion.
  IndexVector tail() const {
    IndexVector t;
    if (!entries_.empty()) t.entries_.assign(entries_.begin() + 1, entries_.end());
    return t;
  }

  IndexVector suffix(std::size_t from) const {
    IndexVector t;
    t.entries_.assign(entries_.begin() + static_cast<std::ptrdiff_t>(from), entries_.end());
    return t;
  }

  /// Prepend a letter.
  IndexVector prepended(int letter) const {
    IndexVector t;
    t.entries_.reserve(entries_.size() + 1);
    t.entries_.push_back(letter);
    t.entries_.insert(t.entries_.end(), entries_.begin(), entries_.end());
    t.validate();
    return t;
  }

  bool contains(int letter) const {
    return std::find(entries_.begin(), entries_.end(), letter) != entries_.end();
  }

  /// Canonical text form "a1,a2,...,ad".
  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(entries_[i]);
    }
    return out;
  }

  static IndexVector parse(std::string_view text) {
    std::vector<int> entries;
    if (text.empty()) throw UsageError("empty index vector");
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t comma = text.find(',', pos);
      if (comma == std::string_view::npos) comma = text.size();
      std::string_view tok = text.substr(pos, comma - pos);
      if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
      int value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
        throw UsageError("malformed index vector '" + std::string(text) + "'");
      entries.push_back(value);
      pos = comma + 1;
    }
    return IndexVector(std::move(entries));
  }

  friend bool operator==(const IndexVector&, const IndexVector&) = default;

private:
  void validate() const {
    for (int a : entries_)
      if (a == 0) throw UsageError("index entries must be nonzero");
  }

  std::vector<int> entries_;
};

/// Letter order: |a| ascending, negative before positive; -1 < 1 < -2 < 2 < ...
/// Version 1 of the order; basis selection depends on it.
struct LetterOrder {
  static constexpr int version = 1;
  bool operator()(int a, int b) const noexcept {
    const int aa = std::abs(a), ab = std::abs(b);
    if (aa != ab) return aa < ab;
    return a < b;
  }
};

/// Lexicographic extension of LetterOrder; a proper prefix precedes the word.
struct WordOrder {
  bool operator()(const IndexVector& a, const IndexVector& b) const noexcept {
    return std::lexicographical_compare(a.entries().begin(), a.entries().end(), b.entries().begin(),
                                        b.entries().end(), LetterOrder{});
  }
};

struct IndexVectorHash {
  std::size_t operator()(const IndexVector& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int a : v.entries()) h = (h ^ static_cast<std::size_t>(a + 1024)) * 1099511628211ull;
    return h;
  }
};

inline unsigned weight(const IndexVector& v) { return v.weight(); }

inline constexpr unsigned kMaxEnumerationWeight = 8;

namespace detail {

inline void compositions(unsigned remaining, bool allow_minus_one, std::vector<int>& prefix,
                         std::vector<IndexVector>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (unsigned part = 1; part <= remaining; ++part) {
    const int p = static_cast<int>(part);
    for (int letter : {-p, p}) {
      if (letter == -1 && !allow_minus_one) continue;
      prefix.push_back(letter);
      compositions(remaining - part, allow_minus_one, prefix, out);
      prefix.pop_back();
    }
  }
}

inline void check_weight_bound(unsigned w) {
  if (w < 1 || w > kMaxEnumerationWeight)
    throw UsageError("weight must lie in 1.." + std::to_string(kMaxEnumerationWeight) + ", got " +
                     std::to_string(w));
}

}  // namespace detail

/// All index vectors of exact weight w, sorted under WordOrder.
inline std::vector<IndexVector> enumerate_sums(unsigned w, bool allow_minus_one = true) {
  detail::check_weight_bound(w);
  std::vector<IndexVector> out;
  std::vector<int> prefix;
  detail::compositions(w, allow_minus_one, prefix, out);
  std::sort(out.begin(), out.end(), WordOrder{});
  return out;
}

/// 2 * 3^(w-1).
inline std::uint64_t count_total(unsigned w) {
  if (w < 1 || w > 40) throw UsageError("count_total: weight must lie in 1..40");
  std::uint64_t c = 2;
  for (unsigned i = 1; i < w; ++i) c *= 3;
  return c;
}

/// Integer form of ((1-sqrt2)^w + (1+sqrt2)^w)/2: b_w = 2 b_{w-1} + b_{w-2}, b_1 = 1, b_2 = 3.
inline std::uint64_t count_no_minus_one(unsigned w) {
  if (w < 1 || w > 45) throw UsageError("count_no_minus_one: weight must lie in 1..45");
  std::uint64_t prev = 1, cur = 1;  // b_0 = 1 continues the recurrence backwards
  for (unsigned i = 1; i < w; ++i) {
    const std::uint64_t next = 2 * cur + prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline int moebius(unsigned n) {
  if (n == 1) return 1;
  int mu = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

struct BasisCount {
  std::uint64_t value = 0;
  /// Value produced by the Moebius formula before any special case.
  std::int64_t raw = 0;
  /// True when value != raw; only w = 1 (where the formula counts 2 but the set holds (1)).
  bool special_cased = false;
};

/// (2/w) * sum_{d | w} mu(w/d) N(d), with N = count_no_minus_one.
inline BasisCount count_basis_no_minus_one(unsigned w) {
  if (w < 1 || w > 45) throw UsageError("count_basis_no_minus_one: weight must lie in 1..45");
  Integer acc = 0;
  for (unsigned d = 1; d <= w; ++d) {
    if (w % d) continue;
    const int mu = moebius(w / d);
    if (mu == 0) continue;
    Integer term(std::to_string(count_no_minus_one(d)));
    acc += mu * term;
  }
  acc *= 2;
  if (acc % w != 0) throw ResourceError("count_basis_no_minus_one: non-integral result");
  acc /= w;
  BasisCount out;
  out.raw = static_cast<std::int64_t>(acc.get_si());
  out.value = static_cast<std::uint64_t>(out.raw);
  if (w == 1) {
    out.value = 1;
    out.special_cased = true;
  }
  return out;
}

/// True iff v is strictly smaller than each of its proper suffixes.
inline bool is_lyndon(const IndexVector& v) {
  if (v.empty()) return false;
  const WordOrder less;
  for (std::size_t i = 1; i < v.depth(); ++i)
    if (!less(v, v.suffix(i))) return false;
  return true;
}

inline std::vector<IndexVector> lyndon_words(unsigned w, bool allow_minus_one = true) {
  auto all = enumerate_sums(w, allow_minus_one);
  std::vector<IndexVector> out;
  std::copy_if(all.begin(), all.end(), std::back_inserter(out), is_lyndon);
  return out;
}

/// Cumulative counts over weights 1..max_weight.
struct ReductionRow {
  unsigned weight = 0;
  std::uint64_t sums = 0;    // cumulative #c
  std::uint64_t basis = 0;   // cumulative #r
};

/// Cumulative (#c, #r) table. Basis counts come from Lyndon enumeration.
inline std::vector<ReductionRow> reduction_table(unsigned max_weight, bool allow_minus_one) {
  detail::check_weight_bound(max_weight);
  std::vector<ReductionRow> rows;
  std::uint64_t c = 0, r = 0;
  for (unsigned w = 1; w <= max_weight; ++w) {
    c += allow_minus_one ? count_total(w) : count_no_minus_one(w);
    r += lyndon_words(w, allow_minus_one).size();
    rows.push_back({w, c, r});
  }
  return rows;
}

}  // namespace hsum

template <>
struct std::hash<hsum::IndexVector> : hsum::IndexVectorHash {};

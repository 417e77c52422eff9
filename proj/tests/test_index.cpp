#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "hsum/index.hpp"

using namespace hsum;

TEST(IndexVector, WeightAndDepth) {
  EXPECT_EQ(weight(IndexVector{2, 3}), 5u);
  EXPECT_EQ(weight(IndexVector{1}), 1u);
  EXPECT_EQ(weight(IndexVector{-1, 1, -2}), 4u);
  EXPECT_EQ((IndexVector{-1, 1, -2}).depth(), 3u);
}

TEST(IndexVector, RejectsZeroEntries) {
  EXPECT_THROW(IndexVector({1, 0}), UsageError);
  EXPECT_THROW(IndexVector::parse("2,0"), UsageError);
}

TEST(IndexVector, ParseAndPrint) {
  const auto v = IndexVector::parse("2,-3,1");
  EXPECT_EQ(v, (IndexVector{2, -3, 1}));
  EXPECT_EQ(v.str(), "2,-3,1");
  EXPECT_EQ(IndexVector::parse("+2").str(), "2");
  for (const char* bad : {"", ",", "1,", "a", "1 ,2", "1,,2"}) EXPECT_THROW(IndexVector::parse(bad), UsageError) << bad;
}

TEST(LetterOrder, AbsoluteValueThenNegativeFirst) {
  const LetterOrder lt;
  EXPECT_TRUE(lt(-1, 1));
  EXPECT_TRUE(lt(1, -2));
  EXPECT_TRUE(lt(-2, 2));
  EXPECT_FALSE(lt(2, -2));
  EXPECT_FALSE(lt(3, 3));
}

TEST(WordOrder, ProperPrefixIsSmaller) {
  const WordOrder lt;
  EXPECT_TRUE(lt(IndexVector{1}, IndexVector{1, 1}));
  EXPECT_FALSE(lt(IndexVector{1, 1}, IndexVector{1}));
  EXPECT_TRUE(lt(IndexVector{-1, 2}, IndexVector{1}));
}

TEST(Enumerate, SmallWeights) {
  EXPECT_EQ(enumerate_sums(1).size(), 2u);
  const auto w2 = enumerate_sums(2);
  const std::set<std::string> got = [&] {
    std::set<std::string> s;
    for (const auto& v : w2) s.insert(v.str());
    return s;
  }();
  EXPECT_EQ(got, (std::set<std::string>{"2", "-2", "1,1", "1,-1", "-1,1", "-1,-1"}));
  const auto r2 = enumerate_sums(2, false);
  ASSERT_EQ(r2.size(), 3u);
  for (const auto& v : r2) EXPECT_FALSE(v.contains(-1));
}

TEST(Enumerate, SortedAndBounded) {
  const auto w4 = enumerate_sums(4);
  EXPECT_TRUE(std::is_sorted(w4.begin(), w4.end(), WordOrder{}));
  EXPECT_THROW(enumerate_sums(0), UsageError);
  EXPECT_THROW(enumerate_sums(9), UsageError);
  EXPECT_EQ(enumerate_sums(8).size(), 4374u);
}

TEST(Counts, MatchEnumeration) {
  for (unsigned w = 1; w <= 6; ++w) {
    EXPECT_EQ(enumerate_sums(w, true).size(), count_total(w)) << w;
    EXPECT_EQ(enumerate_sums(w, false).size(), count_no_minus_one(w)) << w;
    for (const auto& v : enumerate_sums(w)) EXPECT_EQ(v.weight(), w);
  }
  EXPECT_EQ(count_total(1), 2u);
  EXPECT_EQ(count_total(3), 18u);
  EXPECT_EQ(count_total(6), 486u);
  EXPECT_EQ(count_no_minus_one(2), 3u);
  EXPECT_EQ(count_no_minus_one(3), 7u);
  EXPECT_EQ(count_no_minus_one(6), 99u);
}

TEST(Counts, ClosedFormAgreesWithRecurrence) {
  for (unsigned w = 1; w <= 20; ++w) {
    const long double closed = 0.5L * (std::pow(1 - std::sqrt(2.0L), w) + std::pow(1 + std::sqrt(2.0L), w));
    EXPECT_EQ(static_cast<std::uint64_t>(std::llround(closed)), count_no_minus_one(w)) << w;
  }
}

TEST(Counts, Moebius) {
  const int expected[] = {0, 1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
  for (unsigned n = 1; n <= 12; ++n) EXPECT_EQ(moebius(n), expected[n]) << n;
}

TEST(Counts, BasisFormula) {
  EXPECT_EQ(count_basis_no_minus_one(4).value, 7u);
  EXPECT_EQ(count_basis_no_minus_one(5).value, 16u);
  EXPECT_EQ(count_basis_no_minus_one(6).value, 30u);
  const auto one = count_basis_no_minus_one(1);
  EXPECT_EQ(one.value, 1u);
  EXPECT_EQ(one.raw, 2);
  EXPECT_TRUE(one.special_cased);
  for (unsigned w = 2; w <= 8; ++w) {
    const auto b = count_basis_no_minus_one(w);
    EXPECT_FALSE(b.special_cased);
    EXPECT_EQ(b.value, lyndon_words(w, false).size()) << w;
  }
}

TEST(Lyndon, Predicate) {
  EXPECT_FALSE(is_lyndon(IndexVector{1, 1}));
  EXPECT_TRUE(is_lyndon(IndexVector{-1, 1}));
  EXPECT_FALSE(is_lyndon(IndexVector{1, -1}));
  EXPECT_TRUE(is_lyndon(IndexVector{3}));
}

TEST(Lyndon, PerWeightCounts) {
  const std::size_t full[] = {2, 3, 8, 18, 48, 116};
  const std::size_t restricted[] = {1, 2, 4, 7, 16, 30};
  for (unsigned w = 1; w <= 6; ++w) {
    EXPECT_EQ(lyndon_words(w, true).size(), full[w - 1]) << w;
    EXPECT_EQ(lyndon_words(w, false).size(), restricted[w - 1]) << w;
  }
  std::set<std::string> w2;
  for (const auto& v : lyndon_words(2)) w2.insert(v.str());
  EXPECT_EQ(w2, (std::set<std::string>{"2", "-2", "-1,1"}));
}

// Brute-force Lyndon test: strictly smaller than every nontrivial rotation, and aperiodic.
static bool lyndon_by_rotation(const std::vector<int>& w) {
  const WordOrder lt;
  const IndexVector v(w);
  for (std::size_t r = 1; r < w.size(); ++r) {
    std::vector<int> rot(w.begin() + static_cast<long>(r), w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + static_cast<long>(r));
    if (!lt(v, IndexVector(rot))) return false;
  }
  return true;
}

TEST(Lyndon, AgreesWithRotationDefinitionAndOneRepresentativePerClass) {
  for (unsigned w = 1; w <= 6; ++w) {
    std::set<std::vector<int>> classes;
    for (const auto& v : enumerate_sums(w)) {
      EXPECT_EQ(is_lyndon(v), lyndon_by_rotation(v.entries())) << v.str();
      if (!is_lyndon(v)) continue;
      auto canon = v.entries();
      auto rot = canon;
      for (std::size_t r = 0; r < rot.size(); ++r) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        canon = std::min(canon, rot);
      }
      EXPECT_TRUE(classes.insert(canon).second) << "two Lyndon words in one rotation class: " << v.str();
    }
  }
}

TEST(ReductionTable, Cumulative) {
  const auto full = reduction_table(6, true);
  const auto restricted = reduction_table(6, false);
  const std::uint64_t c1[] = {2, 8, 26, 80, 242, 728}, r1[] = {2, 5, 13, 31, 79, 195};
  const std::uint64_t c2[] = {1, 4, 11, 28, 69, 168}, r2[] = {1, 3, 7, 14, 30, 60};
  for (unsigned i = 0; i < 6; ++i) {
    EXPECT_EQ(full[i].sums, c1[i]);
    EXPECT_EQ(full[i].basis, r1[i]);
    EXPECT_EQ(restricted[i].sums, c2[i]);
    EXPECT_EQ(restricted[i].basis, r2[i]);
  }
}

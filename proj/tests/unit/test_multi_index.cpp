#include "holocontact/multi_index.hpp"

#include <gtest/gtest.h>

using namespace holocontact;

TEST(MultiIndex, OrderAndArithmetic) {
  MultiIndex a{2, 0, 1}, b{1, 0, 1};
  EXPECT_EQ(a.order(), 3);
  EXPECT_EQ(a - b, (MultiIndex{1, 0, 0}));
  EXPECT_EQ(a + b, (MultiIndex{3, 0, 2}));
  EXPECT_TRUE(b.dominated_by(a));
  EXPECT_FALSE(a.dominated_by(b));
  EXPECT_DOUBLE_EQ(a.factorial(), 2.0);
  EXPECT_EQ(MultiIndex::unit(3, 1, 2), (MultiIndex{0, 2, 0}));
}

TEST(IndexSet, GradedLexOrder) {
  const auto s = IndexSet::get(2, 2);
  ASSERT_EQ(s->size(), 6u);
  const std::vector<MultiIndex> want{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  for (std::size_t k = 0; k < want.size(); ++k) {
    EXPECT_EQ((*s)[k], want[k]);
    EXPECT_EQ(s->position(want[k]), k);
  }
  EXPECT_EQ(s->position(MultiIndex{3, 0}), IndexSet::npos);
  EXPECT_EQ(s->prefix_size(1), 3u);
}

TEST(IndexSet, LowerOrdersArePrefixes) {
  for (std::size_t m = 1; m <= 3; ++m) {
    const auto big = IndexSet::get(m, 4);
    for (int d = 0; d < 4; ++d) {
      const auto small = IndexSet::get(m, d);
      for (std::size_t k = 0; k < small->size(); ++k) EXPECT_EQ((*small)[k], (*big)[k]);
      EXPECT_EQ(count_indices(m, d), small->size());
    }
  }
}

TEST(IndexSet, SplitsCoverAllDecompositions) {
  const auto s = IndexSet::get(2, 3);
  for (std::size_t p = 0; p < s->size(); ++p) {
    const MultiIndex& I = (*s)[p];
    std::size_t expect = 1;
    for (std::size_t k = 0; k < 2; ++k) expect *= I[k] + 1;
    EXPECT_EQ(s->splits(p).size(), expect);
    for (const auto& sp : s->splits(p)) EXPECT_EQ((*s)[sp.left] + (*s)[sp.right], I);
  }
}

TEST(IndexSet, SharedInstances) { EXPECT_EQ(IndexSet::get(3, 2).get(), IndexSet::get(3, 2).get()); }

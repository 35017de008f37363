#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace pivotlex;
using namespace pivotlex::testing;

TEST(CartesianProduct, WithinAndAcross) {
  const auto one = {ab("a1", "b1"), ab("a2", "b1"), cb("c1", "b1"), cb("c2", "b1"), cb("c3", "b1")};
  auto d = dicts_of(one);
  const auto single = build_transgraphs(d.ab, d.cb);
  EXPECT_EQ(cartesian_product(single, CartesianScope::Within).size(), 6u);

  d = dicts_of({ab("a1", "b1"), ab("a2", "b1"), cb("c1", "b1"), cb("c2", "b1"), cb("c3", "b1"),
                ab("x1", "y1"), ab("x2", "y1"), cb("z1", "y1"), cb("z2", "y1"), cb("z3", "y1")});
  const auto two = build_transgraphs(d.ab, d.cb);
  ASSERT_EQ(two.graphs.size(), 2u);
  EXPECT_EQ(cartesian_product(two, CartesianScope::Within).size(), 12u);
  EXPECT_EQ(cartesian_product(two, CartesianScope::Across).size(), 24u);
  EXPECT_TRUE(cartesian_product(TransgraphSet{}, CartesianScope::Across).empty());
}

TEST(InverseConsultation, SharedPivotCount) {
  const auto d = dicts_of({ab("a", "b1"), ab("a", "b2"), cb("c", "b1"), cb("c", "b2"), cb("d", "b1")});
  const auto ic = inverse_consultation(d.ab, d.cb);
  EXPECT_TRUE(ic.contains({wa("a"), wc("c")}));
  EXPECT_FALSE(ic.contains({wa("a"), wc("d")}));
  EXPECT_EQ(ic.size(), 1u);
  EXPECT_EQ(inverse_consultation(d.ab, d.cb, IcConfig{1}).size(), 2u);
  EXPECT_THROW(inverse_consultation(d.ab, d.cb, IcConfig{0}), Error);
}

TEST(Baselines, InclusionChain) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = dicts_of(random_edges(rng, 5, 5, 0.35));
    const auto set = build_transgraphs(d.ab, d.cb);
    const auto within = cartesian_product(set, CartesianScope::Within);
    const auto across = cartesian_product(set, CartesianScope::Across);
    auto subset = [](const PairSet& x, const PairSet& y) {
      for (const auto& p : x.pairs) {
        if (!y.contains(p)) return false;
      }
      return true;
    };
    EXPECT_TRUE(subset(within, across));
    PairSet prev = inverse_consultation(d.ab, d.cb, IcConfig{1});
    EXPECT_TRUE(subset(prev, within));
    // IC(1) is exactly the connected pairs, which are the candidates.
    std::set<WordPair> cands;
    for (const auto& tg : set.graphs) {
      const auto c = candidate_pairs(generate_candidates(tg));
      cands.insert(c.begin(), c.end());
    }
    EXPECT_EQ(prev.pairs, cands);
    for (int delta = 2; delta <= 4; ++delta) {
      const auto cur = inverse_consultation(d.ab, d.cb, IcConfig{delta});
      EXPECT_TRUE(subset(cur, prev));
      prev = cur;
    }
  }
}

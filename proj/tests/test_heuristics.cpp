#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"

using namespace pivotlex;
using namespace pivotlex::testing;

namespace {

const TranslationPairCandidate& find_cand(const std::vector<TranslationPairCandidate>& cands,
                                          const std::string& a, const std::string& c) {
  for (const auto& cand : cands) {
    if (cand.w_a == wa(a) && cand.w_c == wc(c)) return cand;
  }
  throw Error("candidate not found");
}

// Coexistence by direct enumeration over the raw edge list.
double coex_oracle(const Transgraph& tg, const Word& a, const Word& c) {
  auto weight_into = [&](Side side, const Word& pivot) {
    double s = 0;
    for (const auto& [k, e] : tg.edges()) {
      if (k.side == side && k.pivot == pivot) s += 1.0 / e.prob;
    }
    return s;
  };
  auto weight_of = [&](const Word& np) {
    double s = 0;
    for (const auto& [k, e] : tg.edges()) {
      if (k.non_pivot == np) s += 1.0 / e.prob;
    }
    return s;
  };
  double fwd = 0, bwd = 0;
  for (const auto& b : tg.b_words) {
    if (!tg.find(Side::AB, a, b) || !tg.find(Side::BC, c, b)) continue;
    fwd += (1.0 / weight_into(Side::AB, b)) * (1.0 / weight_of(c));
    bwd += (1.0 / weight_into(Side::BC, b)) * (1.0 / weight_of(a));
  }
  return std::min(1.0, fwd * bwd);
}

}  // namespace

TEST(ConditionalTables, MarginalAndJoint) {
  const auto tg = graph_of({ab("a1", "b1"), ab("a1", "b2"), ab("a2", "b1"), cb("c1", "b1")});
  const ConditionalTables t(tg);
  EXPECT_DOUBLE_EQ(t.marginal(wa("a1"), Side::AB), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(t.marginal(wa("a2"), Side::AB), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(t.joint(tg, wa("a1"), wb("b1"), Side::AB), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(t.from_a(wb("b1")), 2.0);
  EXPECT_DOUBLE_EQ(t.from_b(wa("a1")), 2.0);
}

TEST(GenerateCandidates, AsymmetricPair) {
  const auto cands = generate_candidates(graph_of(asymmetric_pair_edges()));
  ASSERT_EQ(cands.size(), 2u);
  const auto& c1 = find_cand(cands, "a1", "c1");
  EXPECT_EQ(c1.paths.size(), 2u);
  EXPECT_EQ(c1.full_path_count(), 2u);
  EXPECT_TRUE(c1.new_edges.empty());
  const auto& c2 = find_cand(cands, "a1", "c2");
  EXPECT_EQ(c2.paths.size(), 2u);
  EXPECT_EQ(c2.full_path_count(), 1u);
  ASSERT_EQ(c2.new_edges.size(), 1u);
  EXPECT_EQ(c2.key_of(c2.new_edges[0]), (EdgeKey{Side::BC, wc("c2"), wb("b2")}));
}

TEST(GenerateCandidates, ChainAndNoAWords) {
  const auto chain = generate_candidates(graph_of({ab("a1", "b1"), cb("c1", "b1")}));
  ASSERT_EQ(chain.size(), 1u);
  EXPECT_EQ(chain[0].paths.size(), 1u);
  Transgraph only_c;
  only_c.add_edge(Edge{wc("c1"), wb("b1"), Side::BC, EdgeStatus::Existing, 0, 1.0});
  EXPECT_TRUE(generate_candidates(only_c).empty());
}

TEST(CognateProbabilities, SymmetricUnambiguousPair) {
  const auto cands = score_candidates(graph_of({ab("a1", "b1"), cb("c1", "b1")}), HeuristicSelection::parse("H1234"));
  ASSERT_EQ(cands.size(), 1u);
  EXPECT_DOUBLE_EQ(cands[0].h_coex, 1.0);
  EXPECT_DOUBLE_EQ(cands[0].h_miss_cont, 0.0);
  EXPECT_DOUBLE_EQ(cands[0].h_polysemy, 0.0);
  EXPECT_DOUBLE_EQ(cands[0].p_shared_senses, 1.0);
}

TEST(CognateProbabilities, AsymmetricPairCoexistence) {
  const auto tg = graph_of(asymmetric_pair_edges());
  const auto cands = score_candidates(tg, HeuristicSelection::parse("H1"));
  EXPECT_DOUBLE_EQ(find_cand(cands, "a1", "c1").h_coex, 0.75);
  EXPECT_DOUBLE_EQ(find_cand(cands, "a1", "c1").edge_cost, 0.25);
}

TEST(CognateProbabilities, PolysemousPivot) {
  const auto cands = score_candidates(graph_of({ab("a1", "b1"), cb("c1", "b1"), cb("c2", "b1")}),
                                      HeuristicSelection::parse("H3"));
  const auto& c = find_cand(cands, "a1", "c1");
  EXPECT_DOUBLE_EQ(c.p_shared_senses, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(c.h_polysemy, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(c.edge_cost, 2.0 / 3.0);
}

TEST(CognateProbabilities, ZeroPathsIsAnError) {
  const auto tg = graph_of({ab("a1", "b1"), cb("c1", "b1")});
  TranslationPairCandidate empty;
  empty.w_a = wa("a1");
  empty.w_c = wc("c1");
  EXPECT_THROW(compute_cognate_probabilities(empty, ConditionalTables(tg)), Error);
}

TEST(Lcsr, Examples) {
  EXPECT_DOUBLE_EQ(lcsr("abc", "abc"), 1.0);
  EXPECT_DOUBLE_EQ(lcsr("kitab", "kitap"), 0.8);
  EXPECT_DOUBLE_EQ(lcsr("a", "xyz"), 0.0);
  EXPECT_THROW(lcsr("", "a"), Error);
  // Code points, not bytes: "é" vs "e" share nothing, "café"/"cafe" share 3 of 4.
  EXPECT_DOUBLE_EQ(lcsr("caf\xC3\xA9", "cafe"), 0.75);
}

TEST(Lcsr, SymmetricAndIdentity) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> len(1, 8), ch(0, 3);
  for (int i = 0; i < 500; ++i) {
    std::string a, b;
    for (int k = len(rng); k > 0; --k) a += static_cast<char>('a' + ch(rng));
    for (int k = len(rng); k > 0; --k) b += static_cast<char>('a' + ch(rng));
    EXPECT_DOUBLE_EQ(lcsr(a, b), lcsr(b, a));
    EXPECT_EQ(lcsr(a, b) == 1.0, a == b);
  }
}

TEST(EdgeCost, Examples) {
  TranslationPairCandidate c;
  c.h_coex = 1.0;
  c.h_form_sim = 1.0;
  EXPECT_DOUBLE_EQ(compute_edge_cost(c, HeuristicSelection::parse("H14")), 0.0);
  c.h_coex = 0.75;
  EXPECT_DOUBLE_EQ(compute_edge_cost(c, HeuristicSelection::parse("H1")), 0.25);
  c.h_form_sim = 0.8;
  EXPECT_NEAR(compute_edge_cost(c, HeuristicSelection::parse("H14")), 0.252, 1e-12);
  c.h_miss_cont = 0.5;
  c.h_polysemy = 0.125;
  EXPECT_NEAR(compute_edge_cost(c, HeuristicSelection::parse("H1234")), 0.25 + 0.5 + 0.125 + 0.002, 1e-12);
}

TEST(EdgeCost, Monotone) {
  const auto sel = HeuristicSelection::parse("H1234");
  TranslationPairCandidate base;
  base.h_coex = 0.5;
  base.h_miss_cont = 0.3;
  base.h_polysemy = 0.2;
  base.h_form_sim = 0.4;
  const double c0 = compute_edge_cost(base, sel);
  auto up = base;
  up.h_coex = 0.6;
  EXPECT_LE(compute_edge_cost(up, sel), c0);
  up = base;
  up.h_form_sim = 0.9;
  EXPECT_LE(compute_edge_cost(up, sel), c0);
  up = base;
  up.h_miss_cont = 0.4;
  EXPECT_GE(compute_edge_cost(up, sel), c0);
  up = base;
  up.h_polysemy = 0.5;
  EXPECT_GE(compute_edge_cost(up, sel), c0);
}

TEST(HeuristicSelection, Grammar) {
  EXPECT_EQ(HeuristicSelection::parse("H14").to_string(), "H14");
  EXPECT_EQ(HeuristicSelection::parse("H1234").to_string(), "H1234");
  for (const char* bad : {"", "H", "H0", "H5", "H41", "H11", "h1", "X1"}) {
    EXPECT_THROW(HeuristicSelection::parse(bad), Error) << bad;
  }
}

TEST(CognateProbabilities, PropertiesOnRandomGraphs) {
  std::mt19937 rng(19);
  const auto sel = HeuristicSelection::parse("H1234");
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = dicts_of(random_edges(rng, 6, 5, 0.35));
    for (const auto& base : build_transgraphs(d.ab, d.cb).graphs) {
      // Second round exercises proposed edges with prob < 1.
      const auto round = run_cycles(base, 2, sel);
      for (const auto* tg : {&base, &round.graph}) {
        const ConditionalTables tables(*tg);
        for (const auto& cand : score_candidates(*tg, sel)) {
          EXPECT_GE(cand.h_coex, 0.0);
          EXPECT_LE(cand.h_coex, 1.0);
          EXPECT_GE(cand.h_miss_cont, 0.0);
          EXPECT_GE(cand.h_polysemy, 0.0);
          EXPECT_LE(cand.h_polysemy, 1.0);
          // Low-probability proposed edges inflate indegrees until 2^n overflows.
          if (tg == &base) {
            EXPECT_GT(cand.p_shared_senses, 0.0);
            EXPECT_LT(cand.h_polysemy, 1.0);
          }
          EXPECT_DOUBLE_EQ(cand.h_polysemy, 1.0 - cand.p_shared_senses);
          EXPECT_NEAR(cand.h_coex, coex_oracle(*tg, cand.w_a, cand.w_c), 1e-12);
          if (cand.full_path_count() == cand.paths.size()) { EXPECT_EQ(cand.h_miss_cont, 0.0); }

          bool unambiguous = true;
          for (const auto& p : cand.paths) {
            unambiguous = unambiguous && std::max(tables.from_a(p.pivot) + (p.ab_edge ? 0 : 1),
                                                  tables.from_c(p.pivot) + (p.bc_edge ? 0 : 1)) <= 1.0 + 1e-9;
          }
          EXPECT_EQ(cand.p_shared_senses == 1.0, unambiguous);
        }
      }
    }
  }
}

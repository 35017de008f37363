#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pivotlex/pivotlex.hpp"

namespace pivotlex::testing {

inline const LanguageTag kA{"a"};
inline const LanguageTag kB{"b"};
inline const LanguageTag kC{"c"};

inline Word wa(const std::string& s) { return {kA, s}; }
inline Word wb(const std::string& s) { return {kB, s}; }
inline Word wc(const std::string& s) { return {kC, s}; }

struct EdgeSpec {
  Side side;
  std::string non_pivot;
  std::string pivot;
};

inline EdgeSpec ab(std::string a, std::string b) { return {Side::AB, std::move(a), std::move(b)}; }
inline EdgeSpec cb(std::string c, std::string b) { return {Side::BC, std::move(c), std::move(b)}; }

struct DictPair {
  BilingualDictionary ab{kA, kB, {}};
  BilingualDictionary cb{kC, kB, {}};
};

inline DictPair dicts_of(const std::vector<EdgeSpec>& edges) {
  DictPair d;
  for (const auto& e : edges) {
    if (e.side == Side::AB) {
      d.ab.entries.emplace(wa(e.non_pivot), wb(e.pivot));
    } else {
      d.cb.entries.emplace(wc(e.non_pivot), wb(e.pivot));
    }
  }
  return d;
}

// Single transgraph with only input edges; throws unless the edges are connected.
inline Transgraph graph_of(const std::vector<EdgeSpec>& edges) {
  const auto d = dicts_of(edges);
  auto set = build_transgraphs(d.ab, d.cb);
  if (set.graphs.size() != 1) throw Error("fixture is not a single component");
  return set.graphs.front();
}

// Two pivots; c2 reaches a1 through b1 only: a1-{b1,b2}, b1-{c1,c2}, b2-c1.
inline std::vector<EdgeSpec> asymmetric_pair_edges() {
  return {ab("a1", "b1"), ab("a1", "b2"), cb("c1", "b1"), cb("c2", "b1"), cb("c1", "b2")};
}

// Same shape with c2 also on b2.
inline std::vector<EdgeSpec> symmetric_pair_edges() {
  auto e = asymmetric_pair_edges();
  e.push_back(cb("c2", "b2"));
  return e;
}

// Cognate (w1a, w2c) over pivots b1..b3; w3c on all three pivots,
// w4c on two, w1c on one.
inline std::vector<EdgeSpec> three_pivot_edges() {
  return {ab("w1", "b1"), ab("w1", "b2"), ab("w1", "b3"), cb("w2", "b1"), cb("w2", "b2"),
          cb("w2", "b3"), cb("w3", "b1"), cb("w3", "b2"), cb("w3", "b3"), cb("w4", "b1"),
          cb("w4", "b2"), cb("w1", "b1")};
}

// Marginal example: a1-b1, a1-b2, a2-b1.
inline std::vector<EdgeSpec> marginal_edges() { return {ab("a1", "b1"), ab("a1", "b2"), ab("a2", "b1")}; }

// Random connected-ish graph over small vocabularies; may yield several components.
inline std::vector<EdgeSpec> random_edges(std::mt19937& rng, int max_words = 4, int max_pivots = 4,
                                          double density = 0.4) {
  std::uniform_int_distribution<int> words(1, max_words), pivots(1, max_pivots);
  std::bernoulli_distribution keep(density);
  const int na = words(rng), nc = words(rng), nb = pivots(rng);
  std::vector<EdgeSpec> out;
  for (int b = 0; b < nb; ++b) {
    for (int a = 0; a < na; ++a) {
      if (keep(rng)) out.push_back(ab("a" + std::to_string(a), "b" + std::to_string(b)));
    }
    for (int c = 0; c < nc; ++c) {
      if (keep(rng)) out.push_back(cb("c" + std::to_string(c), "b" + std::to_string(b)));
    }
  }
  if (out.empty()) {
    out.push_back(ab("a0", "b0"));
    out.push_back(cb("c0", "b0"));
  }
  return out;
}

// Random WPMaxSAT instance over `n` variables. Weights are multiples of 0.01 so
// that ties are common and the tie-break is exercised.
inline CnfFormula random_formula(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> var(1, n), len(1, 3), hard_count(0, n), soft_count(1, 2 * n),
      weight(1, 300);
  std::bernoulli_distribution sign(0.5);
  auto clause = [&](std::optional<double> w) {
    std::vector<int> lits;
    const int k = len(rng);
    for (int i = 0; i < k; ++i) {
      const int v = var(rng);
      bool clash = false;
      for (int l : lits) clash = clash || std::abs(l) == v;
      if (!clash) lits.push_back(sign(rng) ? v : -v);
    }
    return WeightedClause::make(std::move(lits), w);
  };
  CnfFormula cnf;
  cnf.num_vars = n;
  const int h = hard_count(rng), s = soft_count(rng);
  for (int i = 0; i < h; ++i) cnf.hard.push_back(clause(std::nullopt));
  for (int i = 0; i < s; ++i) cnf.soft.push_back(clause(weight(rng) / 100.0));
  return cnf;
}

// Planted family i: A-word "fa<i>", C-word "fc<i>", private pivots p<i>_0..p<i>_{k-1}.
// Consecutive families in a chain also share a pivot "s<i>", so the transgraph
// holds cross-family candidates that need new edges. With synonyms, a C-side
// synonym "fs<i>" is attached to the family's first private pivot and, for
// even i, also its second.
struct PlantedFamilies {
  std::vector<EdgeSpec> edges;
  PairSet cognates{kA, kC, {}};
  PairSet synonyms{kA, kC, {}};
};

inline PlantedFamilies planted_families(int families, int chain, int pivots_per_family,
                                        bool with_synonyms) {
  PlantedFamilies out;
  for (int i = 0; i < families; ++i) {
    const std::string id = std::to_string(i);
    const std::string a = "fa" + id, c = "fc" + id;
    out.cognates.pairs.emplace(wa(a), wc(c));
    for (int k = 0; k < pivots_per_family; ++k) {
      const std::string p = "p" + id + "_" + std::to_string(k);
      out.edges.push_back(ab(a, p));
      out.edges.push_back(cb(c, p));
    }
    const bool linked = chain > 1 && (i % chain) != chain - 1 && i + 1 < families;
    if (linked) {
      const std::string s = "s" + id, next = std::to_string(i + 1);
      for (const auto& w : {a, "fa" + next}) out.edges.push_back(ab(w, s));
      for (const auto& w : {c, "fc" + next}) out.edges.push_back(cb(w, s));
    }
    if (with_synonyms) {
      const std::string syn = "fs" + id;
      out.synonyms.pairs.emplace(wa(a), wc(syn));
      out.edges.push_back(cb(syn, "p" + id + "_0"));
      if (i % 2 == 0 && pivots_per_family > 1) out.edges.push_back(cb(syn, "p" + id + "_1"));
    }
  }
  return out;
}

inline PairSet pair_set(const std::vector<InducedPair>& pairs) { return to_pair_set(pairs, kA, kC); }

inline std::set<WordPair> candidate_pairs(const std::vector<TranslationPairCandidate>& cands) {
  std::set<WordPair> out;
  for (const auto& c : cands) out.insert(c.pair());
  return out;
}

// True when no word occurs in two pairs.
inline bool is_matching(const std::vector<InducedPair>& pairs) {
  std::set<Word> seen;
  for (const auto& p : pairs) {
    if (!seen.insert(p.w_a).second || !seen.insert(p.w_c).second) return false;
  }
  return true;
}

}  // namespace pivotlex::testing

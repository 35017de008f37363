#pragma once

#include <map>
#include <set>

#include "pivotlex/lexicon_io.hpp"
#include "pivotlex/transgraph.hpp"

namespace pivotlex {

enum class CartesianScope { Within, Across };

/// Within: A-words x C-words of each transgraph. Across: all A-words x all
/// C-words of the given transgraphs.
inline PairSet cartesian_product(const TransgraphSet& set, CartesianScope scope) {
  PairSet out;
  if (set.graphs.empty()) return out;
  out.lang_a = set.graphs.front().lang_a;
  out.lang_c = set.graphs.front().lang_c;
  if (scope == CartesianScope::Within) {
    for (const auto& tg : set.graphs) {
      for (const auto& a : tg.a_words) {
        for (const auto& c : tg.c_words) out.pairs.emplace(a, c);
      }
    }
    return out;
  }
  std::set<Word> as, cs;
  for (const auto& tg : set.graphs) {
    as.insert(tg.a_words.begin(), tg.a_words.end());
    cs.insert(tg.c_words.begin(), tg.c_words.end());
  }
  for (const auto& a : as) {
    for (const auto& c : cs) out.pairs.emplace(a, c);
  }
  return out;
}

struct IcConfig {
  int delta = 2;  // minimum number of shared pivots
};

/// Inverse consultation: keeps (a, c) when the two words share at least
/// `delta` pivot translations.
inline PairSet inverse_consultation(const BilingualDictionary& dict_ab,
                                    const BilingualDictionary& dict_cb, const IcConfig& cfg = {}) {
  if (cfg.delta < 1) throw Error("inverse consultation delta must be at least 1");
  if (dict_ab.target != dict_cb.target) throw Error("pivot language mismatch");

  std::map<Word, std::set<Word>> pivots_of_a, c_of_pivot;
  for (const auto& [a, b] : dict_ab.entries) pivots_of_a[a].insert(b);
  for (const auto& [c, b] : dict_cb.entries) c_of_pivot[b].insert(c);

  PairSet out{dict_ab.source, dict_cb.source, {}};
  for (const auto& [a, pivots] : pivots_of_a) {
    std::map<Word, int> shared;
    for (const auto& b : pivots) {
      auto it = c_of_pivot.find(b);
      if (it == c_of_pivot.end()) continue;
      for (const auto& c : it->second) ++shared[c];
    }
    for (const auto& [c, score] : shared) {
      if (score >= cfg.delta) out.pairs.emplace(a, c);
    }
  }
  return out;
}

}  // namespace pivotlex

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "pivotlex/candidate.hpp"
#include "pivotlex/graph.hpp"
#include "pivotlex/lexicon_io.hpp"

namespace pivotlex {

struct TransgraphSet {
  std::vector<Transgraph> graphs;
  std::vector<std::pair<int, std::size_t>> skipped;  // (id, edge count)
};

struct ComponentStats {
  std::size_t a_count = 0;
  std::size_t b_count = 0;
  std::size_t c_count = 0;
  std::size_t edge_count = 0;

  friend bool operator==(const ComponentStats&, const ComponentStats&) = default;
};

inline constexpr std::size_t kDefaultMaxEdges = 2000;
inline constexpr double kMinProposedProb = 1e-6;

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (y < x) std::swap(x, y);
    parent_[y] = x;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Splits the union of both dictionaries into connected tripartite components.
/// Both inputs are oriented non-pivot -> pivot. Component ids follow the order
/// of each component's smallest word, so they do not depend on input order.
inline TransgraphSet build_transgraphs(const BilingualDictionary& dict_ab,
                                       const BilingualDictionary& dict_cb) {
  if (dict_ab.target != dict_cb.target) {
    throw Error("pivot language mismatch: '" + dict_ab.target.code() + "' vs '" +
                dict_cb.target.code() + "'");
  }
  if (dict_ab.source == dict_cb.source) {
    throw Error("the two non-pivot languages must differ");
  }
  if (dict_ab.source == dict_ab.target || dict_cb.source == dict_cb.target) {
    throw Error("a non-pivot language equals the pivot language");
  }

  std::map<Word, std::size_t> index;
  auto id_of = [&](const Word& w) {
    auto [it, inserted] = index.emplace(w, index.size());
    return it->second;
  };
  std::vector<Edge> edges;
  for (const auto& [a, b] : dict_ab.entries) {
    edges.push_back(Edge{a, b, Side::AB, EdgeStatus::Existing, 0, 1.0});
  }
  for (const auto& [c, b] : dict_cb.entries) {
    edges.push_back(Edge{c, b, Side::BC, EdgeStatus::Existing, 0, 1.0});
  }
  for (const auto& e : edges) {
    id_of(e.non_pivot);
    id_of(e.pivot);
  }

  detail::DisjointSets sets(index.size());
  for (const auto& e : edges) sets.unite(index.at(e.non_pivot), index.at(e.pivot));

  // Smallest word of every component decides its position.
  std::map<std::size_t, Word> smallest;
  for (const auto& [w, i] : index) smallest.try_emplace(sets.find(i), w);  // map is ordered
  std::vector<std::pair<Word, std::size_t>> order;
  for (const auto& [root, w] : smallest) order.emplace_back(w, root);
  std::sort(order.begin(), order.end());

  std::map<std::size_t, std::size_t> slot_of_root;
  TransgraphSet out;
  for (const auto& [w, root] : order) {
    slot_of_root.emplace(root, out.graphs.size());
    Transgraph tg;
    tg.id = static_cast<int>(out.graphs.size());
    tg.lang_a = dict_ab.source;
    tg.lang_b = dict_ab.target;
    tg.lang_c = dict_cb.source;
    out.graphs.push_back(std::move(tg));
  }
  for (auto& e : edges) {
    auto slot = slot_of_root.at(sets.find(index.at(e.non_pivot)));
    out.graphs[slot].add_edge(std::move(e));
  }
  return out;
}

/// Moves components with more than `max_edges` edges to `skipped`.
inline TransgraphSet filter_big(const TransgraphSet& set, std::size_t max_edges) {
  if (max_edges == 0) throw Error("max_edges must be positive");
  TransgraphSet out;
  out.skipped = set.skipped;
  for (const auto& tg : set.graphs) {
    if (tg.edge_count() > max_edges) {
      out.skipped.emplace_back(tg.id, tg.edge_count());
    } else {
      out.graphs.push_back(tg);
    }
  }
  std::sort(out.skipped.begin(), out.skipped.end());
  return out;
}

/// Materializes every absent edge on the candidates' paths as a proposed edge
/// of the given cycle. Its probability is the proposing candidate's
/// coexistence probability (largest one when several candidates propose it),
/// clamped to [1e-6, 1]. Edges already present are left untouched.
inline Transgraph add_new_edges(const Transgraph& tg,
                                std::span<const TranslationPairCandidate> candidates, int cycle) {
  if (cycle < 1) throw Error("cycle must be positive");
  std::map<EdgeKey, double> proposals;
  for (const auto& cand : candidates) {
    const double prob = std::clamp(cand.h_coex, kMinProposedProb, 1.0);
    for (const auto& path : cand.paths) {
      if (!path.ab_edge) {
        EdgeKey key{Side::AB, cand.w_a, path.pivot};
        if (!tg.find(key)) {
          auto [it, inserted] = proposals.emplace(key, prob);
          if (!inserted) it->second = std::max(it->second, prob);
        }
      }
      if (!path.bc_edge) {
        EdgeKey key{Side::BC, cand.w_c, path.pivot};
        if (!tg.find(key)) {
          auto [it, inserted] = proposals.emplace(key, prob);
          if (!inserted) it->second = std::max(it->second, prob);
        }
      }
    }
  }
  Transgraph out = tg;
  for (const auto& [key, prob] : proposals) {
    out.add_edge(Edge{key.non_pivot, key.pivot, key.side, EdgeStatus::Proposed, cycle, prob});
  }
  return out;
}

inline ComponentStats component_stats(const Transgraph& tg) {
  if (tg.edge_count() == 0) throw Error("transgraph has no edges");
  return {tg.a_words.size(), tg.b_words.size(), tg.c_words.size(), tg.edge_count()};
}

// Debug listing: side, non-pivot, pivot, status, prob.
inline void dump_edges(const Transgraph& tg, std::ostream& out) {
  for (const auto& [key, e] : tg.edges()) {
    out << to_string(e.side) << '\t' << e.non_pivot.surface << '\t' << e.pivot.surface << '\t';
    if (e.existing()) {
      out << "existing";
    } else {
      out << "proposed:" << e.cycle;
    }
    out << '\t' << format_fixed6(e.prob) << '\n';
  }
}

}  // namespace pivotlex

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string_view>
#include <vector>

#include "pivotlex/candidate.hpp"
#include "pivotlex/graph.hpp"
#include "pivotlex/unicode.hpp"

namespace pivotlex {

// Weighted indegrees: every incident edge contributes 1 / prob.
struct ConditionalTables {
  std::map<Word, double> indegree_from_a;  // pivot -> sum over AB edges
  std::map<Word, double> indegree_from_c;  // pivot -> sum over BC edges
  std::map<Word, double> indegree_from_b;  // non-pivot -> sum over its edges
  double total_ab = 0.0;
  double total_bc = 0.0;

  explicit ConditionalTables(const Transgraph& tg) {
    for (const auto& [key, e] : tg.edges()) {
      const double w = 1.0 / e.prob;
      (e.side == Side::AB ? indegree_from_a : indegree_from_c)[e.pivot] += w;
      indegree_from_b[e.non_pivot] += w;
      (e.side == Side::AB ? total_ab : total_bc) += w;
    }
  }

  double from_a(const Word& pivot) const { return get(indegree_from_a, pivot); }
  double from_c(const Word& pivot) const { return get(indegree_from_c, pivot); }
  double from_b(const Word& non_pivot) const { return get(indegree_from_b, non_pivot); }

  // Share of one dictionary's edge mass attached to a non-pivot word.
  double marginal(const Word& non_pivot, Side side) const {
    const double total = side == Side::AB ? total_ab : total_bc;
    return total > 0.0 ? from_b(non_pivot) / total : 0.0;
  }

  // Share of one dictionary's edge mass carried by the edge between two words.
  double joint(const Transgraph& tg, const Word& non_pivot, const Word& pivot, Side side) const {
    const double total = side == Side::AB ? total_ab : total_bc;
    const Edge* e = tg.find(side, non_pivot, pivot);
    return (e && total > 0.0) ? (1.0 / e->prob) / total : 0.0;
  }

 private:
  static double get(const std::map<Word, double>& m, const Word& w) {
    auto it = m.find(w);
    return it == m.end() ? 0.0 : it->second;
  }
};

/// One candidate per (A-word, C-word) pair joined through at least one pivot by
/// two present edges. Each candidate lists a path for every pivot adjacent to
/// either word; paths with an absent edge are the missing-edge paths.
inline std::vector<TranslationPairCandidate> generate_candidates(const Transgraph& tg) {
  const Adjacency adj(tg);
  std::set<WordPair> pairs;
  for (const auto& [pivot, as] : adj.a_of_pivot) {
    const auto& cs = adj.c_words(pivot);
    for (const auto& a : as) {
      for (const auto& c : cs) pairs.emplace(a, c);
    }
  }

  std::vector<TranslationPairCandidate> out;
  out.reserve(pairs.size());
  for (const auto& [a, c] : pairs) {
    TranslationPairCandidate cand;
    cand.w_a = a;
    cand.w_c = c;
    std::set<Word> pivots = adj.pivots(a);
    pivots.insert(adj.pivots(c).begin(), adj.pivots(c).end());
    for (const auto& p : pivots) {
      Path path{p, std::nullopt, std::nullopt};
      if (const Edge* e = tg.find(Side::AB, a, p)) path.ab_edge = *e;
      if (const Edge* e = tg.find(Side::BC, c, p)) path.bc_edge = *e;
      if (!path.ab_edge || !path.ab_edge->existing()) cand.new_edges.push_back({p, Side::AB});
      if (!path.bc_edge || !path.bc_edge->existing()) cand.new_edges.push_back({p, Side::BC});
      cand.paths.push_back(std::move(path));
    }
    out.push_back(std::move(cand));
  }
  return out;
}

namespace detail {

// A weighted indegree is a real number; as an exponent it stands for a count
// of senses, so it is rounded up.
inline double sense_count(double indegree) { return std::ceil(indegree - 1e-9); }

}  // namespace detail

/// Fills h_coex, h_miss_cont, p_shared_senses and h_polysemy (form similarity is
/// set separately by `lcsr`).
///
/// Full paths use the indegrees of the current graph. Missing-edge paths are
/// evaluated as if the candidate's absent edges existed with probability 1,
/// which raises the indegrees of the nodes they touch.
inline TranslationPairCandidate compute_cognate_probabilities(TranslationPairCandidate cand,
                                                              const ConditionalTables& tables) {
  if (cand.paths.empty()) throw Error("candidate has no paths");

  double missing_on_a = 0.0;  // hypothetical AB edges at w_a
  double missing_on_c = 0.0;  // hypothetical BC edges at w_c
  for (const auto& path : cand.paths) {
    if (!path.ab_edge) missing_on_a += 1.0;
    if (!path.bc_edge) missing_on_c += 1.0;
  }

  double a_given_c = 0.0, c_given_a = 0.0;
  double a_given_c_missing = 0.0, c_given_a_missing = 0.0;
  double shared = 1.0;

  for (const auto& path : cand.paths) {
    double from_a = tables.from_a(path.pivot);
    double from_c = tables.from_c(path.pivot);
    double a_from_b = tables.from_b(cand.w_a);
    double c_from_b = tables.from_b(cand.w_c);
    if (path.missing()) {
      if (!path.ab_edge) from_a += 1.0;
      if (!path.bc_edge) from_c += 1.0;
      a_from_b += missing_on_a;
      c_from_b += missing_on_c;
    }
    const double forward = (1.0 / from_a) * (1.0 / c_from_b);   // P(a|b) P(b|c)
    const double backward = (1.0 / from_c) * (1.0 / a_from_b);  // P(c|b) P(b|a)
    if (path.missing()) {
      a_given_c_missing += forward;
      c_given_a_missing += backward;
    } else {
      a_given_c += forward;
      c_given_a += backward;
    }
    const double senses = detail::sense_count(std::max(from_a, from_c));
    shared *= 1.0 / (std::exp2(senses) - 1.0);
  }

  cand.h_coex = std::clamp(a_given_c * c_given_a, 0.0, 1.0);
  cand.h_miss_cont = (a_given_c + a_given_c_missing) * (c_given_a + c_given_a_missing) -
                     a_given_c * c_given_a;
  if (cand.h_miss_cont < 0.0) cand.h_miss_cont = 0.0;  // rounding only
  cand.p_shared_senses = shared;
  cand.h_polysemy = 1.0 - shared;
  return cand;
}

/// Longest common subsequence length over the longer length, counted in
/// Unicode scalar values.
inline double lcsr(std::string_view a, std::string_view b) {
  if (a.empty() || b.empty()) throw Error("lcsr needs two non-empty strings");
  const auto x = unicode::code_points(a);
  const auto y = unicode::code_points(b);
  std::vector<std::size_t> prev(y.size() + 1, 0), cur(y.size() + 1, 0);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= y.size(); ++j) {
      cur[j] = x[i - 1] == y[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return static_cast<double>(prev[y.size()]) / static_cast<double>(std::max(x.size(), y.size()));
}

inline double compute_edge_cost(const TranslationPairCandidate& cand, const HeuristicSelection& sel) {
  double cost = 0.0;
  if (sel.h1) cost += 1.0 - cand.h_coex;
  if (sel.h2) cost += cand.h_miss_cont;
  if (sel.h3) cost += cand.h_polysemy;
  if (sel.h4) cost += (1.0 - cand.h_form_sim) / 100.0;
  return cost;
}

/// Candidate generation followed by every heuristic and the edge cost.
inline std::vector<TranslationPairCandidate> score_candidates(const Transgraph& tg,
                                                              const HeuristicSelection& sel) {
  const ConditionalTables tables(tg);
  auto cands = generate_candidates(tg);
  for (auto& cand : cands) {
    cand = compute_cognate_probabilities(std::move(cand), tables);
    cand.h_form_sim = lcsr(cand.w_a.surface, cand.w_c.surface);
    cand.edge_cost = compute_edge_cost(cand, sel);
  }
  return cands;
}

}  // namespace pivotlex

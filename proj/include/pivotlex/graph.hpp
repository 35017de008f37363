#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pivotlex/error.hpp"
#include "pivotlex/lexicon_io.hpp"

namespace pivotlex {

// AB edges join an A-word to a pivot, BC edges join a pivot to a C-word.
enum class Side { AB, BC };

enum class EdgeStatus { Existing, Proposed };

struct EdgeKey {
  Side side = Side::AB;
  Word non_pivot;
  Word pivot;

  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
};

struct Edge {
  Word non_pivot;
  Word pivot;
  Side side = Side::AB;
  EdgeStatus status = EdgeStatus::Existing;
  int cycle = 0;  // cycle that proposed the edge; 0 for input edges
  double prob = 1.0;

  EdgeKey key() const { return EdgeKey{side, non_pivot, pivot}; }
  bool existing() const noexcept { return status == EdgeStatus::Existing; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

class Transgraph {
 public:
  int id = 0;
  LanguageTag lang_a, lang_b, lang_c;
  std::set<Word> a_words, b_words, c_words;

  const std::map<EdgeKey, Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const Edge* find(const EdgeKey& key) const {
    auto it = edges_.find(key);
    return it == edges_.end() ? nullptr : &it->second;
  }

  const Edge* find(Side side, const Word& non_pivot, const Word& pivot) const {
    return find(EdgeKey{side, non_pivot, pivot});
  }

  // Inserts the edge and registers its endpoints. Returns false when an edge
  // with the same key is already present (the stored edge is left as is).
  bool add_edge(Edge edge) {
    if (edge.prob <= 0.0 || edge.prob > 1.0) throw Error("edge probability must lie in (0,1]");
    if (edge.existing() && edge.prob != 1.0) throw Error("existing edges carry probability 1");
    auto key = edge.key();
    if (edges_.contains(key)) return false;
    (edge.side == Side::AB ? a_words : c_words).insert(edge.non_pivot);
    b_words.insert(edge.pivot);
    edges_.emplace(std::move(key), std::move(edge));
    return true;
  }

  friend bool operator==(const Transgraph&, const Transgraph&) = default;

 private:
  std::map<EdgeKey, Edge> edges_;
};

// Neighbour lists over every edge currently present (existing or proposed).
struct Adjacency {
  std::map<Word, std::set<Word>> pivots_of;   // non-pivot -> pivots
  std::map<Word, std::set<Word>> a_of_pivot;  // pivot -> A-words
  std::map<Word, std::set<Word>> c_of_pivot;  // pivot -> C-words

  explicit Adjacency(const Transgraph& tg) {
    for (const auto& [key, edge] : tg.edges()) {
      pivots_of[edge.non_pivot].insert(edge.pivot);
      (edge.side == Side::AB ? a_of_pivot : c_of_pivot)[edge.pivot].insert(edge.non_pivot);
    }
  }

  const std::set<Word>& pivots(const Word& w) const { return lookup(pivots_of, w); }
  const std::set<Word>& a_words(const Word& pivot) const { return lookup(a_of_pivot, pivot); }
  const std::set<Word>& c_words(const Word& pivot) const { return lookup(c_of_pivot, pivot); }

 private:
  static const std::set<Word>& lookup(const std::map<Word, std::set<Word>>& m, const Word& w) {
    static const std::set<Word> empty;
    auto it = m.find(w);
    return it == m.end() ? empty : it->second;
  }
};

inline std::string_view to_string(Side s) { return s == Side::AB ? "AB" : "BC"; }

}  // namespace pivotlex

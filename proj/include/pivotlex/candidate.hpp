#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pivotlex/error.hpp"
#include "pivotlex/graph.hpp"

namespace pivotlex {

// Route between a candidate's two words through one pivot. A missing edge is
// represented by an empty optional.
struct Path {
  Word pivot;
  std::optional<Edge> ab_edge;
  std::optional<Edge> bc_edge;

  bool full() const noexcept { return ab_edge && bc_edge; }
  bool missing() const noexcept { return !full(); }
};

struct NewEdge {
  Word pivot;
  Side side = Side::AB;

  friend bool operator==(const NewEdge&, const NewEdge&) = default;
};

struct TranslationPairCandidate {
  Word w_a;
  Word w_c;
  std::vector<Path> paths;

  double h_coex = 0.0;
  double h_miss_cont = 0.0;
  double h_polysemy = 0.0;
  double h_form_sim = 0.0;
  double p_shared_senses = 1.0;
  double edge_cost = 0.0;

  // Every incident edge that is not an input edge: absent ones plus edges
  // proposed in an earlier cycle. These carry the candidate's edge cost.
  std::vector<NewEdge> new_edges;

  WordPair pair() const { return {w_a, w_c}; }

  EdgeKey key_of(const NewEdge& e) const {
    return e.side == Side::AB ? EdgeKey{Side::AB, w_a, e.pivot} : EdgeKey{Side::BC, w_c, e.pivot};
  }

  std::size_t full_path_count() const {
    std::size_t n = 0;
    for (const auto& p : paths) n += p.full() ? 1 : 0;
    return n;
  }
};

// Which of the four cognate heuristics contribute to the edge cost.
struct HeuristicSelection {
  bool h1 = false;  // coexistence probability
  bool h2 = false;  // missing contribution rate
  bool h3 = false;  // polysemy pivot ambiguity rate
  bool h4 = false;  // form similarity

  bool any() const noexcept { return h1 || h2 || h3 || h4; }

  // Parses tokens such as "H1" or "H124": 'H' then distinct ascending digits 1-4.
  static HeuristicSelection parse(std::string_view token) {
    if (token.size() < 2 || token.front() != 'H') {
      throw Error("heuristic token '" + std::string(token) + "' must look like H1, H14, H234");
    }
    HeuristicSelection sel;
    char last = '0';
    for (char ch : token.substr(1)) {
      if (ch < '1' || ch > '4') {
        throw Error("heuristic token '" + std::string(token) + "' may only use digits 1-4");
      }
      if (ch <= last) {
        throw Error("heuristic digits in '" + std::string(token) +
                    "' must be distinct and ascending");
      }
      last = ch;
      switch (ch) {
        case '1': sel.h1 = true; break;
        case '2': sel.h2 = true; break;
        case '3': sel.h3 = true; break;
        default: sel.h4 = true; break;
      }
    }
    return sel;
  }

  std::string to_string() const {
    std::string out = "H";
    if (h1) out += '1';
    if (h2) out += '2';
    if (h3) out += '3';
    if (h4) out += '4';
    return out;
  }

  friend bool operator==(const HeuristicSelection&, const HeuristicSelection&) = default;
};

}  // namespace pivotlex

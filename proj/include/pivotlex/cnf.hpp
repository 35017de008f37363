#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "pivotlex/candidate.hpp"
#include "pivotlex/error.hpp"
#include "pivotlex/graph.hpp"

namespace pivotlex {

// Decision variables sort before edge variables, so they receive the lowest
// ids and are branched on first.
enum class VarKind { Cognate = 0, Synonym = 1, Edge = 2 };

struct VarDescriptor {
  VarKind kind = VarKind::Edge;
  Word first;   // A-word for decisions, non-pivot for edges
  Word second;  // C-word for decisions, pivot for edges
  Side side = Side::AB;

  static VarDescriptor cognate(const WordPair& p) { return {VarKind::Cognate, p.first, p.second, Side::AB}; }
  static VarDescriptor synonym(const WordPair& p) { return {VarKind::Synonym, p.first, p.second, Side::AB}; }
  static VarDescriptor edge(const EdgeKey& k) { return {VarKind::Edge, k.non_pivot, k.pivot, k.side}; }

  WordPair pair() const { return {first, second}; }
  EdgeKey edge_key() const { return {side, first, second}; }

  friend auto operator<=>(const VarDescriptor&, const VarDescriptor&) = default;
  friend bool operator==(const VarDescriptor&, const VarDescriptor&) = default;
};

// Bijection between proposition descriptors and ids 1..n, ordered by
// descriptor.
class VarRegistry {
 public:
  VarRegistry() = default;

  explicit VarRegistry(const std::set<VarDescriptor>& descriptors) {
    by_id_.reserve(descriptors.size());
    for (const auto& d : descriptors) {
      by_id_.push_back(d);
      ids_.emplace(d, static_cast<int>(by_id_.size()));
    }
  }

  int size() const noexcept { return static_cast<int>(by_id_.size()); }

  int id(const VarDescriptor& d) const {
    auto it = ids_.find(d);
    if (it == ids_.end()) throw Error("unknown proposition");
    return it->second;
  }

  std::optional<int> find(const VarDescriptor& d) const {
    auto it = ids_.find(d);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  const VarDescriptor& descriptor(int id) const { return by_id_.at(static_cast<std::size_t>(id - 1)); }

 private:
  std::map<VarDescriptor, int> ids_;
  std::vector<VarDescriptor> by_id_;
};

struct WeightedClause {
  std::vector<int> literals;
  std::optional<double> weight;  // empty means hard

  bool hard() const noexcept { return !weight.has_value(); }

  static WeightedClause make(std::vector<int> literals, std::optional<double> weight = std::nullopt) {
    if (literals.empty()) throw Error("clause must not be empty");
    std::vector<int> unique;
    for (int lit : literals) {
      if (lit == 0) throw Error("literal 0 is not a variable");
      if (std::find(unique.begin(), unique.end(), -lit) != unique.end()) {
        throw Error("clause contains complementary literals");
      }
      if (std::find(unique.begin(), unique.end(), lit) == unique.end()) unique.push_back(lit);
    }
    if (weight && !(*weight > 0.0 && std::isfinite(*weight))) {
      throw Error("soft clause weight must be finite and positive");
    }
    return {std::move(unique), weight};
  }

  friend bool operator==(const WeightedClause&, const WeightedClause&) = default;
};

struct CnfFormula {
  VarRegistry registry;
  int num_vars = 0;
  std::vector<WeightedClause> hard;
  std::vector<WeightedClause> soft;
  // Position in `hard` of the "accept at least one more pair" disjunction.
  std::optional<std::size_t> selector;

  std::size_t clause_count() const noexcept { return hard.size() + soft.size(); }

  std::vector<int> selector_literals() const {
    return selector ? hard[*selector].literals : std::vector<int>{};
  }
};

// Working sets shared by the encoders and the extraction loop.
struct PipelineSets {
  std::set<EdgeKey> existing_edges;  // E_E
  std::set<EdgeKey> new_edges;       // E_N
  std::set<WordPair> candidates;     // D_C
  std::vector<WordPair> cognates;    // D_Co in acceptance order
  std::set<WordPair> non_cognates;   // D_NCo
  std::map<WordPair, std::set<Word>> cognate_pivots;  // D_PCo per accepted cognate
  std::set<WordPair> results;        // D_R

  bool is_cognate(const WordPair& p) const {
    return std::find(cognates.begin(), cognates.end(), p) != cognates.end();
  }
};

inline constexpr double kWeightScale = 1e6;

inline std::int64_t to_micro(double weight) { return std::llround(weight * kWeightScale); }

/// Sets before any extraction: input edges are E_E, every other edge touching
/// a candidate is E_N.
inline PipelineSets initial_sets(const Transgraph& tg,
                                 std::span<const TranslationPairCandidate> candidates) {
  PipelineSets sets;
  for (const auto& [key, e] : tg.edges()) {
    if (e.existing()) sets.existing_edges.insert(key);
  }
  for (const auto& cand : candidates) {
    sets.candidates.insert(cand.pair());
    for (const auto& ne : cand.new_edges) sets.new_edges.insert(cand.key_of(ne));
  }
  return sets;
}

namespace detail {

inline void add_edge_vars(std::set<VarDescriptor>& vars, const std::set<EdgeKey>& keys) {
  for (const auto& k : keys) vars.insert(VarDescriptor::edge(k));
}

inline std::vector<EdgeKey> incident_edges(const TranslationPairCandidate& cand) {
  std::vector<EdgeKey> out;
  out.reserve(cand.paths.size() * 2);
  for (const auto& path : cand.paths) {
    out.push_back({Side::AB, cand.w_a, path.pivot});
    out.push_back({Side::BC, cand.w_c, path.pivot});
  }
  return out;
}

// Soft "edge absent" units, one per new edge with a weight that survives
// micro-unit rounding.
inline void add_soft_edges(CnfFormula& cnf, const std::map<EdgeKey, double>& weights,
                           const std::set<EdgeKey>& existing) {
  for (const auto& [key, w] : weights) {
    if (existing.contains(key) || to_micro(w) <= 0) continue;
    cnf.soft.push_back(WeightedClause::make({-cnf.registry.id(VarDescriptor::edge(key))}, w));
  }
}

inline CnfFormula encode_cognate(std::span<const TranslationPairCandidate> candidates,
                                 const PipelineSets& sets, bool uniqueness) {
  if (candidates.empty()) throw Error("cannot encode a formula without candidates");

  std::set<VarDescriptor> vars;
  std::map<EdgeKey, double> weights;  // cheapest owner wins
  for (const auto& cand : candidates) {
    vars.insert(VarDescriptor::cognate(cand.pair()));
    for (const auto& k : incident_edges(cand)) vars.insert(VarDescriptor::edge(k));
    for (const auto& ne : cand.new_edges) {
      auto key = cand.key_of(ne);
      auto [it, inserted] = weights.emplace(key, cand.edge_cost);
      if (!inserted) it->second = std::min(it->second, cand.edge_cost);
    }
  }
  add_edge_vars(vars, sets.existing_edges);

  CnfFormula cnf;
  cnf.registry = VarRegistry(vars);
  cnf.num_vars = cnf.registry.size();
  const auto& reg = cnf.registry;

  // Edge existence.
  for (const auto& k : sets.existing_edges) {
    cnf.hard.push_back(WeightedClause::make({reg.id(VarDescriptor::edge(k))}));
  }
  // Edge non-existence (soft).
  add_soft_edges(cnf, weights, sets.existing_edges);
  // Symmetry: a cognate needs every edge between its words and their pivots.
  for (const auto& cand : candidates) {
    const int c = reg.id(VarDescriptor::cognate(cand.pair()));
    for (const auto& k : incident_edges(cand)) {
      cnf.hard.push_back(WeightedClause::make({-c, reg.id(VarDescriptor::edge(k))}));
    }
  }
  // Uniqueness: pairs sharing an endpoint exclude each other.
  if (uniqueness) {
    std::map<Word, std::vector<int>> by_a, by_c;
    for (const auto& cand : candidates) {
      const int c = reg.id(VarDescriptor::cognate(cand.pair()));
      by_a[cand.w_a].push_back(c);
      by_c[cand.w_c].push_back(c);
    }
    for (const auto* groups : {&by_a, &by_c}) {
      for (const auto& [w, ids] : *groups) {
        for (std::size_t i = 0; i < ids.size(); ++i) {
          for (std::size_t j = i + 1; j < ids.size(); ++j) {
            cnf.hard.push_back(WeightedClause::make({-ids[i], -ids[j]}));
          }
        }
      }
    }
  }
  // At least one pair not yet returned.
  std::vector<int> open;
  for (const auto& cand : candidates) {
    if (!sets.results.contains(cand.pair())) open.push_back(reg.id(VarDescriptor::cognate(cand.pair())));
  }
  if (!open.empty()) {
    cnf.selector = cnf.hard.size();
    cnf.hard.push_back(WeightedClause::make(std::move(open)));
  }
  // Previously accepted cognates.
  for (const auto& p : sets.cognates) {
    cnf.hard.push_back(WeightedClause::make({reg.id(VarDescriptor::cognate(p))}));
  }
  return cnf;
}

}  // namespace detail

/// One-to-one cognate formula: edge existence, edge non-existence (soft),
/// symmetry, uniqueness, at-least-one and accepted-cognate constraints.
inline CnfFormula encode_cognate_cnf(std::span<const TranslationPairCandidate> candidates,
                                     const PipelineSets& sets) {
  return detail::encode_cognate(candidates, sets, true);
}

/// Many-to-many variant: the cognate formula without uniqueness.
inline CnfFormula encode_mm_cnf(std::span<const TranslationPairCandidate> candidates,
                                const PipelineSets& sets) {
  return detail::encode_cognate(candidates, sets, false);
}

// A C-word (or A-word) proposed as a synonym of one endpoint of an accepted
// cognate, forming the pair (w_a, w_c).
struct SynonymCandidate {
  Word w_a;
  Word w_c;
  WordPair anchor;          // accepted cognate
  Side side = Side::BC;     // BC: synonym word is w_c; AB: it is w_a
  std::set<Word> anchor_pivots;
  double probability = 0.0;
  std::vector<Word> missing_pivots;

  WordPair pair() const { return {w_a, w_c}; }
  const Word& synonym_word() const { return side == Side::BC ? w_c : w_a; }
  EdgeKey edge_to(const Word& pivot) const { return {side, synonym_word(), pivot}; }

  // 1 - probability, spread evenly over the edges that must be added.
  double edge_weight() const {
    return missing_pivots.empty() ? 0.0
                                  : (1.0 - probability) / static_cast<double>(missing_pivots.size());
  }
};

/// Cognate-synonym formula: edge existence, synonym edge non-existence (soft),
/// accepted cognates, rejected cognates, synonym support and at-least-one.
/// Returns nothing when there is no synonym candidate.
inline std::optional<CnfFormula> encode_synonym_cnf(std::span<const SynonymCandidate> syns,
                                                    const PipelineSets& sets) {
  if (syns.empty()) return std::nullopt;

  std::set<VarDescriptor> vars;
  std::map<EdgeKey, double> weights;
  for (const auto& p : sets.cognates) vars.insert(VarDescriptor::cognate(p));
  for (const auto& p : sets.non_cognates) vars.insert(VarDescriptor::cognate(p));
  for (const auto& s : syns) {
    vars.insert(VarDescriptor::synonym(s.pair()));
    vars.insert(VarDescriptor::cognate(s.anchor));
    for (const auto& p : s.anchor_pivots) vars.insert(VarDescriptor::edge(s.edge_to(p)));
    for (const auto& p : s.missing_pivots) {
      auto key = s.edge_to(p);
      auto [it, inserted] = weights.emplace(key, s.edge_weight());
      if (!inserted) it->second = std::min(it->second, s.edge_weight());
    }
  }
  detail::add_edge_vars(vars, sets.existing_edges);

  CnfFormula cnf;
  cnf.registry = VarRegistry(vars);
  cnf.num_vars = cnf.registry.size();
  const auto& reg = cnf.registry;

  for (const auto& k : sets.existing_edges) {
    cnf.hard.push_back(WeightedClause::make({reg.id(VarDescriptor::edge(k))}));
  }
  detail::add_soft_edges(cnf, weights, sets.existing_edges);
  for (const auto& p : sets.cognates) {
    cnf.hard.push_back(WeightedClause::make({reg.id(VarDescriptor::cognate(p))}));
  }
  for (const auto& p : sets.non_cognates) {
    cnf.hard.push_back(WeightedClause::make({-reg.id(VarDescriptor::cognate(p))}));
  }
  for (const auto& s : syns) {
    const int sv = reg.id(VarDescriptor::synonym(s.pair()));
    cnf.hard.push_back(WeightedClause::make({-sv, reg.id(VarDescriptor::cognate(s.anchor))}));
    for (const auto& p : s.anchor_pivots) {
      cnf.hard.push_back(WeightedClause::make({-sv, reg.id(VarDescriptor::edge(s.edge_to(p)))}));
    }
  }
  std::vector<int> open;
  for (const auto& s : syns) {
    if (!sets.results.contains(s.pair())) open.push_back(reg.id(VarDescriptor::synonym(s.pair())));
  }
  if (!open.empty()) {
    cnf.selector = cnf.hard.size();
    cnf.hard.push_back(WeightedClause::make(std::move(open)));
  }
  // Accepted synonyms stay true.
  for (const auto& s : syns) {
    if (sets.results.contains(s.pair()) && !sets.is_cognate(s.pair())) {
      cnf.hard.push_back(WeightedClause::make({reg.id(VarDescriptor::synonym(s.pair()))}));
    }
  }
  return cnf;
}

/// Commits an accepted decision variable: records the pair, pins it true,
/// drops it from the at-least-one disjunction and turns every edge it implies
/// from a soft "absent" unit into a hard "present" unit.
inline void update_after_acceptance(CnfFormula& cnf, PipelineSets& sets,
                                    const VarDescriptor& accepted) {
  if (accepted.kind == VarKind::Edge) throw Error("only decision variables can be accepted");
  const WordPair pair = accepted.pair();
  if (sets.results.contains(pair)) throw Error("pair '" + pair.first.surface + "' - '" +
                                               pair.second.surface + "' is already accepted");
  const int v = cnf.registry.id(accepted);

  if (accepted.kind == VarKind::Cognate) sets.cognates.push_back(pair);
  sets.results.insert(pair);

  // Implied edges: hard clauses (-v, e).
  std::vector<int> implied;
  for (const auto& cl : cnf.hard) {
    if (cl.literals.size() == 2 && cl.literals[0] == -v && cl.literals[1] > 0 &&
        cnf.registry.descriptor(cl.literals[1]).kind == VarKind::Edge) {
      implied.push_back(cl.literals[1]);
    }
  }

  if (cnf.selector) {
    auto& lits = cnf.hard[*cnf.selector].literals;
    lits.erase(std::remove(lits.begin(), lits.end(), v), lits.end());
    if (lits.empty()) {
      cnf.hard.erase(cnf.hard.begin() + static_cast<std::ptrdiff_t>(*cnf.selector));
      cnf.selector.reset();
    }
  }
  cnf.hard.push_back(WeightedClause::make({v}));

  for (int e : implied) {
    const EdgeKey key = cnf.registry.descriptor(e).edge_key();
    if (sets.existing_edges.contains(key)) continue;
    std::erase_if(cnf.soft, [e](const WeightedClause& cl) {
      return cl.literals.size() == 1 && cl.literals[0] == -e;
    });
    cnf.hard.push_back(WeightedClause::make({e}));
    sets.new_edges.erase(key);
    sets.existing_edges.insert(key);
  }
}

/// DIMACS WCNF with integer weights (micro-units). Hard clauses carry
/// top = 1 + sum of soft weights.
inline void export_wcnf(const CnfFormula& cnf, std::ostream& sink) {
  if (cnf.clause_count() == 0) throw Error("cannot export an empty formula");
  std::int64_t top = 1;
  for (const auto& cl : cnf.soft) top += to_micro(*cl.weight);
  sink << "p wcnf " << cnf.num_vars << ' ' << cnf.clause_count() << ' ' << top << '\n';
  auto emit = [&](std::int64_t w, const std::vector<int>& lits) {
    sink << w;
    for (int lit : lits) sink << ' ' << lit;
    sink << " 0\n";
  };
  for (const auto& cl : cnf.hard) emit(top, cl.literals);
  for (const auto& cl : cnf.soft) emit(to_micro(*cl.weight), cl.literals);
  if (!sink) throw Error("failed to write WCNF");
}

/// Reads the format written by export_wcnf. Clauses whose weight reaches top
/// are hard; soft weights are scaled back by 1e-6. The registry stays empty.
inline CnfFormula parse_wcnf(std::istream& in) {
  CnfFormula cnf;
  std::string line;
  std::size_t number = 0;
  bool have_header = false;
  std::int64_t top = 0;
  std::size_t declared = 0;
  std::vector<long long> pending;
  while (std::getline(in, line)) {
    ++number;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == 'c') continue;
    std::istringstream fields(line);
    if (line[first] == 'p') {
      std::string p, kind;
      if (have_header || !(fields >> p >> kind >> cnf.num_vars >> declared >> top) || kind != "wcnf") {
        throw ParseError(number, "expected header 'p wcnf <vars> <clauses> <top>'");
      }
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(number, "clause before header");
    long long token;
    while (fields >> token) {
      if (token != 0) {
        pending.push_back(token);
        continue;
      }
      if (pending.size() < 2) throw ParseError(number, "clause without literals");
      const std::int64_t w = pending.front();
      std::vector<int> lits;
      for (std::size_t i = 1; i < pending.size(); ++i) {
        if (std::llabs(pending[i]) > cnf.num_vars) throw ParseError(number, "variable out of range");
        lits.push_back(static_cast<int>(pending[i]));
      }
      pending.clear();
      if (w <= 0) throw ParseError(number, "clause weight must be positive");
      if (w >= top) {
        cnf.hard.push_back(WeightedClause::make(std::move(lits)));
      } else {
        cnf.soft.push_back(WeightedClause::make(std::move(lits), static_cast<double>(w) / kWeightScale));
      }
    }
    if (!fields.eof()) throw ParseError(number, "malformed clause");
  }
  if (!have_header) throw Error("WCNF input has no header");
  if (!pending.empty()) throw Error("last clause is not terminated by 0");
  if (cnf.clause_count() != declared) throw Error("clause count does not match header");
  return cnf;
}

}  // namespace pivotlex

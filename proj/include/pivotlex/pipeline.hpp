#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pivotlex/candidate.hpp"
#include "pivotlex/cnf.hpp"
#include "pivotlex/heuristics.hpp"
#include "pivotlex/lexicon_io.hpp"
#include "pivotlex/parallel.hpp"
#include "pivotlex/transgraph.hpp"
#include "pivotlex/wpmaxsat.hpp"

namespace pivotlex {

// C: cognates only (one-to-one). S: cognates then cognate synonyms.
// M: many-to-many cognates without uniqueness.
enum class Method { C, S, M };

struct MethodDescriptor {
  int cycle = 1;
  Method method = Method::C;
  HeuristicSelection heuristics;

  std::string to_string() const {
    const char m = method == Method::C ? 'C' : method == Method::S ? 'S' : 'M';
    return std::to_string(cycle) + ":" + m + ":" + heuristics.to_string();
  }

  friend bool operator==(const MethodDescriptor&, const MethodDescriptor&) = default;
};

/// Parses `<cycle>:<method>:<heuristic>`, e.g. "2:S:H14". Cycle is one digit
/// 1-9, method one of C/S/M, heuristic 'H' plus ascending digits 1-4; the M
/// method only admits H1.
inline MethodDescriptor parse_method(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
    throw Error("method '" + std::string(text) + "' must have the form <cycle>:<method>:<heuristic>");
  }
  const auto cycle = text.substr(0, first);
  const auto method = text.substr(first + 1, second - first - 1);
  const auto heuristic = text.substr(second + 1);

  if (cycle.size() != 1 || cycle[0] < '1' || cycle[0] > '9') {
    throw Error("cycle '" + std::string(cycle) + "' must be a single digit 1-9");
  }
  MethodDescriptor d;
  d.cycle = cycle[0] - '0';
  if (method == "C") {
    d.method = Method::C;
  } else if (method == "S") {
    d.method = Method::S;
  } else if (method == "M") {
    d.method = Method::M;
  } else {
    throw Error("method '" + std::string(method) + "' must be C, S or M");
  }
  d.heuristics = HeuristicSelection::parse(heuristic);
  if (d.method == Method::M && d.heuristics != HeuristicSelection{true, false, false, false}) {
    throw Error("method M only supports heuristic H1");
  }
  return d;
}

// Empty optional = unbounded (no filtering).
struct HyperParams {
  std::optional<double> cognate_threshold;
  std::optional<double> synonym_threshold;

  void validate() const {
    if (cognate_threshold && !(*cognate_threshold >= 0.0)) {
      throw Error("cognate threshold must be non-negative");
    }
    if (synonym_threshold && !(*synonym_threshold >= 0.0 && *synonym_threshold <= 1.0)) {
      throw Error("synonym threshold must lie in [0,1]");
    }
  }
};

struct CycleResult {
  Transgraph graph;
  std::vector<TranslationPairCandidate> candidates;
  int cycles_run = 0;
  bool fixpoint = false;
};

/// Repeats candidate generation, scoring and edge materialization up to
/// `cycles` times, stopping early when no edge is added. The candidates are
/// those of the last round; the graph contains the edges they proposed.
inline CycleResult run_cycles(const Transgraph& tg, int cycles, const HeuristicSelection& sel) {
  if (cycles < 1) throw Error("cycle count must be at least 1");
  CycleResult out{tg, {}, 0, false};
  for (int cycle = 1; cycle <= cycles; ++cycle) {
    out.candidates = score_candidates(out.graph, sel);
    out.cycles_run = cycle;
    Transgraph next = add_new_edges(out.graph, out.candidates, cycle);
    if (next.edge_count() == out.graph.edge_count()) {
      out.fixpoint = true;
      break;
    }
    out.graph = std::move(next);
  }
  return out;
}

enum class CognateMode { OneToOne, ManyToMany };

struct StageStep {
  VarDescriptor accepted;
  CnfFormula formula;  // formula the optimum was computed on
  SolveOutcome outcome;
};

struct StageOptions {
  std::optional<std::size_t> max_accept;  // stop after this many acceptances
  bool keep_trace = false;
};

struct StageResult {
  std::vector<InducedPair> accepted;
  PipelineSets sets;
  bool hard_unsat = false;
  bool stopped_by_threshold = false;
  std::vector<StageStep> trace;
};

namespace detail {

inline bool within(std::int64_t cost_micro, const std::optional<double>& threshold) {
  return !threshold || cost_micro <= to_micro(*threshold);
}

// Solve / accept loop shared by both stages. The incremental cost of a pair is
// the optimum's soft cost: edges of earlier acceptances are already hard.
inline void extraction_loop(CnfFormula& cnf, StageResult& result, Stage stage, int tg_id,
                            const std::optional<double>& threshold, const StageOptions& opts) {
  while (cnf.selector) {
    if (opts.max_accept && result.accepted.size() >= *opts.max_accept) break;
    auto outcome = solve(cnf);
    if (!outcome) {
      result.hard_unsat = true;
      break;
    }
    int chosen = 0;
    for (int lit : cnf.selector_literals()) {
      if (outcome->value(lit) && (chosen == 0 || lit < chosen)) chosen = lit;
    }
    if (chosen == 0) throw Error("solver optimum violates the at-least-one constraint");
    if (!within(outcome->soft_cost_micro, threshold)) {
      result.stopped_by_threshold = true;
      break;
    }
    const VarDescriptor desc = cnf.registry.descriptor(chosen);
    result.accepted.push_back(
        InducedPair{desc.first, desc.second, stage, outcome->soft_cost(), tg_id});
    if (opts.keep_trace) result.trace.push_back({desc, cnf, *outcome});
    update_after_acceptance(cnf, result.sets, desc);
  }
}

}  // namespace detail

/// Iteratively extracts the cheapest remaining cognate pair until the optimum
/// exceeds the cognate threshold, the hard clauses become unsatisfiable, or no
/// candidate is left.
inline StageResult run_cognate_stage(const Transgraph& tg,
                                     std::span<const TranslationPairCandidate> candidates,
                                     const HyperParams& hp, CognateMode mode,
                                     const StageOptions& opts = {}) {
  StageResult result;
  if (candidates.empty()) return result;
  result.sets = initial_sets(tg, candidates);
  CnfFormula cnf = mode == CognateMode::OneToOne ? encode_cognate_cnf(candidates, result.sets)
                                                 : encode_mm_cnf(candidates, result.sets);
  detail::extraction_loop(cnf, result, Stage::Cognate, tg.id, hp.cognate_threshold, opts);

  for (const auto& cand : candidates) {
    const auto pair = cand.pair();
    if (!result.sets.is_cognate(pair)) {
      result.sets.non_cognates.insert(pair);
      continue;
    }
    auto& pivots = result.sets.cognate_pivots[pair];
    for (const auto& path : cand.paths) pivots.insert(path.pivot);
  }
  return result;
}

/// Pivots adjacent to either word of a pair.
inline std::set<Word> pair_pivots(const Transgraph& tg, const WordPair& pair) {
  const Adjacency adj(tg);
  std::set<Word> out = adj.pivots(pair.first);
  out.insert(adj.pivots(pair.second).begin(), adj.pivots(pair.second).end());
  return out;
}

/// Share of the anchor pivots joined to `syn_word` by an edge in `existing`.
inline double cognate_synonym_probability(const std::set<Word>& anchor_pivots, const Word& syn_word,
                                          Side side, const std::set<EdgeKey>& existing) {
  if (anchor_pivots.empty()) throw Error("cognate has no pivots");
  std::size_t shared = 0;
  for (const auto& p : anchor_pivots) shared += existing.contains({side, syn_word, p}) ? 1 : 0;
  return static_cast<double>(shared) / static_cast<double>(anchor_pivots.size());
}

/// Probability that `syn_word` is a synonym of the matching endpoint of
/// `cognate`, counting only input edges of `tg`.
inline double cognate_synonym_probability(const Transgraph& tg, const WordPair& cognate,
                                          const Word& syn_word) {
  Side side;
  if (syn_word.lang == tg.lang_c) {
    side = Side::BC;
  } else if (syn_word.lang == tg.lang_a) {
    side = Side::AB;
  } else {
    throw Error("synonym word must belong to a non-pivot language");
  }
  if (syn_word == cognate.first || syn_word == cognate.second) {
    throw Error("synonym word must differ from the cognate's words");
  }
  std::set<EdgeKey> existing;
  for (const auto& [key, e] : tg.edges()) {
    if (e.existing()) existing.insert(key);
  }
  return cognate_synonym_probability(pair_pivots(tg, cognate), syn_word, side, existing);
}

/// For every accepted cognate, the other-language words sharing at least one
/// of its pivots through an edge in E_E. A pair reachable from several
/// cognates keeps the most probable anchor (earliest on ties).
inline std::vector<SynonymCandidate> build_synonym_candidates(const PipelineSets& sets) {
  std::map<Word, std::set<Word>> a_of_pivot, c_of_pivot;
  for (const auto& k : sets.existing_edges) {
    (k.side == Side::AB ? a_of_pivot : c_of_pivot)[k.pivot].insert(k.non_pivot);
  }

  std::map<WordPair, SynonymCandidate> best;
  auto offer = [&](SynonymCandidate s) {
    if (sets.results.contains(s.pair())) return;
    s.probability = cognate_synonym_probability(s.anchor_pivots, s.synonym_word(), s.side,
                                                sets.existing_edges);
    for (const auto& p : s.anchor_pivots) {
      if (!sets.existing_edges.contains(s.edge_to(p))) s.missing_pivots.push_back(p);
    }
    auto [it, inserted] = best.emplace(s.pair(), s);
    if (!inserted && s.probability > it->second.probability) it->second = std::move(s);
  };

  for (const auto& cognate : sets.cognates) {
    const auto& pivots = sets.cognate_pivots.at(cognate);
    std::set<Word> c_side, a_side;
    for (const auto& p : pivots) {
      if (auto it = c_of_pivot.find(p); it != c_of_pivot.end()) c_side.insert(it->second.begin(), it->second.end());
      if (auto it = a_of_pivot.find(p); it != a_of_pivot.end()) a_side.insert(it->second.begin(), it->second.end());
    }
    for (const auto& c : c_side) {
      if (c == cognate.second) continue;
      offer(SynonymCandidate{cognate.first, c, cognate, Side::BC, pivots, 0.0, {}});
    }
    for (const auto& a : a_side) {
      if (a == cognate.first) continue;
      offer(SynonymCandidate{a, cognate.second, cognate, Side::AB, pivots, 0.0, {}});
    }
  }
  std::vector<SynonymCandidate> out;
  out.reserve(best.size());
  for (auto& [pair, s] : best) out.push_back(std::move(s));
  return out;
}

/// Iteratively extracts cognate-synonym pairs after the cognate stage.
inline StageResult run_synonym_stage(const Transgraph& tg, PipelineSets sets, const HyperParams& hp,
                                     const StageOptions& opts = {}) {
  StageResult result;
  result.sets = std::move(sets);
  const auto syns = build_synonym_candidates(result.sets);
  auto cnf = encode_synonym_cnf(syns, result.sets);
  if (!cnf) return result;
  detail::extraction_loop(*cnf, result, Stage::Synonym, tg.id, hp.synonym_threshold, opts);
  return result;
}

struct TransgraphDiagnostics {
  int id = 0;
  ComponentStats stats;
  int cycles_run = 0;
  bool fixpoint = false;
  std::size_t candidates = 0;
  std::size_t cognates = 0;
  std::size_t synonyms = 0;
  bool cognate_hard_unsat = false;
  bool synonym_hard_unsat = false;
};

struct InductionResult {
  std::vector<InducedPair> pairs;  // by transgraph id, then acceptance order
  std::vector<TransgraphDiagnostics> diagnostics;
  std::vector<std::pair<int, std::size_t>> skipped;
};

struct PipelineConfig {
  std::size_t max_edges = kDefaultMaxEdges;
  std::size_t jobs = 1;
};

struct TransgraphInduction {
  std::vector<InducedPair> pairs;
  TransgraphDiagnostics diagnostics;
};

inline TransgraphInduction induce_transgraph(const Transgraph& tg, const MethodDescriptor& method,
                                             const HyperParams& hp) {
  TransgraphInduction out;
  auto& diag = out.diagnostics;
  diag.id = tg.id;
  diag.stats = component_stats(tg);

  const auto cycled = run_cycles(tg, method.cycle, method.heuristics);
  diag.cycles_run = cycled.cycles_run;
  diag.fixpoint = cycled.fixpoint;
  diag.candidates = cycled.candidates.size();
  if (cycled.candidates.empty()) return out;

  const auto mode = method.method == Method::M ? CognateMode::ManyToMany : CognateMode::OneToOne;
  auto cognate = run_cognate_stage(cycled.graph, cycled.candidates, hp, mode);
  diag.cognates = cognate.accepted.size();
  diag.cognate_hard_unsat = cognate.hard_unsat;
  out.pairs = std::move(cognate.accepted);

  if (method.method == Method::S) {
    auto synonym = run_synonym_stage(cycled.graph, std::move(cognate.sets), hp);
    diag.synonyms = synonym.accepted.size();
    diag.synonym_hard_unsat = synonym.hard_unsat;
    out.pairs.insert(out.pairs.end(), synonym.accepted.begin(), synonym.accepted.end());
  }
  return out;
}

/// Runs every transgraph independently (on up to `jobs` threads) and
/// aggregates by transgraph id.
inline InductionResult induce_transgraphs(const TransgraphSet& set, const MethodDescriptor& method,
                                          const HyperParams& hp, std::size_t jobs) {
  hp.validate();
  auto parts = parallel_map(set.graphs.size(), jobs,
                            [&](std::size_t i) { return induce_transgraph(set.graphs[i], method, hp); });
  InductionResult out;
  out.skipped = set.skipped;
  for (auto& part : parts) {
    out.pairs.insert(out.pairs.end(), part.pairs.begin(), part.pairs.end());
    out.diagnostics.push_back(part.diagnostics);
  }
  return out;
}

inline InductionResult run_pipeline(const BilingualDictionary& dict_ab,
                                    const BilingualDictionary& dict_cb,
                                    const MethodDescriptor& method, const HyperParams& hp,
                                    const PipelineConfig& config = {}) {
  const auto kept = filter_big(build_transgraphs(dict_ab, dict_cb), config.max_edges);
  return induce_transgraphs(kept, method, hp, config.jobs);
}

inline void write_diagnostics(const InductionResult& result, std::ostream& out) {
  out << "# transgraph\ta_words\tb_words\tc_words\tedges\tcycles\tfixpoint\tcandidates\tcognates"
         "\tsynonyms\thard_unsat\n";
  for (const auto& d : result.diagnostics) {
    out << d.id << '\t' << d.stats.a_count << '\t' << d.stats.b_count << '\t' << d.stats.c_count
        << '\t' << d.stats.edge_count << '\t' << d.cycles_run << '\t' << (d.fixpoint ? "yes" : "no")
        << '\t' << d.candidates << '\t' << d.cognates << '\t' << d.synonyms << '\t'
        << (d.cognate_hard_unsat || d.synonym_hard_unsat ? "yes" : "no") << '\n';
  }
  for (const auto& [id, edges] : result.skipped) {
    out << "# skipped\t" << id << '\t' << edges << '\n';
  }
}

}  // namespace pivotlex

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "pivotlex/lexicon_io.hpp"
#include "pivotlex/parallel.hpp"
#include "pivotlex/pipeline.hpp"
#include "pivotlex/transgraph.hpp"

namespace pivotlex {

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
  double beta = 1.0;
  std::size_t true_positives = 0;
  std::size_t result_size = 0;
  std::size_t gold_size = 0;
};

inline double f_measure(double precision, double recall, double beta) {
  const double b2 = beta * beta;
  const double denom = b2 * precision + recall;
  return denom > 0.0 ? (1.0 + b2) * precision * recall / denom : 0.0;
}

/// Precision, recall and F-beta of `result` against `gold`. An empty result
/// scores zero everywhere.
inline Metrics score(const PairSet& result, const PairSet& gold, double beta = 1.0) {
  if (gold.empty()) throw Error("gold standard is empty");
  if (!(beta > 0.0)) throw Error("beta must be positive");
  if (!result.empty() && (result.lang_a != gold.lang_a || result.lang_c != gold.lang_c)) {
    throw Error("result and gold standard use different language orientations");
  }
  Metrics m;
  m.beta = beta;
  m.result_size = result.size();
  m.gold_size = gold.size();
  for (const auto& p : result.pairs) m.true_positives += gold.contains(p) ? 1 : 0;
  m.precision = m.result_size ? static_cast<double>(m.true_positives) / static_cast<double>(m.result_size) : 0.0;
  m.recall = static_cast<double>(m.true_positives) / static_cast<double>(m.gold_size);
  m.f_score = f_measure(m.precision, m.recall, beta);
  return m;
}

struct GoldBuild {
  PairSet gold;
  bool empty_warning = false;
};

/// Gold standard = evaluation pairs that the induction could possibly reach.
inline GoldBuild build_gold(const PairSet& eval_pairs, const PairSet& universe) {
  GoldBuild out{PairSet{eval_pairs.lang_a, eval_pairs.lang_c, {}}, false};
  for (const auto& p : eval_pairs.pairs) {
    if (universe.contains(p)) out.gold.pairs.insert(p);
  }
  out.empty_warning = out.gold.empty();
  return out;
}

// ---------------------------------------------------------------------------
// Threshold search

struct GridPoint {
  double cognate_threshold = 0.0;
  double synonym_threshold = 0.0;
  Metrics metrics;
};

struct GridSearchResult {
  GridPoint best;
  double cognate_max = 0.0;  // largest cognate cost in the unbounded run
  std::size_t points = 0;
};

inline constexpr std::int64_t kGridStepMicro = 10'000;  // 0.01

// Unbounded extraction sequence of one transgraph. Since each stage stops at
// the first pair over its threshold, any threshold pair selects a prefix of
// the cognate sequence and, for that prefix, a prefix of the synonym sequence.
struct ThresholdProfile {
  std::vector<InducedPair> cognates;
  std::vector<std::vector<InducedPair>> synonyms_by_prefix;  // index: cognates kept
};

inline ThresholdProfile profile_transgraph(const Transgraph& tg, const MethodDescriptor& method) {
  ThresholdProfile out;
  const auto cycled = run_cycles(tg, method.cycle, method.heuristics);
  if (cycled.candidates.empty()) return out;
  const auto mode = method.method == Method::M ? CognateMode::ManyToMany : CognateMode::OneToOne;
  out.cognates = run_cognate_stage(cycled.graph, cycled.candidates, {}, mode).accepted;
  if (method.method != Method::S) return out;
  out.synonyms_by_prefix.resize(out.cognates.size() + 1);
  for (std::size_t keep = 1; keep <= out.cognates.size(); ++keep) {
    StageOptions opts;
    opts.max_accept = keep;
    auto cognate = run_cognate_stage(cycled.graph, cycled.candidates, {}, mode, opts);
    out.synonyms_by_prefix[keep] = run_synonym_stage(cycled.graph, std::move(cognate.sets), {}).accepted;
  }
  return out;
}

inline std::vector<ThresholdProfile> profile_transgraphs(const TransgraphSet& set,
                                                         const MethodDescriptor& method,
                                                         std::size_t jobs) {
  return parallel_map(set.graphs.size(), jobs,
                      [&](std::size_t i) { return profile_transgraph(set.graphs[i], method); });
}

inline std::vector<InducedPair> select_pairs(std::span<const ThresholdProfile> profiles,
                                             std::int64_t cognate_micro, std::int64_t synonym_micro) {
  std::vector<InducedPair> out;
  for (const auto& prof : profiles) {
    std::size_t keep = 0;
    while (keep < prof.cognates.size() && to_micro(prof.cognates[keep].cost) <= cognate_micro) ++keep;
    out.insert(out.end(), prof.cognates.begin(), prof.cognates.begin() + static_cast<std::ptrdiff_t>(keep));
    if (prof.synonyms_by_prefix.empty()) continue;
    for (const auto& s : prof.synonyms_by_prefix[keep]) {
      if (to_micro(s.cost) > synonym_micro) break;
      out.push_back(s);
    }
  }
  return out;
}

namespace detail {

inline std::int64_t cognate_grid_top(std::span<const ThresholdProfile> profiles) {
  std::int64_t top = 0;
  for (const auto& prof : profiles) {
    for (const auto& p : prof.cognates) top = std::max(top, to_micro(p.cost));
  }
  return top;
}

// Visits every grid point in ascending (cognate, synonym) order.
template <typename Fn>
void for_each_grid_point(std::int64_t cognate_top_micro, bool with_synonyms, Fn&& fn) {
  const std::int64_t cognate_steps = (cognate_top_micro + kGridStepMicro - 1) / kGridStepMicro;
  const std::int64_t synonym_steps = with_synonyms ? 100 : 0;
  for (std::int64_t i = 0; i <= cognate_steps; ++i) {
    for (std::int64_t j = 0; j <= synonym_steps; ++j) fn(i * kGridStepMicro, j * kGridStepMicro);
  }
}

inline double grid_value(std::int64_t micro) { return static_cast<double>(micro) / kWeightScale; }

}  // namespace detail

/// Best-F thresholds on the 0.01 grid: cognate threshold 0..C_max (largest
/// cost of an unbounded run), synonym threshold 0..1 for method S. Ties go to
/// the smallest thresholds. Each transgraph is solved once per cognate prefix
/// instead of once per grid point.
inline GridSearchResult grid_search(const TransgraphSet& set, const MethodDescriptor& method,
                                    const PairSet& gold, double beta = 1.0, std::size_t jobs = 1) {
  const auto profiles = profile_transgraphs(set, method, jobs);
  GridSearchResult out;
  out.cognate_max = detail::grid_value(detail::cognate_grid_top(profiles));
  bool have = false;
  detail::for_each_grid_point(detail::cognate_grid_top(profiles), method.method == Method::S,
                              [&](std::int64_t cm, std::int64_t sm) {
                                ++out.points;
                                const auto pairs = select_pairs(profiles, cm, sm);
                                const auto m = score(to_pair_set(pairs, gold.lang_a, gold.lang_c), gold, beta);
                                if (!have || m.f_score > out.best.metrics.f_score) {
                                  out.best = {detail::grid_value(cm), detail::grid_value(sm), m};
                                  have = true;
                                }
                              });
  return out;
}

/// Reference implementation of `grid_search` that re-runs the whole induction
/// for every grid point.
inline GridSearchResult grid_search_rerun(const TransgraphSet& set, const MethodDescriptor& method,
                                          const PairSet& gold, double beta = 1.0,
                                          std::size_t jobs = 1) {
  const auto probe = induce_transgraphs(set, method, {}, jobs);
  std::int64_t top = 0;
  for (const auto& p : probe.pairs) {
    if (p.stage == Stage::Cognate) top = std::max(top, to_micro(p.cost));
  }
  GridSearchResult out;
  out.cognate_max = detail::grid_value(top);
  bool have = false;
  detail::for_each_grid_point(top, method.method == Method::S, [&](std::int64_t cm, std::int64_t sm) {
    ++out.points;
    HyperParams hp{detail::grid_value(cm), detail::grid_value(sm)};
    const auto run = induce_transgraphs(set, method, hp, jobs);
    const auto m = score(to_pair_set(run.pairs, gold.lang_a, gold.lang_c), gold, beta);
    if (!have || m.f_score > out.best.metrics.f_score) {
      out.best = {detail::grid_value(cm), detail::grid_value(sm), m};
      have = true;
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Cross-validation

struct FoldPlan {
  int k = 0;
  std::vector<std::vector<int>> folds;  // transgraph ids per fold
};

/// Contiguous split of ids in their given order; sizes differ by at most one,
/// earlier folds taking the remainder.
inline FoldPlan make_folds(std::span<const int> ids, int k) {
  if (k < 2) throw Error("cross-validation needs at least 2 folds");
  if (static_cast<std::size_t>(k) > ids.size()) {
    throw Error("more folds (" + std::to_string(k) + ") than transgraphs (" +
                std::to_string(ids.size()) + ")");
  }
  FoldPlan plan{k, {}};
  const std::size_t base = ids.size() / static_cast<std::size_t>(k);
  const std::size_t extra = ids.size() % static_cast<std::size_t>(k);
  std::size_t pos = 0;
  for (std::size_t f = 0; f < static_cast<std::size_t>(k); ++f) {
    const std::size_t len = base + (f < extra ? 1 : 0);
    plan.folds.emplace_back(ids.begin() + static_cast<std::ptrdiff_t>(pos),
                            ids.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
  }
  return plan;
}

// Gold pairs with at least one word inside the given transgraphs.
inline PairSet restrict_gold(const PairSet& gold, const TransgraphSet& set) {
  std::set<Word> words;
  for (const auto& tg : set.graphs) {
    words.insert(tg.a_words.begin(), tg.a_words.end());
    words.insert(tg.c_words.begin(), tg.c_words.end());
  }
  PairSet out{gold.lang_a, gold.lang_c, {}};
  for (const auto& p : gold.pairs) {
    if (words.contains(p.first) || words.contains(p.second)) out.pairs.insert(p);
  }
  return out;
}

struct FoldResult {
  std::vector<int> test_ids;
  GridPoint train;
  Metrics test;
};

struct CrossValidationReport {
  std::vector<FoldResult> folds;
  double mean_test_f = 0.0;
  double mean_train_f = 0.0;
};

/// For each fold, picks thresholds by grid search on the remaining folds and
/// scores them on the held-out fold.
inline CrossValidationReport cross_validate(const TransgraphSet& set, const MethodDescriptor& method,
                                            const PairSet& gold, int k, double beta = 1.0,
                                            std::size_t jobs = 1) {
  std::vector<int> ids;
  for (const auto& tg : set.graphs) ids.push_back(tg.id);
  const auto plan = make_folds(ids, k);

  CrossValidationReport report;
  for (const auto& fold : plan.folds) {
    TransgraphSet train, test;
    for (const auto& tg : set.graphs) {
      const bool held_out = std::find(fold.begin(), fold.end(), tg.id) != fold.end();
      (held_out ? test : train).graphs.push_back(tg);
    }
    const auto chosen = grid_search(train, method, restrict_gold(gold, train), beta, jobs).best;
    const auto profiles = profile_transgraphs(test, method, jobs);
    const auto pairs = select_pairs(profiles, to_micro(chosen.cognate_threshold),
                                    to_micro(chosen.synonym_threshold));
    FoldResult r{fold, chosen,
                 score(to_pair_set(pairs, gold.lang_a, gold.lang_c), restrict_gold(gold, test), beta)};
    report.mean_test_f += r.test.f_score;
    report.mean_train_f += r.train.metrics.f_score;
    report.folds.push_back(std::move(r));
  }
  report.mean_test_f /= static_cast<double>(report.folds.size());
  report.mean_train_f /= static_cast<double>(report.folds.size());
  return report;
}

// ---------------------------------------------------------------------------
// Significance

struct TTestReport {
  double t_stat = 0.0;
  int df = 0;
  double p_value = 0.0;
  double mean_diff = 0.0;
};

/// Student-t cumulative distribution function.
inline double t_cdf(double t, int df) {
  if (df < 1) throw Error("degrees of freedom must be at least 1");
  if (std::isnan(t)) throw Error("t statistic is NaN");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  return boost::math::cdf(boost::math::students_t_distribution<double>(df), t);
}

/// One-tailed paired t-test of H1: mean(xs - ys) > 0.
inline TTestReport paired_t_test(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error("paired samples must have equal length");
  const std::size_t n = xs.size();
  if (n < 2) throw Error("paired t-test needs at least 2 observations");
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = xs[i] - ys[i];
  double mean = 0.0;
  for (double v : d) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : d) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  TTestReport r;
  r.df = static_cast<int>(n - 1);
  r.mean_diff = mean;
  if (sd == 0.0) {
    if (mean == 0.0) {
      r.t_stat = 0.0;
      r.p_value = 0.5;
    } else {
      r.t_stat = mean > 0 ? INFINITY : -INFINITY;
      r.p_value = mean > 0 ? 0.0 : 1.0;
    }
    return r;
  }
  r.t_stat = mean / (sd / std::sqrt(static_cast<double>(n)));
  r.p_value = 1.0 - t_cdf(r.t_stat, r.df);
  return r;
}

// ---------------------------------------------------------------------------
// Reports

inline void write_metrics_tsv(const Metrics& m, std::ostream& out) {
  out << "precision\trecall\tf_score\tbeta\ttrue_positives\tresult_size\tgold_size\n"
      << format_fixed6(m.precision) << '\t' << format_fixed6(m.recall) << '\t'
      << format_fixed6(m.f_score) << '\t' << format_fixed6(m.beta) << '\t' << m.true_positives
      << '\t' << m.result_size << '\t' << m.gold_size << '\n';
}

inline void write_metrics_text(const Metrics& m, std::ostream& out) {
  auto row = [&](const char* name, const std::string& value) {
    out << std::left << std::setw(16) << name << std::right << std::setw(12) << value << '\n';
  };
  row("precision", format_fixed6(m.precision));
  row("recall", format_fixed6(m.recall));
  row("f_score", format_fixed6(m.f_score));
  row("beta", format_fixed6(m.beta));
  row("true_positives", std::to_string(m.true_positives));
  row("result_size", std::to_string(m.result_size));
  row("gold_size", std::to_string(m.gold_size));
}

}  // namespace pivotlex

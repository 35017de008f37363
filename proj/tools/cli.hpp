#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pivotlex/pivotlex.hpp"

namespace pivotlex::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Bad flag values caught after CLI11 parsing (method grammar, thresholds, ...).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InputOptions {
  std::string dict_ab;
  std::string dict_cb;
  std::string dict_bc;
  std::string lang_a = "a";
  std::string lang_b = "b";
  std::string lang_c = "c";
  bool no_normalize = false;
  std::size_t max_edges = kDefaultMaxEdges;
};

struct Languages {
  LanguageTag a, b, c;
};

inline Languages languages(const InputOptions& in) {
  try {
    Languages l{LanguageTag(in.lang_a), LanguageTag(in.lang_b), LanguageTag(in.lang_c)};
    if (l.a == l.b || l.b == l.c || l.a == l.c) throw Error("languages a, b and c must differ");
    return l;
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return in;
}

template <typename Fn>
auto read_file(const std::string& path, Fn&& parse) {
  auto in = open_input(path);
  try {
    return parse(in);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

struct Dictionaries {
  Languages langs;
  BilingualDictionary ab;
  BilingualDictionary cb;
};

inline Dictionaries load_dictionaries(const InputOptions& opt) {
  const auto langs = languages(opt);
  if (opt.dict_ab.empty()) throw UsageError("--dict-ab is required");
  if (opt.dict_cb.empty() == opt.dict_bc.empty()) {
    throw UsageError("exactly one of --dict-cb and --dict-bc is required");
  }
  const bool norm = !opt.no_normalize;
  auto ab = read_file(opt.dict_ab, [&](std::istream& s) { return parse_dictionary(s, langs.a, langs.b, norm); });
  BilingualDictionary cb;
  if (!opt.dict_cb.empty()) {
    cb = read_file(opt.dict_cb, [&](std::istream& s) { return parse_dictionary(s, langs.c, langs.b, norm); });
  } else {
    cb = read_file(opt.dict_bc, [&](std::istream& s) { return parse_dictionary(s, langs.b, langs.c, norm); })
             .inverted();
  }
  return {langs, std::move(ab), std::move(cb)};
}

inline TransgraphSet load_transgraphs(const InputOptions& opt, Dictionaries* keep = nullptr) {
  auto dicts = load_dictionaries(opt);
  auto set = filter_big(build_transgraphs(dicts.ab, dicts.cb), opt.max_edges);
  if (keep) *keep = std::move(dicts);
  return set;
}

inline MethodDescriptor method_flag(const std::string& text) {
  try {
    return parse_method(text);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

inline HyperParams threshold_flags(const std::optional<double>& cognate,
                                   const std::optional<double>& synonym) {
  HyperParams hp{cognate, synonym};
  try {
    hp.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return hp;
}

// Content is assembled in memory first so a failed run leaves no partial file.
inline void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot open '" + path + "' for writing");
  file << content;
  if (!file.flush()) throw Error("failed to write '" + path + "'");
}

// Gold pairs restricted to what the transgraphs could ever produce.
inline PairSet load_gold(const std::string& path, const TransgraphSet& set, const Languages& langs,
                         bool normalize, std::ostream& err) {
  auto raw = read_file(path, [&](std::istream& s) { return parse_gold_standard(s, langs.a, langs.c, normalize); });
  auto built = build_gold(raw, cartesian_product(set, CartesianScope::Across));
  if (built.empty_warning) {
    err << "warning: gold standard shares no pair with the transgraphs\n";
    throw Error("gold standard is empty after intersection");
  }
  return std::move(built.gold);
}

inline std::vector<std::pair<double, double>> parse_score_pairs(std::istream& in) {
  std::vector<std::pair<double, double>> out;
  detail::for_each_record(in, [&](std::size_t number, const std::vector<std::string_view>& f) {
    if (f.size() != 2) throw ParseError(number, "expected 2 tab-separated numbers");
    double v[2];
    for (int i = 0; i < 2; ++i) {
      const std::string token(f[static_cast<std::size_t>(i)]);
      std::size_t used = 0;
      try {
        v[i] = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != token.size()) throw ParseError(number, "not a number: '" + token + "'");
    }
    out.emplace_back(v[0], v[1]);
  });
  return out;
}

inline void add_input_flags(CLI::App* cmd, InputOptions& opt) {
  cmd->add_option("--dict-ab", opt.dict_ab, "A-B dictionary TSV (A word, pivot word)");
  cmd->add_option("--dict-cb", opt.dict_cb, "C-B dictionary TSV (C word, pivot word)");
  cmd->add_option("--dict-bc", opt.dict_bc, "B-C dictionary TSV, inverted on load");
  cmd->add_option("--lang-a", opt.lang_a, "language tag of A")->capture_default_str();
  cmd->add_option("--lang-b", opt.lang_b, "language tag of the pivot B")->capture_default_str();
  cmd->add_option("--lang-c", opt.lang_c, "language tag of C")->capture_default_str();
  cmd->add_option("--max-edges", opt.max_edges, "skip transgraphs with more edges")->capture_default_str();
  cmd->add_flag("--no-normalize", opt.no_normalize, "keep case and composition of surfaces");
}

/// Entry point shared by the executable and the tests.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pivot-based bilingual lexicon induction"};
  app.require_subcommand(1);

  InputOptions in;
  std::string method_text, output, gold_path, result_path, input_path, edges_path, diag_path;
  std::optional<double> cognate_threshold, synonym_threshold;
  std::size_t jobs = default_jobs();
  double beta = 1.0;
  int folds = 3, delta = 2, n_max = 10, transgraph_id = 0;
  std::string baseline_kind, scope = "within", format = "tsv";
  bool rerun = false;

  auto* induce = app.add_subcommand("induce", "induce A-C pairs");
  add_input_flags(induce, in);
  induce->add_option("--method", method_text, "method descriptor, e.g. 2:S:H14")->required();
  induce->add_option("--cognate-threshold", cognate_threshold, "cognate cost threshold");
  induce->add_option("--synonym-threshold", synonym_threshold, "synonym cost threshold");
  induce->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  induce->add_option("-o,--output", output, "result TSV (default stdout)");
  induce->add_option("--diagnostics", diag_path, "per-transgraph diagnostics TSV");

  auto* baseline = app.add_subcommand("baseline", "Cartesian product or inverse consultation");
  add_input_flags(baseline, in);
  baseline->add_option("kind", baseline_kind, "ic or cp")->required()->check(CLI::IsMember({"ic", "cp"}));
  baseline->add_option("--delta", delta, "minimum shared pivots for ic")->check(CLI::PositiveNumber);
  baseline->add_option("--scope", scope, "within or across for cp")->check(CLI::IsMember({"within", "across"}));
  baseline->add_option("-o,--output", output, "pair TSV (default stdout)");

  auto* eval = app.add_subcommand("eval", "score a result file against a gold standard");
  eval->add_option("--result", result_path, "result or pair TSV")->required();
  eval->add_option("--gold", gold_path, "gold standard TSV")->required();
  eval->add_option("--lang-a", in.lang_a, "language tag of A");
  eval->add_option("--lang-c", in.lang_c, "language tag of C");
  eval->add_flag("--no-normalize", in.no_normalize, "keep case and composition of surfaces");
  eval->add_option("--beta", beta, "F-score beta")->check(CLI::PositiveNumber);
  eval->add_option("--format", format, "tsv or text")->check(CLI::IsMember({"tsv", "text"}));
  eval->add_option("-o,--output", output, "metrics report (default stdout)");

  auto* grid = app.add_subcommand("grid-search", "pick thresholds maximizing F");
  add_input_flags(grid, in);
  grid->add_option("--method", method_text, "method descriptor")->required();
  grid->add_option("--gold", gold_path, "gold standard TSV")->required();
  grid->add_option("--beta", beta, "F-score beta")->check(CLI::PositiveNumber);
  grid->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  grid->add_flag("--rerun", rerun, "re-solve every grid point instead of filtering");
  grid->add_option("-o,--output", output, "report TSV (default stdout)");

  auto* cv = app.add_subcommand("cv", "k-fold cross-validation of the thresholds");
  add_input_flags(cv, in);
  cv->add_option("--method", method_text, "method descriptor")->required();
  cv->add_option("--gold", gold_path, "gold standard TSV")->required();
  cv->add_option("--folds", folds, "number of folds");
  cv->add_option("--beta", beta, "F-score beta")->check(CLI::PositiveNumber);
  cv->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  cv->add_option("-o,--output", output, "report TSV (default stdout)");

  auto* ttest = app.add_subcommand("ttest", "one-tailed paired t-test (x > y)");
  ttest->add_option("--input", input_path, "TSV with x and y per line")->required();
  ttest->add_option("-o,--output", output, "report TSV (default stdout)");

  auto* poly = app.add_subcommand("polysemy", "predicted precision sweep");
  poly->add_option("--n-max", n_max, "largest shared-sense count (1-20)");
  poly->add_option("-o,--output", output, "CSV (default stdout)");

  auto* stats = app.add_subcommand("stats", "transgraph statistics");
  add_input_flags(stats, in);
  stats->add_option("-o,--output", output, "statistics TSV (default stdout)");
  stats->add_option("--edges", edges_path, "edge dump of every kept transgraph");

  auto* wcnf = app.add_subcommand("export-wcnf", "write the cognate formula of one transgraph");
  add_input_flags(wcnf, in);
  wcnf->add_option("--method", method_text, "method descriptor")->required();
  wcnf->add_option("--transgraph", transgraph_id, "transgraph id")->required();
  wcnf->add_option("-o,--output", output, "WCNF file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    std::ostringstream buf;
    const bool norm = !in.no_normalize;

    if (induce->parsed()) {
      const auto method = method_flag(method_text);
      const auto hp = threshold_flags(cognate_threshold, synonym_threshold);
      const auto set = load_transgraphs(in);
      const auto result = induce_transgraphs(set, method, hp, jobs);
      write_result_pairs(result.pairs, buf);
      emit(output, buf.str(), out);
      if (!diag_path.empty()) {
        std::ostringstream diag;
        write_diagnostics(result, diag);
        emit(diag_path, diag.str(), out);
      }
    } else if (baseline->parsed()) {
      Dictionaries dicts;
      const auto set = load_transgraphs(in, &dicts);
      if (baseline_kind == "ic") {
        write_pair_set(inverse_consultation(dicts.ab, dicts.cb, IcConfig{delta}), buf);
      } else {
        write_pair_set(cartesian_product(set, scope == "within" ? CartesianScope::Within : CartesianScope::Across), buf);
      }
      emit(output, buf.str(), out);
    } else if (eval->parsed()) {
      LanguageTag a, c;
      try {
        a = LanguageTag(in.lang_a);
        c = LanguageTag(in.lang_c);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      const auto result = read_file(result_path, [&](std::istream& s) { return parse_pair_list(s, a, c, norm); });
      const auto gold = read_file(gold_path, [&](std::istream& s) { return parse_gold_standard(s, a, c, norm); });
      const auto m = score(result, gold, beta);
      if (format == "tsv") {
        write_metrics_tsv(m, buf);
      } else {
        write_metrics_text(m, buf);
      }
      emit(output, buf.str(), out);
    } else if (grid->parsed()) {
      const auto method = method_flag(method_text);
      Dictionaries dicts;
      const auto set = load_transgraphs(in, &dicts);
      const auto gold = load_gold(gold_path, set, dicts.langs, norm, err);
      const auto r = rerun ? grid_search_rerun(set, method, gold, beta, jobs)
                           : grid_search(set, method, gold, beta, jobs);
      buf << "cognate_threshold\tsynonym_threshold\tprecision\trecall\tf_score\tcognate_max\tgrid_points\n"
          << format_fixed6(r.best.cognate_threshold) << '\t' << format_fixed6(r.best.synonym_threshold) << '\t'
          << format_fixed6(r.best.metrics.precision) << '\t' << format_fixed6(r.best.metrics.recall) << '\t'
          << format_fixed6(r.best.metrics.f_score) << '\t' << format_fixed6(r.cognate_max) << '\t' << r.points
          << '\n';
      emit(output, buf.str(), out);
    } else if (cv->parsed()) {
      const auto method = method_flag(method_text);
      Dictionaries dicts;
      const auto set = load_transgraphs(in, &dicts);
      const auto gold = load_gold(gold_path, set, dicts.langs, norm, err);
      const auto r = cross_validate(set, method, gold, folds, beta, jobs);
      buf << "fold\tfirst_id\tlast_id\tcognate_threshold\tsynonym_threshold\ttrain_f\ttest_precision"
             "\ttest_recall\ttest_f\n";
      for (std::size_t i = 0; i < r.folds.size(); ++i) {
        const auto& f = r.folds[i];
        buf << i << '\t' << f.test_ids.front() << '\t' << f.test_ids.back() << '\t'
            << format_fixed6(f.train.cognate_threshold) << '\t' << format_fixed6(f.train.synonym_threshold)
            << '\t' << format_fixed6(f.train.metrics.f_score) << '\t' << format_fixed6(f.test.precision) << '\t'
            << format_fixed6(f.test.recall) << '\t' << format_fixed6(f.test.f_score) << '\n';
      }
      buf << "mean\t\t\t\t\t" << format_fixed6(r.mean_train_f) << "\t\t\t" << format_fixed6(r.mean_test_f) << '\n';
      emit(output, buf.str(), out);
    } else if (ttest->parsed()) {
      const auto rows = read_file(input_path, [](std::istream& s) { return parse_score_pairs(s); });
      std::vector<double> xs, ys;
      for (const auto& [x, y] : rows) {
        xs.push_back(x);
        ys.push_back(y);
      }
      const auto r = paired_t_test(xs, ys);
      buf << "t_stat\tdf\tp_value\tmean_diff\n"
          << format_fixed6(r.t_stat) << '\t' << r.df << '\t' << format_fixed6(r.p_value) << '\t'
          << format_fixed6(r.mean_diff) << '\n';
      emit(output, buf.str(), out);
    } else if (poly->parsed()) {
      if (n_max < 1 || n_max > polysemy::kMaxSenses) throw UsageError("--n-max must lie in [1, 20]");
      polysemy::write_sweep_csv(polysemy::sweep(n_max), buf);
      emit(output, buf.str(), out);
    } else if (stats->parsed()) {
      const auto set = load_transgraphs(in);
      buf << "transgraph\ta_words\tb_words\tc_words\tedges\n";
      for (const auto& tg : set.graphs) {
        const auto s = component_stats(tg);
        buf << tg.id << '\t' << s.a_count << '\t' << s.b_count << '\t' << s.c_count << '\t' << s.edge_count << '\n';
      }
      for (const auto& [id, edges] : set.skipped) buf << "# skipped\t" << id << '\t' << edges << '\n';
      emit(output, buf.str(), out);
      if (!edges_path.empty()) {
        std::ostringstream dump;
        for (const auto& tg : set.graphs) {
          dump << "# transgraph " << tg.id << '\n';
          dump_edges(tg, dump);
        }
        emit(edges_path, dump.str(), out);
      }
    } else if (wcnf->parsed()) {
      const auto method = method_flag(method_text);
      const auto set = load_transgraphs(in);
      const Transgraph* tg = nullptr;
      for (const auto& g : set.graphs) {
        if (g.id == transgraph_id) tg = &g;
      }
      if (!tg) throw Error("no kept transgraph with id " + std::to_string(transgraph_id));
      const auto cycled = run_cycles(*tg, method.cycle, method.heuristics);
      if (cycled.candidates.empty()) throw Error("transgraph has no candidate pairs");
      auto sets = initial_sets(cycled.graph, cycled.candidates);
      const auto cnf = method.method == Method::M ? encode_mm_cnf(cycled.candidates, sets)
                                                  : encode_cognate_cnf(cycled.candidates, sets);
      export_wcnf(cnf, buf);
      emit(output, buf.str(), out);
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace pivotlex::cli

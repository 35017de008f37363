#pragma once

#include <algorithm>
#include <compare>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pivotlex/error.hpp"
#include "pivotlex/unicode.hpp"

namespace pivotlex {

class LanguageTag {
 public:
  LanguageTag() = default;
  explicit LanguageTag(std::string code) : code_(std::move(code)) {
    if (code_.empty()) throw Error("language tag must not be empty");
    for (unsigned char ch : code_) {
      if (std::isspace(ch)) throw Error("language tag '" + code_ + "' contains whitespace");
      if (std::isupper(ch)) throw Error("language tag '" + code_ + "' must be lowercase");
    }
  }

  const std::string& code() const noexcept { return code_; }

  friend auto operator<=>(const LanguageTag&, const LanguageTag&) = default;
  friend bool operator==(const LanguageTag&, const LanguageTag&) = default;

 private:
  std::string code_;
};

struct Word {
  LanguageTag lang;
  std::string surface;

  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;
};

using WordPair = std::pair<Word, Word>;

struct BilingualDictionary {
  LanguageTag source;
  LanguageTag target;
  std::set<WordPair> entries;

  // Swaps orientation, e.g. turns a B->C dictionary into C->B.
  BilingualDictionary inverted() const {
    BilingualDictionary out{target, source, {}};
    for (const auto& [s, t] : entries) out.entries.emplace(t, s);
    return out;
  }
};

// Pair set oriented A -> C.
struct PairSet {
  LanguageTag lang_a;
  LanguageTag lang_c;
  std::set<WordPair> pairs;

  std::size_t size() const noexcept { return pairs.size(); }
  bool empty() const noexcept { return pairs.empty(); }
  bool contains(const WordPair& p) const { return pairs.contains(p); }

  friend bool operator==(const PairSet&, const PairSet&) = default;
};

enum class Stage { Cognate, Synonym };

inline std::string_view to_string(Stage s) {
  return s == Stage::Cognate ? "cognate" : "synonym";
}

struct InducedPair {
  Word w_a;
  Word w_c;
  Stage stage = Stage::Cognate;
  double cost = 0.0;
  int transgraph_id = 0;

  friend bool operator==(const InducedPair&, const InducedPair&) = default;
};

/// Canonical surface form: trimmed, internal whitespace collapsed, case-folded
/// and NFC-composed. Throws if nothing is left.
inline std::string normalize_word(std::string_view raw) {
  auto out = unicode::clean_text(raw, true);
  if (out.empty()) throw Error("word is empty after normalization");
  return out;
}

namespace detail {

inline std::string clean_surface(std::string_view raw, bool normalize) {
  auto out = unicode::clean_text(raw, normalize);
  if (out.empty()) throw Error("word is empty after normalization");
  return out;
}

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

inline bool is_skippable(std::string_view line) {
  auto first = line.find_first_not_of(" \t\r\f\v");
  return first == std::string_view::npos || line[first] == '#';
}

// Calls fn(line_number, fields) for every data line.
template <typename Fn>
void for_each_record(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_skippable(line)) continue;
    if (!unicode::is_valid_utf8(line)) throw ParseError(number, "invalid UTF-8");
    fn(number, split_tabs(line));
  }
  if (in.bad()) throw Error("read failure");
}

inline std::set<WordPair> parse_two_column(std::istream& in, const LanguageTag& left,
                                           const LanguageTag& right, bool normalize) {
  std::set<WordPair> out;
  for_each_record(in, [&](std::size_t number, const std::vector<std::string_view>& fields) {
    if (fields.size() != 2) {
      throw ParseError(number, "expected 2 tab-separated fields, found " +
                                   std::to_string(fields.size()));
    }
    try {
      out.emplace(Word{left, clean_surface(fields[0], normalize)},
                  Word{right, clean_surface(fields[1], normalize)});
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(number, e.what());
    }
  });
  return out;
}

}  // namespace detail

/// Reads `source<TAB>target` lines; `#` lines and blank lines are ignored.
inline BilingualDictionary parse_dictionary(std::istream& in, const LanguageTag& src,
                                            const LanguageTag& tgt, bool normalize = true) {
  if (src == tgt) throw Error("dictionary source and target languages must differ");
  BilingualDictionary dict{src, tgt, detail::parse_two_column(in, src, tgt, normalize)};
  if (dict.entries.empty()) throw Error("dictionary has no entries");
  return dict;
}

inline BilingualDictionary parse_dictionary(std::string_view text, const LanguageTag& src,
                                            const LanguageTag& tgt, bool normalize = true) {
  std::istringstream in{std::string(text)};
  return parse_dictionary(in, src, tgt, normalize);
}

inline PairSet parse_gold_standard(std::istream& in, const LanguageTag& lang_a,
                                   const LanguageTag& lang_c, bool normalize = true) {
  return PairSet{lang_a, lang_c, detail::parse_two_column(in, lang_a, lang_c, normalize)};
}

inline PairSet parse_gold_standard(std::string_view text, const LanguageTag& lang_a,
                                   const LanguageTag& lang_c, bool normalize = true) {
  std::istringstream in{std::string(text)};
  return parse_gold_standard(in, lang_a, lang_c, normalize);
}

// Accepts both plain pair files (2 fields) and result files (4 fields).
inline PairSet parse_pair_list(std::istream& in, const LanguageTag& lang_a,
                               const LanguageTag& lang_c, bool normalize = true) {
  PairSet out{lang_a, lang_c, {}};
  detail::for_each_record(in, [&](std::size_t number, const std::vector<std::string_view>& f) {
    if (f.size() != 2 && f.size() != 4) {
      throw ParseError(number, "expected 2 or 4 tab-separated fields, found " +
                                   std::to_string(f.size()));
    }
    try {
      out.pairs.emplace(Word{lang_a, detail::clean_surface(f[0], normalize)},
                        Word{lang_c, detail::clean_surface(f[1], normalize)});
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(number, e.what());
    }
  });
  return out;
}

inline std::string format_fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string out(buf);
  if (out == "-0.000000") out = "0.000000";
  return out;
}

/// One `source<TAB>target<TAB>stage<TAB>cost` line per pair, sorted by
/// (source, target).
inline void write_result_pairs(std::span<const InducedPair> result, std::ostream& sink) {
  std::vector<const InducedPair*> order;
  order.reserve(result.size());
  for (const auto& p : result) order.push_back(&p);
  std::sort(order.begin(), order.end(), [](const InducedPair* x, const InducedPair* y) {
    return std::tie(x->w_a.surface, x->w_c.surface) < std::tie(y->w_a.surface, y->w_c.surface);
  });
  for (const auto* p : order) {
    sink << p->w_a.surface << '\t' << p->w_c.surface << '\t' << to_string(p->stage) << '\t'
         << format_fixed6(p->cost) << '\n';
  }
  if (!sink) throw Error("failed to write result pairs");
}

inline void write_pair_set(const PairSet& set, std::ostream& sink) {
  for (const auto& [a, c] : set.pairs) sink << a.surface << '\t' << c.surface << '\n';
  if (!sink) throw Error("failed to write pair set");
}

inline PairSet to_pair_set(std::span<const InducedPair> result, const LanguageTag& lang_a,
                           const LanguageTag& lang_c) {
  PairSet out{lang_a, lang_c, {}};
  for (const auto& p : result) out.pairs.emplace(p.w_a, p.w_c);
  return out;
}

}  // namespace pivotlex

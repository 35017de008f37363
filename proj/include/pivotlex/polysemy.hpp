#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "pivotlex/error.hpp"
#include "pivotlex/lexicon_io.hpp"

namespace pivotlex::polysemy {

inline constexpr int kMaxSenses = 20;

struct Scenario {
  int shared = 0;    // n: senses shared by the pivot and the non-pivot words
  int unshared = 0;  // m: pivot senses not shared
};

struct SweepRow {
  int n = 0;
  int m = 0;
  double precision = 0.0;
};

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

// Sum of C(n,i) for i = 1..n.
inline std::int64_t nonempty_subsets(int n) {
  std::int64_t total = 0;
  for (int i = 1; i <= n; ++i) total += static_cast<std::int64_t>(binomial(n, i));
  return total;
}

/// Correct translations among sense combinations of one pivot:
/// 2 * sum_i sum_j C(n,i) C(i,j) - sum_i C(n,i).
inline std::int64_t correct_trans(int n) {
  if (n < 0 || n > kMaxSenses) throw Error("sense count must lie in [0, 20]");
  std::int64_t pairs = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= i; ++j) {
      pairs += static_cast<std::int64_t>(binomial(n, i) * binomial(i, j));
    }
  }
  return 2 * pairs - nonempty_subsets(n);
}

// Number of wrong translations, i.e. the denominator minus the numerator.
inline std::int64_t wrong_trans(const Scenario& s) {
  const std::int64_t total = nonempty_subsets(s.shared) + nonempty_subsets(s.unshared);
  return total * total - (correct_trans(s.shared) + correct_trans(s.unshared));
}

inline double predicted_precision(const Scenario& s) {
  if (s.shared < 0 || s.unshared < 0) throw Error("sense counts must be non-negative");
  if (s.shared + s.unshared < 1) throw Error("at least one sense is required");
  const std::int64_t total = nonempty_subsets(s.shared) + nonempty_subsets(s.unshared);
  const std::int64_t correct = correct_trans(s.shared) + correct_trans(s.unshared);
  return static_cast<double>(correct) / (static_cast<double>(total) * static_cast<double>(total));
}

/// Rows for n = 1..n_max and m = 0..n.
inline std::vector<SweepRow> sweep(int n_max) {
  if (n_max < 1 || n_max > kMaxSenses) throw Error("n_max must lie in [1, 20]");
  std::vector<SweepRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    for (int m = 0; m <= n; ++m) rows.push_back({n, m, predicted_precision({n, m})});
  }
  return rows;
}

inline void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "n,m,precision\n";
  for (const auto& r : rows) out << r.n << ',' << r.m << ',' << format_fixed6(r.precision) << '\n';
  if (!out) throw Error("failed to write sweep");
}

}  // namespace pivotlex::polysemy

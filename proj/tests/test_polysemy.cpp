#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "pivotlex/polysemy.hpp"

using namespace pivotlex;
using namespace pivotlex::polysemy;

namespace {

// Closed form of the double sum: sum_i C(n,i) (2^i - 1) = 3^n - 2^n.
std::int64_t correct_closed(int n) {
  const auto p3 = static_cast<std::int64_t>(std::llround(std::pow(3.0, n)));
  const auto p2 = std::int64_t{1} << n;
  return 2 * (p3 - p2) - (p2 - 1);
}

}  // namespace

TEST(CorrectTrans, Examples) {
  EXPECT_EQ(correct_trans(0), 0);
  EXPECT_EQ(correct_trans(1), 1);
  EXPECT_EQ(correct_trans(2), 7);
  for (int n = 0; n <= kMaxSenses; ++n) EXPECT_EQ(correct_trans(n), correct_closed(n)) << n;
  EXPECT_THROW(correct_trans(21), Error);
}

TEST(PredictedPrecision, Examples) {
  EXPECT_NEAR(predicted_precision({2, 2}), 0.388889, 1e-6);
  EXPECT_DOUBLE_EQ(predicted_precision({2, 2}), 14.0 / 36.0);
  EXPECT_EQ(wrong_trans({2, 2}), 22);
  EXPECT_EQ(predicted_precision({1, 0}), 1.0);
  EXPECT_DOUBLE_EQ(predicted_precision({1, 1}), 0.5);
  EXPECT_THROW(predicted_precision({0, 0}), Error);
}

TEST(PredictedPrecision, Shape) {
  for (int n = 1; n <= 10; ++n) {
    for (int m = 1; m <= n; ++m) EXPECT_LT(predicted_precision({n, m}), predicted_precision({n, m - 1}));
    if (n > 1) { EXPECT_LT(predicted_precision({n, 0}), predicted_precision({n - 1, 0})); }
  }
  for (int n = 0; n <= kMaxSenses; ++n) {
    const auto total = (std::int64_t{1} << n) - 1;
    EXPECT_LE(correct_trans(n), total * total);
    for (int m = 0; m <= kMaxSenses; ++m) {
      if (n + m == 0) continue;
      const double p = predicted_precision({n, m});
      EXPECT_GT(p, 0.0);
      EXPECT_LE(p, 1.0);
    }
  }
}

TEST(Binomial, Exact) {
  EXPECT_EQ(binomial(20, 10), 184756u);
  EXPECT_EQ(binomial(5, 0), 1u);
  EXPECT_EQ(binomial(5, 6), 0u);
  EXPECT_EQ(nonempty_subsets(20), (1 << 20) - 1);
}

TEST(Sweep, RowsAndCsv) {
  const auto rows = sweep(1);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].m, 0);
  EXPECT_EQ(rows[0].precision, 1.0);
  EXPECT_EQ(rows[1].precision, 0.5);
  std::ostringstream out;
  write_sweep_csv(rows, out);
  EXPECT_EQ(out.str(), "n,m,precision\n1,0,1.000000\n1,1,0.500000\n");
  EXPECT_EQ(sweep(20).size(), 230u);  // sum of (n + 1) for n = 1..20
  EXPECT_THROW(sweep(0), Error);
  EXPECT_THROW(sweep(21), Error);
}

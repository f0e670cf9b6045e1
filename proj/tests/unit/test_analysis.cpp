#include <gtest/gtest.h>

#include <cmath>

#include "mpkc/analysis.hpp"
#include "mpkc/block_matrix.hpp"
#include "mpkc/errors.hpp"
#include "mpkc/multinacci.hpp"
#include "oracle.hpp"

using namespace mpkc;

namespace {

std::uint64_t brute_order(std::size_t n, std::uint64_t p) {
  const auto f = oracle::fib_base(n);
  const auto id = oracle::identity(n);
  auto cur = f;
  for (std::uint64_t m = 1;; ++m) {
    if (cur == id) return m;
    cur = oracle::mul(cur, f, p);
  }
}

}  // namespace

TEST(MatrixOrder, KnownValues) {
  EXPECT_EQ(matrix_order(2, 5).period, 20u);
  EXPECT_EQ(matrix_order(2, 2).period, 3u);
  EXPECT_EQ(matrix_order(3, 47).period, 46u);
  EXPECT_EQ(matrix_order(2, 47).period, 32u);
  EXPECT_EQ(matrix_order(3, 29).period, 140u);
}

TEST(MatrixOrder, AgreesWithBruteForce) {
  for (int n : {2, 3, 4})
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 29, 31})
      EXPECT_EQ(matrix_order(n, p).period, brute_order(static_cast<std::size_t>(n), p))
          << n << ' ' << p;
}

TEST(MatrixOrder, PeriodProperties) {
  for (int n : {2, 3})
    for (std::uint64_t p : {29, 47, 101}) {
      const auto period = static_cast<std::int64_t>(matrix_order(n, p).period);
      EXPECT_TRUE(fib_power_formula(n, period, p).matrix().is_identity());
      EXPECT_TRUE(fib_power_formula(n, 2 * period, p).matrix().is_identity());
      EXPECT_EQ(fib_power_formula(n, period + 3, p).matrix(), fib_power_formula(n, 3, p).matrix());
      for (std::int64_t m = 1; m < period; ++m)
        ASSERT_FALSE(fib_power_formula(n, m, p).matrix().is_identity()) << m;
    }
}

TEST(MatrixOrder, Errors) {
  EXPECT_THROW(matrix_order(3, 47, 10), ResourceLimit);
  EXPECT_THROW(matrix_order(1, 47), InvalidParameter);
  EXPECT_THROW(matrix_order(3, 45), InvalidParameter);
}

TEST(RecoverExponent, WorkedExampleSessionMatrix) {
  const auto m = ResidueMatrix::from_rows(PrimeModulus(47), {{44, 37, 24}, {24, 20, 13}, {13, 11, 7}});
  ASSERT_EQ(fib_power_formula(3, 7, 47).matrix(), m);
  const auto r = recover_exponent(3, m);
  ASSERT_TRUE(r.exponent);
  EXPECT_EQ(*r.exponent, 7u);
  EXPECT_EQ(r.period, 46u);
  EXPECT_EQ(r.exponents_tried, 46u);
  EXPECT_LE(r.full_comparisons, r.exponents_tried);
}

TEST(RecoverExponent, IdentityGivesPeriod) {
  const auto r = recover_exponent(3, ResidueMatrix::identity(PrimeModulus(47), 3));
  ASSERT_TRUE(r.exponent);
  EXPECT_EQ(*r.exponent, 46u);
}

TEST(RecoverExponent, NonPowerHasNoExponent) {
  const PrimeModulus p(47);
  auto target = ResidueMatrix::identity(p, 3);
  target.set(0, 0, 2);
  EXPECT_FALSE(recover_exponent(3, target).exponent);
  EXPECT_FALSE(recover_exponent_exhaustive(3, target).exponent);
}

TEST(RecoverExponent, PrunedMatchesExhaustive) {
  for (int n : {2, 3, 4})
    for (std::uint64_t p : {29, 47, 101}) {
      const auto period = static_cast<std::int64_t>(matrix_order(n, p).period);
      for (std::int64_t k : {std::int64_t{1}, std::int64_t{2}, std::int64_t{5}, period / 2,
                             period - 1, period}) {
        if (k < 1) continue;
        const auto target = fib_power_formula(n, k, p).matrix();
        const auto fast = recover_exponent(n, target);
        const auto slow = recover_exponent_exhaustive(n, target);
        ASSERT_TRUE(fast.exponent);
        EXPECT_EQ(fast.exponent, slow.exponent);
        EXPECT_EQ(*fast.exponent, static_cast<std::uint64_t>(k));
        EXPECT_EQ(fast.period, static_cast<std::uint64_t>(period));
        EXPECT_LE(fast.matrix_multiplications, slow.matrix_multiplications);
      }
    }
}

TEST(RecoverExponent, Errors) {
  const PrimeModulus p(47);
  EXPECT_THROW(recover_exponent(3, ResidueMatrix::identity(p, 2)), ShapeMismatch);
  EXPECT_THROW(recover_exponent(3, fib_power_formula(3, 5, p).matrix(), 10), ResourceLimit);
}

TEST(CostComparison, CountsMatchFormulas) {
  const std::uint64_t lengths[] = {1, 2, 3, 8, 64, 100, 512};
  const auto rows = cost_comparison(3, 47, lengths);
  ASSERT_EQ(rows.size(), std::size(lengths));
  for (const auto& row : rows) {
    EXPECT_EQ(row.naive_mults, 4 * row.length - 2);
    const auto log2l = static_cast<std::uint64_t>(std::floor(std::log2(row.length)));
    EXPECT_LE(row.fast_mults, 8 * (log2l + 1) + 1) << row.length;
  }
}

TEST(CostComparison, Csv) {
  const std::uint64_t lengths[] = {1, 8};
  EXPECT_EQ(cost_csv(cost_comparison(3, 47, lengths)).substr(0, 24), "l,naive_mults,fast_mults");
  const std::vector<CostRow> rows{{1, 2, 3}, {4, 5, 6}};
  EXPECT_EQ(cost_csv(rows), "l,naive_mults,fast_mults\n1,2,3\n4,5,6\n");
}

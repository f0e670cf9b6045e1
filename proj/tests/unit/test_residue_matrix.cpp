#include <gtest/gtest.h>

#include <random>

#include "mpkc/errors.hpp"
#include "mpkc/multinacci.hpp"
#include "mpkc/residue_matrix.hpp"
#include "oracle.hpp"

using namespace mpkc;

namespace {

const PrimeModulus p47(47);

ResidueMatrix random_matrix(std::mt19937_64& gen, const PrimeModulus& p, std::size_t n) {
  ResidueMatrix m(p, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, gen() % p.value());
  return m;
}

// Cofactor expansion, independent of the elimination in determinant().
std::int64_t cofactor_det(const oracle::Rows& a) {
  const std::size_t n = a.size();
  if (n == 1) return static_cast<std::int64_t>(a[0][0]);
  std::int64_t det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    oracle::Rows minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<std::uint64_t> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(a[i][j]);
      minor.push_back(row);
    }
    const std::int64_t term = static_cast<std::int64_t>(a[0][c]) * cofactor_det(minor);
    det += (c % 2 == 0) ? term : -term;
  }
  return det;
}

}  // namespace

TEST(ResidueMatrix, FromRowsValidates) {
  EXPECT_THROW(ResidueMatrix::from_rows(p47, {{1, 2}, {3}}), ShapeMismatch);
  EXPECT_THROW(ResidueMatrix::from_rows(p47, {{47}}), InvalidParameter);
  EXPECT_THROW(ResidueMatrix(p47, 0), InvalidParameter);
}

TEST(ResidueMatrix, IdentityIsNeutral) {
  std::mt19937_64 gen(1);
  const auto a = random_matrix(gen, p47, 4);
  const auto id = ResidueMatrix::identity(p47, 4);
  EXPECT_EQ(id * a, a);
  EXPECT_EQ(a * id, a);
}

TEST(ResidueMatrix, ShapeAndModulusMismatch) {
  const auto a = ResidueMatrix::identity(p47, 3);
  EXPECT_THROW(a * ResidueMatrix::identity(p47, 2), ShapeMismatch);
  EXPECT_THROW(a * ResidueMatrix::identity(PrimeModulus(29), 3), ShapeMismatch);
  EXPECT_THROW(a + ResidueMatrix::identity(PrimeModulus(29), 3), ShapeMismatch);
}

TEST(ResidueMatrix, ProductMatchesOracle) {
  std::mt19937_64 gen(2);
  const PrimeModulus p(18446744073709551557ULL);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_matrix(gen, p, 1 + trial % 5);
    const auto b = random_matrix(gen, p, 1 + trial % 5);
    EXPECT_EQ((a * b).rows(), oracle::mul(a.rows(), b.rows(), p.value()));
  }
}

TEST(ResidueMatrix, DeterminantMatchesCofactorExpansion) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_matrix(gen, p47, 1 + trial % 4);
    EXPECT_EQ(a.determinant(), p47.reduce(cofactor_det(a.rows())));
  }
}

TEST(MatPow, ZeroExponentIsIdentity) {
  std::mt19937_64 gen(4);
  EXPECT_TRUE(mat_pow(random_matrix(gen, p47, 3), 0).is_identity());
}

TEST(MatPow, TribonacciSeventhPower) {
  const auto expected =
      ResidueMatrix::from_rows(p47, {{44, 37, 24}, {24, 20, 13}, {13, 11, 7}});
  EXPECT_EQ(mat_pow(fib_base(3, p47), 7), expected);
}

TEST(MatPow, MinusOneIsInverse) {
  const auto f = fib_base(3, p47);
  EXPECT_TRUE((mat_pow(f, -1) * f).is_identity());
}

TEST(MatPow, MatchesRepeatedMultiplication) {
  std::mt19937_64 gen(5);
  for (std::uint64_t e = 0; e < 40; ++e) {
    const auto a = random_matrix(gen, p47, 3);
    EXPECT_EQ(mat_pow(a, static_cast<std::int64_t>(e)).rows(), oracle::power(a.rows(), e, 47));
  }
}

TEST(MatPow, NegativeExponentOfSingularThrows) {
  const auto z = ResidueMatrix(p47, 2);
  EXPECT_THROW(mat_pow(z, -2), SingularMatrix);
}

TEST(MatInv, PrintedDecryptionKey) {
  const auto e = ResidueMatrix::from_rows(p47, {{34, 19, 5}, {5, 29, 14}, {14, 38, 15}});
  const auto d = ResidueMatrix::from_rows(p47, {{43, 30, 36}, {36, 7, 41}, {41, 42, 13}});
  EXPECT_EQ(mat_inv(e), d);
}

TEST(MatInv, IdentityIsSelfInverse) {
  EXPECT_TRUE(mat_inv(ResidueMatrix::identity(p47, 5)).is_identity());
}

TEST(MatInv, RandomInvertibleProperty) {
  std::mt19937_64 gen(6);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_matrix(gen, p47, 1 + trial % 6);
    if (a.determinant() == 0) {
      EXPECT_THROW(mat_inv(a), SingularMatrix);
      continue;
    }
    const auto inv = mat_inv(a);
    EXPECT_TRUE((a * inv).is_identity());
    EXPECT_TRUE((inv * a).is_identity());
    ++checked;
  }
  EXPECT_GT(checked, 250);
}

TEST(MatInv, SingularReportsDeterminant) {
  const auto a = ResidueMatrix::from_rows(p47, {{1, 2}, {2, 4}});
  try {
    mat_inv(a);
    FAIL() << "expected SingularMatrix";
  } catch (const SingularMatrix& e) {
    EXPECT_EQ(e.determinant(), 0u);
  }
}

TEST(RowTimes, RowVectorConvention) {
  const auto e = ResidueMatrix::from_rows(p47, {{34, 19, 5}, {5, 29, 14}, {14, 38, 15}});
  // [7 4 24]·E = [36-6, 25-39, 15-34] mod 47 (B subtracted back out)
  EXPECT_EQ(row_times(RowVector{7, 4, 24}, e), (RowVector{30, 33, 28}));
  EXPECT_THROW(row_times(RowVector{1, 2}, e), ShapeMismatch);
}

TEST(MultiplicationTally, CountsProducts) {
  const auto f = fib_base(3, p47);
  const MultiplicationTally tally;
  auto x = f * f;
  x = x * f;
  EXPECT_EQ(tally.count(), 2u);
}

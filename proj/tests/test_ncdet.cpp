#include "blockdet/ncdet.hpp"
#include "blockdet/verify.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace blockdet;

namespace {

BlockMatrix random_blocks(std::size_t m, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return block_view(random_matrix(RingDescriptor::integers(), m * n, m * n, rng), m);
}

oracle::BlockGrid to_grid(const BlockMatrix& M) {
  oracle::BlockGrid g(M.count(), std::vector<oracle::Mat>(M.count()));
  for (std::size_t i = 0; i < M.count(); ++i)
    for (std::size_t j = 0; j < M.count(); ++j) {
      const Matrix& b = M.block(i, j);
      oracle::Mat x(b.rows(), std::vector<oracle::Int>(b.cols()));
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) x[r][c] = b(r, c).as_integer();
      g[i][j] = x;
    }
  return g;
}

}  // namespace

TEST(NcRowDet, MatchesBruteForceOracle) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t m = 1; m <= 3; ++m)
      for (std::uint64_t s = 0; s < 5; ++s) {
        const BlockMatrix M = random_blocks(m, n, 100 * n + 10 * m + s);
        const Matrix d = nc_row_det(M);
        const oracle::Mat expected = oracle::row_det(to_grid(M));
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t c = 0; c < m; ++c) EXPECT_EQ(d(r, c).as_integer(), expected[r][c]);
      }
}

TEST(NcRowDet, ScalarBlocksGiveTheCommutativeDeterminant) {
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::uint64_t s = 0; s < 20; ++s) {
      const BlockMatrix M = random_blocks(1, n, s);
      EXPECT_EQ(nc_row_det(M)(0, 0), det_commutative(block_flatten(M)));
    }
}

TEST(NcRowDet, SmallCases) {
  const auto Z = RingDescriptor::integers();
  const BlockMatrix M1 = matrix_m1();
  // Det [[A,B],[B,A]] = A*A - B*B
  const Matrix A = M1.block(0, 0), B = M1.block(0, 1);
  EXPECT_EQ(nc_row_det(M1), A * A - B * B);
  EXPECT_EQ(nc_row_det(BlockMatrix(Z, 2, 0)), Matrix::identity(Z, 2));
  EXPECT_THROW(nc_row_det(BlockMatrix(Z, 1, 9)), Error);
}

TEST(NcRowDet, ColumnPermutationMultipliesBySign) {
  // Every product keeps its row order, so this needs no commutation.
  const BlockMatrix M = random_blocks(2, 4, 77);
  const Matrix d = nc_row_det(M);
  for_each_permutation(4, [&](const Permutation& pi) {
    const Matrix permuted = nc_row_det(M.with_columns_permuted(pi));
    EXPECT_EQ(permuted, pi.sign() > 0 ? d : -d);
  });
}

TEST(NcRowDet, FirstRowLaplaceHoldsForArbitraryBlocks) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const BlockMatrix M = random_blocks(2, n, 900 + n);
    EXPECT_EQ(first_row_laplace(M), nc_row_det(M));
  }
}

TEST(NcCofactor, IndicesAndSigns) {
  const BlockMatrix M = random_blocks(2, 3, 12);
  EXPECT_EQ(nc_cofactor(M, 1, 2), -nc_minor_det(M, 1, 2));
  EXPECT_EQ(nc_cofactor(M, 2, 2), nc_minor_det(M, 2, 2));
  EXPECT_THROW(nc_minor_det(M, 0, 1), Error);
  EXPECT_THROW(nc_minor_det(M, 1, 4), Error);
  EXPECT_EQ(nc_minor_det(random_blocks(2, 1, 1), 1, 1), Matrix::identity(RingDescriptor::integers(), 2));
}

TEST(Lemma41, HoldsOnFamilyInputs) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::uint64_t s = 0; s < 10; ++s) {
      const BlockMatrix M = gen_satisfying(cond_f(n), std::max<std::size_t>(2, 2 * n), RingDescriptor::integers(), s)
                                .matrix;
      const auto report = lemma41_check(M);
      EXPECT_TRUE(report.satisfies_f);
      EXPECT_TRUE(report.holds) << "n=" << n << " seed=" << s;
      EXPECT_EQ(report.column.front(), report.row_det);
    }
}

TEST(Lemma41, FailsWithoutTheHypothesis) {
  const auto report = lemma41_check(random_blocks(2, 3, 5));
  EXPECT_FALSE(report.satisfies_f);
  EXPECT_FALSE(report.holds);
  EXPECT_FALSE(report.mismatched_rows.empty());
  EXPECT_NE(report.mismatched_rows.front(), 1u);
}

TEST(BourbakiTrace, AllChecksPassOnFamilyInputs) {
  for (std::size_t n = 2; n <= 3; ++n)
    for (std::uint64_t s = 0; s < 5; ++s) {
      const BlockMatrix M = gen_satisfying(cond_f(n), 2 * n, RingDescriptor::integers(), s).matrix;
      const auto t = bourbaki_trace(M);
      EXPECT_TRUE(t.checks.nu_shape);
      EXPECT_TRUE(t.checks.q_monic);
      EXPECT_TRUE(t.checks.determinant_equation);
      EXPECT_TRUE(t.checks.induction_step);
      EXPECT_TRUE(t.checks.cancelled);
      EXPECT_TRUE(t.checks.z0_recovery);
      EXPECT_EQ(t.det_Q.degree(), static_cast<int>(2 * n * (n - 1)));
    }
}

TEST(BourbakiTrace, ReportsFailureOnCounterexample) {
  const auto t = bourbaki_trace(matrix_m1());
  EXPECT_FALSE(t.checks.all());
  EXPECT_FALSE(t.checks.z0_recovery);
  EXPECT_EQ(t.det_M.to_string(), "0");
  EXPECT_EQ(t.det_row_det_M.to_string(), "-128");
}

TEST(BourbakiTrace, Guards) {
  EXPECT_THROW(bourbaki_trace(random_blocks(2, 1, 1)), Error);
  BlockMatrix P(RingDescriptor::prime_field(7), 1, 2);
  EXPECT_THROW(bourbaki_trace(P), Error);
}

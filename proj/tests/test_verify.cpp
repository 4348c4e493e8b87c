#include "blockdet/verify.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace blockdet;

namespace {

oracle::BlockGrid to_grid(const BlockMatrix& M) {
  oracle::BlockGrid g(M.count(), std::vector<oracle::Mat>(M.count()));
  for (std::size_t i = 0; i < M.count(); ++i)
    for (std::size_t j = 0; j < M.count(); ++j) {
      const Matrix& b = M.block(i, j);
      g[i][j].assign(b.rows(), std::vector<oracle::Int>(b.cols()));
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) g[i][j][r][c] = b(r, c).as_integer();
    }
  return g;
}

// Both sides of the identity recomputed from scratch.
std::pair<oracle::Int, oracle::Int> oracle_pair(const BlockMatrix& M) {
  const auto g = to_grid(M);
  return {oracle::det_laplace(oracle::row_det(g)), oracle::det_bareiss(oracle::flatten(g))};
}

}  // namespace

TEST(Counterexamples, PublishedValues) {
  const auto c1 = check_identity(matrix_m1());
  EXPECT_EQ(c1.lhs.to_string(), "-128");
  EXPECT_EQ(c1.rhs.to_string(), "0");
  EXPECT_FALSE(c1.equal);
  const auto c2 = check_identity(matrix_m2());
  EXPECT_EQ(c2.lhs.to_string(), "128");
  EXPECT_EQ(c2.rhs.to_string(), "0");
  const auto c3 = check_identity(matrix_m3());
  EXPECT_EQ(c3.lhs.to_string(), "1152");
  EXPECT_EQ(c3.rhs.to_string(), "1872");
}

TEST(Counterexamples, OracleRecomputation) {
  for (const char* h : {"H1", "H2", "H3", "H4"}) {
    const Falsifier f = counterexample_h(h);
    const auto c = check_identity(f.matrix);
    const auto [lhs, rhs] = oracle_pair(f.matrix);
    EXPECT_EQ(c.lhs.as_integer(), lhs) << h;
    EXPECT_EQ(c.rhs.as_integer(), rhs) << h;
    EXPECT_TRUE(matrix_satisfies(f.matrix, cond_named(h))) << h;
    EXPECT_FALSE(c.equal) << h;
  }
  // Swapping block columns negates both sides.
  const auto swapped = check_identity(counterexample_h("H3").matrix);
  EXPECT_EQ(swapped.lhs.to_string(), "-1152");
  EXPECT_EQ(swapped.rhs.to_string(), "-1872");
  EXPECT_THROW(counterexample_h("H5"), Error);
}

TEST(Generators, SamplesSatisfyTheirCondition) {
  const auto F = RingDescriptor::prime_field(10007);
  std::vector<Condition> conditions{cond_f(3), cond_kappa(3), cond_f_side(2, 3), cond_f_down(3, 3),
                                    cond_t_col(2, 3), cond_empty(3), cond_complete(3)};
  for (const char* name : {"G1", "G2", "G3", "G4", "G5", "H1", "H2", "H3", "H4"}) conditions.push_back(cond_named(name));
  for (const auto& g : conditions) {
    const std::size_t m = std::max<std::size_t>(2 * g.size(), plan_slots(g).block_size());
    for (std::uint64_t s = 0; s < 100; ++s) {
      const auto sample = gen_satisfying(g, m, F, s);
      ASSERT_TRUE(matrix_satisfies(sample.matrix, g));
    }
  }
}

TEST(Generators, FamilyGeneratorIsNonVacuous) {
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto sample = gen_satisfying(cond_f(n), 2 * n, RingDescriptor::integers(), 9);
    EXPECT_EQ(sample.generator, GeneratorKind::f_column_slots);
    EXPECT_TRUE(has_noncommuting_same_column_pair(sample.matrix));
    // Every non-edge outside row 1 is violated.
    const Condition graph = commutativity_graph(sample.matrix);
    EXPECT_EQ(graph.edge_count() >= cond_f(n).edge_count(), true);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 1; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) EXPECT_FALSE(graph.has_edge(Vertex{a, j}, Vertex{b, j}));
  }
}

TEST(Generators, DeterministicInSeed) {
  const auto F = RingDescriptor::prime_field(10007);
  EXPECT_EQ(gen_satisfying(cond_named("G5"), 4, F, 3).matrix, gen_satisfying(cond_named("G5"), 4, F, 3).matrix);
  EXPECT_NE(gen_satisfying(cond_named("G5"), 4, F, 3).matrix, gen_satisfying(cond_named("G5"), 4, F, 4).matrix);
}

TEST(Generators, FallbackWhenBlocksAreSmall) {
  const auto P = RingDescriptor::polynomial("z");
  const auto sample = gen_satisfying(cond_f(3), 2, P, 1);
  EXPECT_EQ(sample.generator, GeneratorKind::fallback);
  EXPECT_TRUE(matrix_satisfies(sample.matrix, cond_f(3)));
  EXPECT_THROW(gen_satisfying(cond_f(2), 1, RingDescriptor::integers(), 1), Error);
}

TEST(Campaigns, FamilyConditionsHaveNoFailures) {
  const auto F = RingDescriptor::prime_field(10007);
  const auto report = run_campaign(cond_f(2), 4, F, 50, 42, "f");
  EXPECT_EQ(report.failures, 0u);
  EXPECT_FALSE(report.first_failure);
  EXPECT_EQ(report.summary(), "condition=f trials=50 failures=0 seed=42");
  EXPECT_EQ(run_campaign(cond_f_down(2, 2), 4, F, 50, 1, "down:2").failures, 0u);
  EXPECT_EQ(run_campaign(cond_f(3), 6, RingDescriptor::integers(), 30, 1, "f").failures, 0u);
}

TEST(Campaigns, NonSufficientConditionFails) {
  const auto report = run_campaign(cond_named("H4"), 4, RingDescriptor::prime_field(10007), 50, 1, "h4");
  EXPECT_GT(report.failures, 0u);
  ASSERT_TRUE(report.first_failure);
  EXPECT_TRUE(matrix_satisfies(report.first_failure->matrix, cond_named("H4")));
  EXPECT_FALSE(check_identity(report.first_failure->matrix).equal);
  EXPECT_EQ(report.failure_log.size(), report.failures);
}

TEST(Campaigns, ReproducibleReports) {
  const auto F = RingDescriptor::prime_field(10007);
  EXPECT_EQ(run_campaign(cond_empty(2), 4, F, 10, 5).to_text(), run_campaign(cond_empty(2), 4, F, 10, 5).to_text());
}

TEST(Silvester, VariantsHoldUnderHypothesis) {
  for (auto v : {SilvesterVariant::a, SilvesterVariant::b, SilvesterVariant::c}) {
    EXPECT_EQ(silvester_check(v, 3, RingDescriptor::prime_field(10007), 50, 1).failures, 0u);
    EXPECT_EQ(silvester_check(v, 2, RingDescriptor::integers(), 50, 1).failures, 0u);
    EXPECT_GT(silvester_check(v, 3, RingDescriptor::prime_field(10007), 50, 1, false).failures, 0u);
  }
}

TEST(Classification, AllGraphs) {
  const auto cls = classify_size2();
  ASSERT_EQ(cls.records.size(), 64u);
  std::size_t scc = 0;
  for (const auto& rec : cls.records) {
    bool contains = false;
    for (const char* g : {"G1", "G2", "G3", "G4", "G5"}) contains = contains || is_subgraph(cond_named(g), rec.graph);
    EXPECT_EQ(rec.is_scc, contains);
    if (rec.is_scc) {
      ++scc;
    } else {
      EXPECT_TRUE(matrix_satisfies(builtin_matrix(rec.falsifier), rec.graph));
      EXPECT_NE(rec.lhs, rec.rhs);
    }
  }
  EXPECT_EQ(scc, 48u);
  EXPECT_EQ(cls.records[0b100000].to_line(), "{CD} SCC witness=G1");
  const auto& h4 = cls.records[0b010010];
  EXPECT_EQ(size2_label(h4.graph), "{AC,BD}");
  EXPECT_EQ(h4.to_line().rfind("{AC,BD} NOT-SCC falsifier=M2 lhs=128 rhs=0", 0), 0u);
  EXPECT_EQ(cls.records[0].to_line().rfind("{} NOT-SCC ", 0), 0u);
}

TEST(Optimality, SmallCases) {
  const auto s = optimality_counterexample(OptimalityCase::same_row, 2);
  const auto pa = RingDescriptor::polynomial("a");
  Matrix expected(pa, 2, 2);
  expected.set(0, 1, RingValue::one(pa));
  expected.set(1, 0, -RingValue::variable(pa));
  EXPECT_EQ(s.row_det, expected);
  EXPECT_EQ(s.det_of_row_det, RingValue::variable(pa));
  EXPECT_EQ(s.det_flat.degree(), -1);  // the zero polynomial

  const auto d = optimality_counterexample(OptimalityCase::diff_row, 3);
  expected.set(0, 1, -RingValue::one(pa));
  EXPECT_EQ(d.row_det, expected);
  EXPECT_EQ(d.det_of_row_det, -RingValue::variable(pa));
  EXPECT_LE(d.det_flat.degree(), 0);

  for (std::size_t n = 2; n <= 6; ++n) {
    const auto c = optimality_counterexample(OptimalityCase::same_row, n);
    EXPECT_GE(c.det_of_row_det.degree(), 1);
    EXPECT_LE(c.det_flat.degree(), 0);
    EXPECT_TRUE(matrix_satisfies(c.matrix, kappa_without(n, at(2, 1), at(2, 2))));
  }
  for (std::size_t n = 3; n <= 6; ++n) {
    const auto c = optimality_counterexample(OptimalityCase::diff_row, n);
    EXPECT_GE(c.det_of_row_det.degree(), 1);
    EXPECT_LE(c.det_flat.degree(), 0);
    EXPECT_TRUE(matrix_satisfies(c.matrix, kappa_without(n, at(2, 1), at(3, 2))));
  }
  EXPECT_THROW(optimality_counterexample(OptimalityCase::diff_row, 2), Error);
}

TEST(Optimality, ScanSmallSizes) {
  const auto s2 = optimality_scan(2, 20, 1);
  ASSERT_EQ(s2.edges.size(), 1u);
  EXPECT_EQ(kappa_without(2, s2.edges[0].edge.first, s2.edges[0].edge.second).edge_count(), 0u);
  EXPECT_TRUE(s2.ok());
  const auto s3 = optimality_scan(3, 20, 1);
  EXPECT_EQ(s3.edges.size(), 12u);
  EXPECT_TRUE(s3.ok());
  EXPECT_THROW(optimality_scan(5), Error);
}

TEST(Seeds, SplitMixIsStable) {
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
  EXPECT_NE(trial_seed(1, 0), trial_seed(1, 1));
}

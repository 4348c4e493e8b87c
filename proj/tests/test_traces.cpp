#include "blockdet/traces.hpp"
#include "blockdet/verify.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace blockdet;

namespace {

TraceWord random_word(std::size_t n, std::size_t length, std::mt19937_64& rng) {
  TraceWord w;
  for (std::size_t i = 0; i < length; ++i) w.push_back(Vertex{rng() % n, rng() % n});
  return w;
}

CommRel random_relation(std::size_t n, std::mt19937_64& rng) {
  Condition g(n);
  const Condition full = cond_complete(n);
  for (const auto& [u, v] : full.edges())
    if (rng() % 2) g.add_edge(u, v);
  return CommRel::from_condition(g);
}

}  // namespace

TEST(Traces, NormalFormExamples) {
  const std::size_t n = 2;
  const CommRel rel = CommRel::from_condition(cond_f(n));  // (2,1) and (2,2) commute
  EXPECT_EQ(word_to_string(word_normal_form(parse_word("(2,2)(2,1)"), rel)), "(2,1)(2,2)");
  EXPECT_EQ(word_to_string(word_normal_form(parse_word("(2,2)(1,1)(2,1)"), rel)), "(2,2)(1,1)(2,1)");
  EXPECT_TRUE(trace_equal(parse_word("(2,2)(2,1)(1,1)"), parse_word("(2,1)(2,2)(1,1)"), rel));
  EXPECT_FALSE(trace_equal(parse_word("(1,1)(2,1)"), parse_word("(2,1)(1,1)"), rel));
  EXPECT_EQ(word_to_string({}), "1");
  EXPECT_THROW(word_normal_form(parse_word("(3,1)"), rel), Error);
  EXPECT_THROW(parse_word("(1,1"), Error);
}

TEST(Traces, NormalFormAgreesWithProjectionAndExhaustiveSearch) {
  std::mt19937_64 rng(2024);
  std::size_t cases = 0;
  for (int t = 0; t < 1200; ++t) {
    const std::size_t n = 2 + rng() % 2;
    const CommRel rel = random_relation(n, rng);
    const std::size_t length = rng() % 7;
    const TraceWord u = random_word(n, length, rng);
    // Half the time v is a shuffle of u (same letters), otherwise random.
    TraceWord v = u;
    if (rng() % 2) {
      std::shuffle(v.begin(), v.end(), rng);
    } else {
      v = random_word(n, length, rng);
    }
    const bool by_nf = trace_equal(u, v, rel);
    EXPECT_EQ(by_nf, trace_equal_by_projection(u, v, rel));
    auto letter = [n](const Vertex& g) { return static_cast<int>(g.row * n + g.col); };
    std::vector<int> iu, iv;
    for (const auto& g : u) iu.push_back(letter(g));
    for (const auto& g : v) iv.push_back(letter(g));
    const auto cls = oracle::trace_class(iu, [&](int x, int y) {
      return rel.commute(Vertex{x / n, x % n}, Vertex{y / n, y % n});
    });
    EXPECT_EQ(by_nf, cls.count(iv) == 1);
    // The normal form is the lexicographically least member of the class.
    std::vector<int> nf;
    for (const auto& g : word_normal_form(u, rel)) nf.push_back(letter(g));
    EXPECT_EQ(nf, *cls.begin());
    ++cases;
  }
  EXPECT_GE(cases, 1000u);
}

TEST(TracePoly, ArithmeticAndPrinting) {
  const CommRel rel = CommRel::empty(2);
  const auto x = TracePoly::monomial(rel, parse_word("(1,1)"));
  const auto y = TracePoly::monomial(rel, parse_word("(2,2)"));
  EXPECT_NE(x * y, y * x);
  EXPECT_TRUE((x - x).is_zero());
  EXPECT_EQ((x - x).to_string(), "0");
  const CommRel full = CommRel::full(2);
  EXPECT_EQ(TracePoly::monomial(full, parse_word("(1,1)")) * TracePoly::monomial(full, parse_word("(2,2)")),
            TracePoly::monomial(full, parse_word("(2,2)")) * TracePoly::monomial(full, parse_word("(1,1)")));
  EXPECT_EQ(symbolic_row_det(2, rel).to_string(), "+1*(1,1)(2,2) -1*(1,2)(2,1)");
}

TEST(TracePoly, EvaluationOfRowDetMatchesNumeric) {
  const BlockMatrix M = matrix_m3();
  EXPECT_EQ(evaluate(symbolic_row_det(2, CommRel::empty(2)), M), nc_row_det(M));
}

TEST(Symbolic, ColumnSwaps) {
  for (std::size_t n = 2; n <= 5; ++n)
    for (std::size_t k = 1; k < n; ++k) EXPECT_TRUE(check_colswap_identity(n, k)) << n << " " << k;
  EXPECT_THROW(check_colswap_identity(3, 3), Error);
}

TEST(Symbolic, TransposeUnderTcol) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t c = 1; c <= n; ++c) EXPECT_TRUE(check_transpose_identity(n, c)) << n << " " << c;
}

TEST(Symbolic, TransposeNeedsCommutation) {
  const CommRel none = CommRel::empty(2);
  EXPECT_NE(symbolic_transpose_row_det(2, none), symbolic_row_det(2, none));
}

TEST(Symbolic, RowSwaps) {
  // Missing pair inside one row, or no missing pair: the swap negates.
  EXPECT_TRUE(check_rowswap_identity(3, 2, 3, std::nullopt));
  EXPECT_TRUE(check_rowswap_identity(3, 2, 3, make_edge(at(2, 1), at(2, 2))));
  EXPECT_TRUE(check_rowswap_identity(3, 2, 3, make_edge(at(3, 1), at(3, 3))));
  // Swap that keeps the rows of the missing pair in order.
  EXPECT_TRUE(check_rowswap_identity(4, 3, 4, make_edge(at(2, 1), at(3, 2))));
  EXPECT_TRUE(check_rowswap_identity(4, 2, 3, make_edge(at(2, 1), at(4, 2))));
  // Swapping the two rows of a missing cross-row pair reverses it.
  EXPECT_FALSE(check_rowswap_identity(3, 2, 3, make_edge(at(2, 1), at(3, 2))));
  EXPECT_THROW(check_rowswap_identity(3, 1, 2, std::nullopt), Error);
  EXPECT_THROW(check_rowswap_identity(3, 2, 3, make_edge(at(1, 1), at(2, 2))), Error);
}

TEST(Symbolic, RowPermutations) {
  EXPECT_TRUE(check_row_permutation_identity(4, Permutation({0, 2, 3, 1}), make_edge(at(2, 1), at(2, 3))));
  EXPECT_THROW(check_row_permutation_identity(3, Permutation({1, 0, 2}), std::nullopt), Error);
}

TEST(Symbolic, CofactorColumnUnderF) {
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_TRUE(check_lemma41_identity(n).empty()) << n;
}

#include "blockdet/permutation.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace blockdet;

namespace {

int inversion_sign(const Permutation& p) {
  int inv = 0;
  for (std::size_t a = 0; a < p.degree(); ++a)
    for (std::size_t b = a + 1; b < p.degree(); ++b)
      if (p(a) > p(b)) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace

TEST(Permutation, SignMatchesInversionCount) {
  for (std::size_t n = 0; n <= 6; ++n) {
    std::size_t count = 0;
    int total = 0;
    for_each_permutation(n, [&](const Permutation& p) {
      EXPECT_EQ(p.sign(), inversion_sign(p));
      ++count;
      total += p.sign();
    });
    std::size_t factorial = 1;
    for (std::size_t k = 2; k <= n; ++k) factorial *= k;
    EXPECT_EQ(count, factorial);
    EXPECT_EQ(total, n >= 2 ? 0 : 1);
  }
}

TEST(Permutation, GroupLaws) {
  for_each_permutation(4, [](const Permutation& p) {
    EXPECT_EQ(p.compose(p.inverse()), Permutation::identity(4));
    for_each_permutation(4, [&](const Permutation& q) { EXPECT_EQ(p.compose(q).sign(), p.sign() * q.sign()); });
  });
}

TEST(Permutation, ConstructionAndPrinting) {
  EXPECT_THROW(Permutation({0, 0}), Error);
  EXPECT_THROW(Permutation({0, 2}), Error);
  const auto t = Permutation::transposition(3, 0, 1);
  EXPECT_EQ(t.to_string(), "[2,1,3]");
  EXPECT_EQ(t.sign(), -1);
  EXPECT_EQ(Permutation::from_one_based({2, 1, 3}), t);
  EXPECT_EQ(t.extended(4).to_string(), "[2,1,3,4]");
  EXPECT_THROW(for_each_permutation(9, [](const Permutation&) {}), Error);
}

#pragma once

// Reference computations written independently of the library algorithms:
// plain nested vectors, cofactor expansion, Bareiss elimination, Gaussian
// elimination mod p, brute-force row-determinants, and exhaustive search of
// trace-equivalence classes.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Int = boost::multiprecision::cpp_int;
using Mat = std::vector<std::vector<Int>>;

inline Mat identity(std::size_t k) {
  Mat out(k, std::vector<Int>(k, 0));
  for (std::size_t i = 0; i < k; ++i) out[i][i] = 1;
  return out;
}

inline Mat mul(const Mat& a, const Mat& b) {
  const std::size_t k = a.size();
  Mat out(k, std::vector<Int>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t j = 0; j < k; ++j) out[i][j] += a[i][t] * b[t][j];
  return out;
}

inline void add_to(Mat& a, const Mat& b, int sign) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) a[i][j] += sign * b[i][j];
}

/// Cofactor expansion along the first row.
inline Int det_laplace(const Mat& a) {
  const std::size_t k = a.size();
  if (k == 0) return 1;
  if (k == 1) return a[0][0];
  Int total = 0;
  for (std::size_t c = 0; c < k; ++c) {
    if (a[0][c] == 0) continue;
    Mat minor;
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<Int> row;
      for (std::size_t j = 0; j < k; ++j)
        if (j != c) row.push_back(a[r][j]);
      minor.push_back(std::move(row));
    }
    const Int term = a[0][c] * det_laplace(minor);
    total += (c % 2 == 0) ? term : Int(-term);
  }
  return total;
}

/// Fraction-free elimination over the integers.
inline Int det_bareiss(Mat a) {
  const std::size_t k = a.size();
  if (k == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t p = 0; p + 1 < k; ++p) {
    if (a[p][p] == 0) {
      std::size_t swap = p + 1;
      while (swap < k && a[swap][p] == 0) ++swap;
      if (swap == k) return 0;
      std::swap(a[p], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = p + 1; i < k; ++i) {
      for (std::size_t j = p + 1; j < k; ++j) a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev;
    }
    prev = a[p][p];
  }
  return sign * a[k - 1][k - 1];
}

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = static_cast<std::uint64_t>(static_cast<unsigned __int128>(r) * b % p);
    b = static_cast<std::uint64_t>(static_cast<unsigned __int128>(b) * b % p);
    e >>= 1;
  }
  return r;
}

/// Gaussian elimination over Z/p with Fermat inverses. Entries in [0, p).
inline std::uint64_t det_mod_p(std::vector<std::vector<std::uint64_t>> a, std::uint64_t p) {
  const std::size_t k = a.size();
  std::uint64_t det = 1;
  auto mulm = [p](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * y % p);
  };
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    while (piv < k && a[piv][c] == 0) ++piv;
    if (piv == k) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = (p - det) % p;
    }
    det = mulm(det, a[c][c]);
    const std::uint64_t inv = pow_mod(a[c][c], p - 2, p);
    for (std::size_t r = c + 1; r < k; ++r) {
      const std::uint64_t f = mulm(a[r][c], inv);
      for (std::size_t j = c; j < k; ++j) a[r][j] = (a[r][j] + p - mulm(f, a[c][j])) % p;
    }
  }
  return det;
}

/// Blocks as a row-major grid of k x k integer matrices.
using BlockGrid = std::vector<std::vector<Mat>>;

/// Sum over all permutations (Heap's algorithm) of sign * product in row order,
/// the sign computed by counting inversions.
inline Mat row_det(const BlockGrid& g) {
  const std::size_t n = g.size();
  const std::size_t k = g[0][0].size();
  Mat total(k, std::vector<Int>(k, 0));
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  auto visit = [&] {
    int inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) ++inversions;
    Mat prod = identity(k);
    for (std::size_t r = 0; r < n; ++r) prod = mul(prod, g[r][perm[r]]);
    add_to(total, prod, inversions % 2 == 0 ? 1 : -1);
  };
  std::vector<std::size_t> c(n, 0);
  visit();
  std::size_t i = 0;
  while (i < n) {
    if (c[i] < i) {
      std::swap(perm[i % 2 == 0 ? 0 : c[i]], perm[i]);
      visit();
      ++c[i];
      i = 0;
    } else {
      c[i] = 0;
      ++i;
    }
  }
  return total;
}

inline Mat flatten(const BlockGrid& g) {
  const std::size_t n = g.size();
  const std::size_t k = g[0][0].size();
  Mat out(n * k, std::vector<Int>(n * k, 0));
  for (std::size_t bi = 0; bi < n; ++bi)
    for (std::size_t bj = 0; bj < n; ++bj)
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) out[bi * k + r][bj * k + c] = g[bi][bj][r][c];
  return out;
}

/// Letters are small integers; commute(x, y) says whether x and y may be swapped.
template <class Commute>
std::set<std::vector<int>> trace_class(const std::vector<int>& w, Commute commute) {
  std::set<std::vector<int>> seen{w};
  std::deque<std::vector<int>> queue{w};
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      if (cur[i] == cur[i + 1] || !commute(cur[i], cur[i + 1])) continue;
      auto next = cur;
      std::swap(next[i], next[i + 1]);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return seen;
}

}  // namespace oracle

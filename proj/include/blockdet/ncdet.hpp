#pragma once

// Row-determinants over S = M_m(R), noncommutative minors and cofactors, the
// first-column cofactor identity, and a checkable trace of the determinant
// argument that adjoins z to the diagonal.

#include "blockdet/conditions.hpp"
#include "blockdet/matrix.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace blockdet {

namespace detail {

inline void row_det_recurse(const BlockMatrix& M, std::size_t row, std::vector<bool>& used, const Matrix& prefix,
                            bool negative, Matrix& total) {
  const std::size_t n = M.count();
  if (row == n) {
    if (negative) {
      total -= prefix;
    } else {
      total += prefix;
    }
    return;
  }
  std::size_t larger_used = 0;  // used columns greater than the candidate, for the inversion parity
  for (std::size_t c = n; c-- > 0;) {
    if (used[c]) {
      ++larger_used;
      continue;
    }
    const Matrix& b = M.block(row, c);
    if (b.is_zero()) continue;
    used[c] = true;
    row_det_recurse(M, row + 1, used, prefix * b, negative != (larger_used % 2 == 1), total);
    used[c] = false;
  }
}

inline void require_block_index(const BlockMatrix& M, std::size_t i, std::size_t j) {
  if (i == 0 || j == 0 || i > M.count() || j > M.count()) {
    throw Error("block index (" + std::to_string(i) + "," + std::to_string(j) + ") outside 1.." +
                std::to_string(M.count()));
  }
}

inline BlockMatrix block_mul(const BlockMatrix& X, const BlockMatrix& Y) {
  const std::size_t n = X.count();
  BlockMatrix out(X.descriptor(), X.block_size(), n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Matrix sum(X.descriptor(), X.block_size(), X.block_size());
      for (std::size_t k = 0; k < n; ++k) sum += X.block(i, k) * Y.block(k, j);
      out.set_block(i, j, std::move(sum));
    }
  }
  return out;
}

}  // namespace detail

/// Sum over pi in S_n of sgn(pi) M_{1,pi(1)} M_{2,pi(2)} ... M_{n,pi(n)}, factors
/// multiplied in row order. n = 0 gives the identity block.
inline Matrix nc_row_det(const BlockMatrix& M) {
  if (M.count() > kMaxEnumerationDegree) {
    throw Error("row-determinant of a " + std::to_string(M.count()) + "x" + std::to_string(M.count()) +
                " block matrix exceeds the enumeration cap");
  }
  const Matrix identity = Matrix::identity(M.descriptor(), M.block_size());
  Matrix total(M.descriptor(), M.block_size(), M.block_size());
  std::vector<bool> used(M.count(), false);
  detail::row_det_recurse(M, 0, used, identity, false, total);
  return total;
}

/// Row-determinant with block row i and block column j removed (1-based).
/// For n = 1 this is the empty row-determinant, the identity block.
inline Matrix nc_minor_det(const BlockMatrix& M, std::size_t i, std::size_t j) {
  detail::require_block_index(M, i, j);
  return nc_row_det(M.without(i - 1, j - 1));
}

/// (-1)^(i+j) times nc_minor_det(M, i, j).
inline Matrix nc_cofactor(const BlockMatrix& M, std::size_t i, std::size_t j) {
  Matrix minor = nc_minor_det(M, i, j);
  return (i + j) % 2 == 0 ? minor : -minor;
}

/// Sum over j of M_{1j} Cof^{1j}(M). Equals nc_row_det(M) for every M.
inline Matrix first_row_laplace(const BlockMatrix& M) {
  Matrix total(M.descriptor(), M.block_size(), M.block_size());
  for (std::size_t j = 1; j <= M.count(); ++j) total += M.block(0, j - 1) * nc_cofactor(M, 1, j);
  return total;
}

struct Lemma41Report {
  bool holds = false;
  bool satisfies_f = false;
  Matrix row_det;
  /// Entry i is sum_j M_{ij} Cof^{1j}(M).
  std::vector<Matrix> column;
  /// 1-based block rows whose entry differs from the expected value.
  std::vector<std::size_t> mismatched_rows;
};

/// Checks M (Cof^{11}, ..., Cof^{1n})^t == (Det M, 0, ..., 0)^t blockwise.
/// Guaranteed when M satisfies F_n; other inputs may fail, and are reported.
inline Lemma41Report lemma41_check(const BlockMatrix& M) {
  Lemma41Report report;
  const std::size_t n = M.count();
  report.satisfies_f = matrix_satisfies(M, cond_f(n));
  report.row_det = nc_row_det(M);

  std::vector<Matrix> cofactors;
  for (std::size_t j = 1; j <= n; ++j) cofactors.push_back(nc_cofactor(M, 1, j));

  const Matrix zero(M.descriptor(), M.block_size(), M.block_size());
  for (std::size_t i = 0; i < n; ++i) {
    Matrix entry = zero;
    for (std::size_t j = 0; j < n; ++j) entry += M.block(i, j) * cofactors[j];
    const Matrix& expected = i == 0 ? report.row_det : zero;
    if (!(entry == expected)) report.mismatched_rows.push_back(i + 1);
    report.column.push_back(std::move(entry));
  }
  report.holds = report.mismatched_rows.empty();
  return report;
}

/// Intermediate objects of the determinant argument over R[z] and their checks.
struct BourbakiTrace {
  /// M with z added to every diagonal entry, over Z[z].
  BlockMatrix N;
  /// Identity with first block column replaced by (Cof^{11} N, ..., Cof^{1n} N)^t.
  BlockMatrix U;
  BlockMatrix NU;
  /// N without its first block row and column.
  BlockMatrix Q;
  /// Row-determinant of N, an m x m matrix over Z[z].
  Matrix row_det_N;

  RingValue det_N;         // det over R[z] of N
  RingValue det_U;         // det over R[z] of U
  RingValue det_row_det_N; // det over R[z] of Det N
  RingValue det_Q;         // det over R[z] of Q
  RingValue det_row_det_Q; // det over R[z] of Det Q
  RingValue det_M;         // det over R of M
  RingValue det_row_det_M; // det over R of Det M

  struct Checks {
    /// First block column of NU is (Det N, 0, ..., 0), other columns match N.
    bool nu_shape = false;
    /// det Q is monic of degree m(n-1) in z.
    bool q_monic = false;
    /// det N * det U == det(Det N) * det Q.
    bool determinant_equation = false;
    /// det Q == det(Det Q) == det U.
    bool induction_step = false;
    /// det N == det(Det N) over Z[z].
    bool cancelled = false;
    /// Evaluating at z = 0 recovers det M and det(Det M), and they agree.
    bool z0_recovery = false;

    bool all() const {
      return nu_shape && q_monic && determinant_equation && induction_step && cancelled && z0_recovery;
    }
  } checks;
};

/// Builds N, U, NU and Q for an integer block matrix with n >= 2 and checks
/// every step numerically. Failures are recorded, never thrown; they are
/// expected when M satisfies neither F_n nor full commutativity.
inline BourbakiTrace bourbaki_trace(const BlockMatrix& M) {
  if (M.descriptor().kind() != RingKind::integers) {
    throw Error("bourbaki_trace needs a block matrix over the integers (got " + M.descriptor().to_string() + ")");
  }
  const std::size_t n = M.count();
  const std::size_t m = M.block_size();
  if (n < 2) throw Error("bourbaki_trace needs at least 2 block rows");

  const RingDescriptor pz = RingDescriptor::polynomial("z");
  const RingValue z = RingValue::variable(pz);
  const Matrix identity = Matrix::identity(pz, m);
  const Matrix zero(pz, m, m);

  BourbakiTrace t;
  t.N = BlockMatrix(pz, m, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Matrix& b = M.block(i, j);
      Matrix lifted(pz, m, m);
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) lifted.set(r, c, RingValue::from_integer(pz, b(r, c).as_integer()));
      }
      if (i == j) lifted += identity.scaled(z);
      t.N.set_block(i, j, std::move(lifted));
    }
  }

  t.U = BlockMatrix(pz, m, n);
  for (std::size_t j = 1; j <= n; ++j) t.U.set_block(j - 1, 0, nc_cofactor(t.N, 1, j));
  for (std::size_t i = 1; i < n; ++i) t.U.set_block(i, i, identity);

  t.NU = detail::block_mul(t.N, t.U);
  t.Q = t.N.without(0, 0);
  t.row_det_N = nc_row_det(t.N);

  bool shape = t.NU.block(0, 0) == t.row_det_N;
  for (std::size_t i = 1; i < n; ++i) shape = shape && t.NU.block(i, 0) == zero;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 1; j < n; ++j) shape = shape && t.NU.block(i, j) == t.N.block(i, j);
  }
  t.checks.nu_shape = shape;

  t.det_N = det_commutative(block_flatten(t.N));
  t.det_U = det_commutative(block_flatten(t.U));
  t.det_row_det_N = det_commutative(t.row_det_N);
  t.det_Q = det_commutative(block_flatten(t.Q));
  t.det_row_det_Q = det_commutative(nc_row_det(t.Q));
  t.det_M = det_commutative(block_flatten(M));
  t.det_row_det_M = det_commutative(nc_row_det(M));

  t.checks.q_monic = poly_is_monic(t.det_Q) && t.det_Q.degree() == static_cast<int>(m * (n - 1));
  t.checks.determinant_equation = t.det_N * t.det_U == t.det_row_det_N * t.det_Q;
  t.checks.induction_step = t.det_Q == t.det_row_det_Q && t.det_row_det_Q == t.det_U;
  t.checks.cancelled = t.det_N == t.det_row_det_N;
  t.checks.z0_recovery = poly_eval_at_zero(t.det_N) == t.det_M &&
                         poly_eval_at_zero(t.det_row_det_N) == t.det_row_det_M && t.det_M == t.det_row_det_M;
  return t;
}

}  // namespace blockdet

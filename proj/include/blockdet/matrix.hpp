#pragma once

// Dense matrices over a single ring, division-free determinants, cofactors,
// and the identification of M_n(M_m(R)) with M_{mn}(R).

#include "blockdet/permutation.hpp"
#include "blockdet/ring.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace blockdet {

class Matrix {
 public:
  Matrix() = default;

  /// rows x cols zero matrix.
  Matrix(RingDescriptor descriptor, std::size_t rows, std::size_t cols)
      : descriptor_(std::move(descriptor)), rows_(rows), cols_(cols),
        entries_(rows * cols, RingValue::zero(descriptor_)) {}

  static Matrix identity(const RingDescriptor& d, std::size_t k) {
    Matrix out(d, k, k);
    for (std::size_t i = 0; i < k; ++i) out.entries_[i * k + i] = RingValue::one(d);
    return out;
  }

  /// Row-major integer literals mapped into the ring.
  static Matrix from_integers(const RingDescriptor& d, std::size_t rows, std::size_t cols,
                              std::initializer_list<long long> values) {
    if (values.size() != rows * cols) throw Error("entry count does not match matrix shape");
    Matrix out(d, rows, cols);
    std::size_t i = 0;
    for (long long v : values) out.entries_[i++] = RingValue::from_integer(d, v);
    return out;
  }

  static Matrix from_values(const RingDescriptor& d, std::size_t rows, std::size_t cols,
                            std::vector<RingValue> values) {
    if (values.size() != rows * cols) throw Error("entry count does not match matrix shape");
    for (const auto& v : values) {
      if (!(v.descriptor() == d)) throw Error("matrix entry has a foreign ring descriptor");
    }
    Matrix out;
    out.descriptor_ = d;
    out.rows_ = rows;
    out.cols_ = cols;
    out.entries_ = std::move(values);
    return out;
  }

  const RingDescriptor& descriptor() const noexcept { return descriptor_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  const std::vector<RingValue>& entries() const noexcept { return entries_; }

  const RingValue& operator()(std::size_t r, std::size_t c) const { return entries_[index(r, c)]; }

  void set(std::size_t r, std::size_t c, RingValue v) {
    if (!(v.descriptor() == descriptor_)) throw Error("matrix entry has a foreign ring descriptor");
    entries_[index(r, c)] = std::move(v);
  }

  bool is_zero() const {
    for (const auto& e : entries_) {
      if (!e.is_zero()) return false;
    }
    return true;
  }

  Matrix transpose() const {
    Matrix out(descriptor_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) out.entries_[c * rows_ + r] = entries_[r * cols_ + c];
    }
    return out;
  }

  Matrix operator-() const {
    Matrix out = *this;
    for (auto& e : out.entries_) e = -e;
    return out;
  }

  Matrix& operator+=(const Matrix& y) {
    require_same_shape(y);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += y.entries_[i];
    return *this;
  }

  Matrix& operator-=(const Matrix& y) {
    require_same_shape(y);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= y.entries_[i];
    return *this;
  }

  friend Matrix operator+(Matrix x, const Matrix& y) { return x += y; }
  friend Matrix operator-(Matrix x, const Matrix& y) { return x -= y; }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (!(x.descriptor_ == y.descriptor_)) throw Error("matrix product across different rings");
    if (x.cols_ != y.rows_) {
      throw Error("matrix product shape mismatch: " + x.shape() + " times " + y.shape());
    }
    Matrix out(x.descriptor_, x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i) {
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const RingValue& a = x.entries_[i * x.cols_ + k];
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) {
          const RingValue& b = y.entries_[k * y.cols_ + j];
          if (!b.is_zero()) out.entries_[i * y.cols_ + j] += a * b;
        }
      }
    }
    return out;
  }

  Matrix scaled(const RingValue& s) const {
    Matrix out = *this;
    for (auto& e : out.entries_) e = s * e;
    return out;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.descriptor_ == y.descriptor_ && x.rows_ == y.rows_ && x.cols_ == y.cols_ &&
           x.entries_ == y.entries_;
  }

  /// "[[1,2],[3,4]]"; polynomial entries appear as "(c0,c1,...)".
  std::string to_string() const {
    const bool poly = descriptor_.kind() == RingKind::polynomial;
    std::string out = "[";
    for (std::size_t r = 0; r < rows_; ++r) {
      out += r == 0 ? "[" : ",[";
      for (std::size_t c = 0; c < cols_; ++c) {
        if (c != 0) out += ',';
        out += poly ? "(" + (*this)(r, c).to_string() + ")" : (*this)(r, c).to_string();
      }
      out += ']';
    }
    return out + "]";
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  std::size_t index(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw Error("matrix index out of range");
    return r * cols_ + c;
  }

  void require_same_shape(const Matrix& y) const {
    if (!(descriptor_ == y.descriptor_)) throw Error("matrix arithmetic across different rings");
    if (rows_ != y.rows_ || cols_ != y.cols_) throw Error("matrix shape mismatch: " + shape() + " vs " + y.shape());
  }

  RingDescriptor descriptor_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<RingValue> entries_;
};

inline Matrix mat_mul(const Matrix& x, const Matrix& y) { return x * y; }

/// Determinant over any commutative ring, without division.
///
/// Berkowitz's algorithm: the characteristic polynomial of the trailing
/// principal submatrix of size k+1 is a Toeplitz matrix times that of size k,
/// where the Toeplitz entries are 1, -a and -R A^i C for the bordering row R,
/// column C and corner a. O(k^4) ring operations.
inline RingValue det_commutative(const Matrix& x) {
  if (!x.is_square()) throw Error("determinant of a non-square matrix (" + x.shape() + ")");
  const RingDescriptor& d = x.descriptor();
  const std::size_t k = x.rows();
  const RingValue one = RingValue::one(d);
  if (k == 0) return one;

  // Coefficients of det(tI - A) for the trailing submatrix, leading term first.
  std::vector<RingValue> charpoly{one, -x(k - 1, k - 1)};
  for (std::size_t s = k - 1; s-- > 0;) {
    const std::size_t size = k - s;
    std::vector<RingValue> toeplitz(size + 1, RingValue::zero(d));
    toeplitz[0] = one;
    toeplitz[1] = -x(s, s);

    std::vector<RingValue> column(size - 1);
    for (std::size_t i = 0; i + 1 < size; ++i) column[i] = x(s + 1 + i, s);
    for (std::size_t power = 0; power + 1 < size; ++power) {
      if (power > 0) {
        std::vector<RingValue> next(size - 1, RingValue::zero(d));
        for (std::size_t r = 0; r + 1 < size; ++r) {
          for (std::size_t c = 0; c + 1 < size; ++c) {
            const RingValue& a = x(s + 1 + r, s + 1 + c);
            if (!a.is_zero() && !column[c].is_zero()) next[r] += a * column[c];
          }
        }
        column = std::move(next);
      }
      RingValue dot = RingValue::zero(d);
      for (std::size_t c = 0; c + 1 < size; ++c) {
        const RingValue& a = x(s, s + 1 + c);
        if (!a.is_zero() && !column[c].is_zero()) dot += a * column[c];
      }
      toeplitz[2 + power] = -dot;
    }

    std::vector<RingValue> next(size + 1, RingValue::zero(d));
    for (std::size_t r = 0; r <= size; ++r) {
      for (std::size_t c = 0; c < size && c <= r; ++c) {
        if (!toeplitz[r - c].is_zero() && !charpoly[c].is_zero()) next[r] += toeplitz[r - c] * charpoly[c];
      }
    }
    charpoly = std::move(next);
  }
  return k % 2 == 0 ? charpoly[k] : -charpoly[k];
}

/// Determinant as the signed sum over S_k. Test oracle; k is capped at 8.
inline RingValue det_expansion_oracle(const Matrix& x) {
  if (!x.is_square()) throw Error("determinant of a non-square matrix (" + x.shape() + ")");
  const RingDescriptor& d = x.descriptor();
  RingValue total = RingValue::zero(d);
  for_each_permutation(x.rows(), [&](const Permutation& pi) {
    RingValue term = RingValue::from_integer(d, pi.sign());
    for (std::size_t r = 0; r < x.rows(); ++r) term = term * x(r, pi(r));
    total += term;
  });
  return total;
}

/// x with row r and column c removed.
inline Matrix minor_matrix(const Matrix& x, std::size_t r, std::size_t c) {
  if (r >= x.rows() || c >= x.cols()) throw Error("minor index out of range");
  Matrix out(x.descriptor(), x.rows() - 1, x.cols() - 1);
  for (std::size_t i = 0, oi = 0; i < x.rows(); ++i) {
    if (i == r) continue;
    for (std::size_t j = 0, oj = 0; j < x.cols(); ++j) {
      if (j == c) continue;
      out.set(oi, oj++, x(i, j));
    }
    ++oi;
  }
  return out;
}

/// Cofactor matrix: entry (i,j) is (-1)^(i+j) times the (i,j) minor, so that
/// x * transpose(cofactor_matrix(x)) == det(x) * I.
inline Matrix cofactor_matrix(const Matrix& x) {
  if (!x.is_square()) throw Error("cofactor matrix of a non-square matrix (" + x.shape() + ")");
  const std::size_t k = x.rows();
  if (k == 0) throw Error("cofactor matrix needs dimension >= 1");
  if (k == 1) return Matrix::identity(x.descriptor(), 1);
  Matrix out(x.descriptor(), k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      RingValue m = det_commutative(minor_matrix(x, i, j));
      out.set(i, j, (i + j) % 2 == 0 ? m : -m);
    }
  }
  return out;
}

/// An n x n array of m x m blocks over one base ring. Block indices are 0-based.
class BlockMatrix {
 public:
  BlockMatrix() = default;

  BlockMatrix(RingDescriptor descriptor, std::size_t block_size, std::size_t count)
      : descriptor_(std::move(descriptor)), block_size_(block_size), count_(count),
        blocks_(count * count, Matrix(descriptor_, block_size, block_size)) {}

  /// Row-major nested lists of square blocks of equal size.
  static BlockMatrix from_blocks(const std::vector<std::vector<Matrix>>& rows) {
    if (rows.empty()) throw Error("block matrix needs at least one block");
    const std::size_t n = rows.size();
    const Matrix& first = rows[0].at(0);
    BlockMatrix out(first.descriptor(), first.rows(), n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw Error("block matrix rows must have n blocks each");
      for (std::size_t j = 0; j < n; ++j) out.set_block(i, j, rows[i][j]);
    }
    return out;
  }

  const RingDescriptor& descriptor() const noexcept { return descriptor_; }
  std::size_t block_size() const noexcept { return block_size_; }
  std::size_t count() const noexcept { return count_; }

  const Matrix& block(std::size_t i, std::size_t j) const { return blocks_[index(i, j)]; }

  void set_block(std::size_t i, std::size_t j, Matrix b) {
    if (!(b.descriptor() == descriptor_) || b.rows() != block_size_ || b.cols() != block_size_) {
      throw Error("block must be " + std::to_string(block_size_) + "x" + std::to_string(block_size_) + " over " +
                  descriptor_.to_string());
    }
    blocks_[index(i, j)] = std::move(b);
  }

  /// Block (i,j) of the result is the transpose of block (j,i): the transpose over R.
  BlockMatrix transpose() const {
    BlockMatrix out(descriptor_, block_size_, count_);
    for (std::size_t i = 0; i < count_; ++i) {
      for (std::size_t j = 0; j < count_; ++j) out.blocks_[i * count_ + j] = block(j, i).transpose();
    }
    return out;
  }

  /// Removes block row r and block column c.
  BlockMatrix without(std::size_t r, std::size_t c) const {
    if (r >= count_ || c >= count_) throw Error("block index out of range");
    BlockMatrix out(descriptor_, block_size_, count_ - 1);
    for (std::size_t i = 0, oi = 0; i < count_; ++i) {
      if (i == r) continue;
      for (std::size_t j = 0, oj = 0; j < count_; ++j) {
        if (j == c) continue;
        out.blocks_[oi * out.count_ + oj++] = block(i, j);
      }
      ++oi;
    }
    return out;
  }

  /// Block column j of the result is block column pi^{-1}(j) of this matrix,
  /// i.e. column j moves to position pi(j).
  BlockMatrix with_columns_permuted(const Permutation& pi) const {
    const Permutation p = pi.extended(count_);
    BlockMatrix out(descriptor_, block_size_, count_);
    for (std::size_t i = 0; i < count_; ++i) {
      for (std::size_t j = 0; j < count_; ++j) out.blocks_[i * count_ + p(j)] = block(i, j);
    }
    return out;
  }

  /// Row i moves to position pi(i).
  BlockMatrix with_rows_permuted(const Permutation& pi) const {
    const Permutation p = pi.extended(count_);
    BlockMatrix out(descriptor_, block_size_, count_);
    for (std::size_t i = 0; i < count_; ++i) {
      for (std::size_t j = 0; j < count_; ++j) out.blocks_[p(i) * count_ + j] = block(i, j);
    }
    return out;
  }

  friend bool operator==(const BlockMatrix&, const BlockMatrix&) = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    if (i >= count_ || j >= count_) throw Error("block index out of range");
    return i * count_ + j;
  }

  RingDescriptor descriptor_;
  std::size_t block_size_ = 0;
  std::size_t count_ = 0;
  std::vector<Matrix> blocks_;
};

/// The mn x mn matrix whose entry ((i)m + r, (j)m + c) is block (i,j) at (r,c).
inline Matrix block_flatten(const BlockMatrix& M) {
  const std::size_t m = M.block_size();
  const std::size_t n = M.count();
  std::vector<RingValue> entries;
  entries.reserve(m * n * m * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t j = 0; j < n; ++j) {
        const Matrix& b = M.block(i, j);
        for (std::size_t c = 0; c < m; ++c) entries.push_back(b(r, c));
      }
    }
  }
  return Matrix::from_values(M.descriptor(), m * n, m * n, std::move(entries));
}

/// Inverse of block_flatten for a square matrix whose dimension m divides.
inline BlockMatrix block_view(const Matrix& x, std::size_t m) {
  if (!x.is_square()) throw Error("block view of a non-square matrix (" + x.shape() + ")");
  if (m == 0 || x.rows() % m != 0) {
    throw Error("dimension " + std::to_string(x.rows()) + " is not divisible by block size " + std::to_string(m));
  }
  const std::size_t n = x.rows() / m;
  BlockMatrix out(x.descriptor(), m, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Matrix b(x.descriptor(), m, m);
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) b.set(r, c, x(i * m + r, j * m + c));
      }
      out.set_block(i, j, std::move(b));
    }
  }
  return out;
}

}  // namespace blockdet

#pragma once

// Integer-coefficient polynomials in noncommuting generators g_(i,j), taken
// modulo a partial commutation relation (a trace monoid algebra). Words are
// kept in lexicographic normal form, so equality of polynomials is equality
// of their term maps.

#include "blockdet/conditions.hpp"
#include "blockdet/matrix.hpp"
#include "blockdet/permutation.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace blockdet {

/// A generator is a position of the generic n x n matrix.
using Generator = Vertex;
using TraceWord = std::vector<Generator>;

/// Symmetric, irreflexive relation on the generators of V_n.
class CommRel {
 public:
  explicit CommRel(std::size_t n) : n_(n), adjacent_(n * n * n * n, false) {}

  static CommRel empty(std::size_t n) { return CommRel(n); }
  static CommRel full(std::size_t n) { return from_condition(cond_complete(n)); }

  static CommRel from_condition(const Condition& g) {
    CommRel rel(g.size());
    for (const auto& [u, v] : g.edges()) {
      rel.adjacent_[rel.index(u, v)] = true;
      rel.adjacent_[rel.index(v, u)] = true;
    }
    return rel;
  }

  std::size_t size() const noexcept { return n_; }

  bool commute(Generator u, Generator v) const { return adjacent_[index(u, v)]; }

  void check(Generator g) const {
    if (g.row >= n_ || g.col >= n_) throw Error("generator " + g.to_string() + " outside V_" + std::to_string(n_));
  }

  friend bool operator==(const CommRel&, const CommRel&) = default;

 private:
  std::size_t index(Generator u, Generator v) const {
    check(u);
    check(v);
    return (u.row * n_ + u.col) * n_ * n_ + v.row * n_ + v.col;
  }

  std::size_t n_;
  std::vector<bool> adjacent_;
};

/// Lexicographically least word equivalent to w, letters ordered by (row, col).
///
/// Greedy: the letters that can start a representative are exactly those
/// commuting with every letter before them; emit the least one and repeat.
inline TraceWord word_normal_form(const TraceWord& w, const CommRel& rel) {
  for (const auto& g : w) rel.check(g);
  TraceWord rest = w;
  TraceWord out;
  out.reserve(w.size());
  while (!rest.empty()) {
    std::size_t best = 0;
    bool found = false;
    for (std::size_t p = 0; p < rest.size(); ++p) {
      bool movable = true;
      for (std::size_t q = 0; q < p && movable; ++q) movable = rel.commute(rest[q], rest[p]);
      if (movable && (!found || rest[p] < rest[best])) {
        best = p;
        found = true;
      }
    }
    out.push_back(rest[best]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

/// Same trace, decided by comparing normal forms.
inline bool trace_equal(const TraceWord& u, const TraceWord& v, const CommRel& rel) {
  return word_normal_form(u, rel) == word_normal_form(v, rel);
}

/// Same trace, decided by the projection criterion: equal letter counts and
/// equal projections onto every non-commuting pair of distinct letters.
inline bool trace_equal_by_projection(const TraceWord& u, const TraceWord& v, const CommRel& rel) {
  for (const auto& g : u) rel.check(g);
  for (const auto& g : v) rel.check(g);
  std::map<Generator, std::size_t> count_u;
  std::map<Generator, std::size_t> count_v;
  for (const auto& g : u) ++count_u[g];
  for (const auto& g : v) ++count_v[g];
  if (count_u != count_v) return false;
  for (auto a = count_u.begin(); a != count_u.end(); ++a) {
    for (auto b = std::next(a); b != count_u.end(); ++b) {
      if (rel.commute(a->first, b->first)) continue;
      auto project = [&](const TraceWord& w) {
        TraceWord p;
        for (const auto& g : w) {
          if (g == a->first || g == b->first) p.push_back(g);
        }
        return p;
      };
      if (project(u) != project(v)) return false;
    }
  }
  return true;
}

/// "(r,c)(r,c)...", 1-based; the empty word prints as "1".
inline std::string word_to_string(const TraceWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& g : w) out += g.to_string();
  return out;
}

/// Parses "(r,c)(r,c)..." (1-based). "1" is the empty word.
inline TraceWord parse_word(std::string_view text) {
  TraceWord w;
  if (text == "1") return w;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t close = text.find(')', pos);
    std::size_t comma = text.find(',', pos);
    if (text[pos] != '(' || close == text.npos || comma == text.npos || comma > close) {
      throw Error("malformed trace word '" + std::string(text) + "'");
    }
    std::size_t r = 0;
    std::size_t c = 0;
    auto r_res = std::from_chars(text.data() + pos + 1, text.data() + comma, r);
    auto c_res = std::from_chars(text.data() + comma + 1, text.data() + close, c);
    if (r_res.ec != std::errc() || c_res.ec != std::errc() || r_res.ptr != text.data() + comma ||
        c_res.ptr != text.data() + close) {
      throw Error("malformed trace word '" + std::string(text) + "'");
    }
    w.push_back(at(r, c));
    pos = close + 1;
  }
  return w;
}

class TracePoly {
 public:
  using Terms = std::map<TraceWord, std::int64_t>;

  explicit TracePoly(CommRel rel) : rel_(std::move(rel)) {}

  static TracePoly monomial(const CommRel& rel, const TraceWord& w, std::int64_t coefficient = 1) {
    TracePoly p(rel);
    p.add_term(w, coefficient);
    return p;
  }

  static TracePoly one(const CommRel& rel) { return monomial(rel, {}); }

  const CommRel& relation() const noexcept { return rel_; }
  std::size_t size() const noexcept { return rel_.size(); }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Adds coefficient * w, renormalizing w and dropping cancelled terms.
  void add_term(const TraceWord& w, std::int64_t coefficient) {
    if (coefficient == 0) return;
    TraceWord key = word_normal_form(w, rel_);
    auto [it, inserted] = terms_.try_emplace(std::move(key), 0);
    if (__builtin_add_overflow(it->second, coefficient, &it->second)) throw Error("trace polynomial coefficient overflow");
    if (it->second == 0) terms_.erase(it);
  }

  TracePoly operator-() const {
    TracePoly out = *this;
    for (auto& [w, c] : out.terms_) c = -c;
    return out;
  }

  TracePoly& operator+=(const TracePoly& y) {
    require_same(y);
    for (const auto& [w, c] : y.terms_) add_term(w, c);
    return *this;
  }

  TracePoly& operator-=(const TracePoly& y) { return *this += -y; }

  friend TracePoly operator+(TracePoly x, const TracePoly& y) { return x += y; }
  friend TracePoly operator-(TracePoly x, const TracePoly& y) { return x -= y; }

  friend TracePoly operator*(const TracePoly& x, const TracePoly& y) {
    x.require_same(y);
    TracePoly out(x.rel_);
    for (const auto& [wx, cx] : x.terms_) {
      for (const auto& [wy, cy] : y.terms_) {
        std::int64_t c = 0;
        if (__builtin_mul_overflow(cx, cy, &c)) throw Error("trace polynomial coefficient overflow");
        TraceWord w = wx;
        w.insert(w.end(), wy.begin(), wy.end());
        out.add_term(w, c);
      }
    }
    return out;
  }

  friend bool operator==(const TracePoly& x, const TracePoly& y) {
    x.require_same(y);
    return x.terms_ == y.terms_;
  }

  /// Signed terms in normal-form key order: "+1*(1,1)(2,2) -1*(1,2)(2,1)"; zero is "0".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : terms_) {
      if (!out.empty()) out += ' ';
      out += c < 0 ? "-" : "+";
      out += std::to_string(c < 0 ? -c : c) + "*" + word_to_string(w);
    }
    return out;
  }

 private:
  void require_same(const TracePoly& y) const {
    if (!(rel_ == y.rel_)) throw Error("trace polynomials over different commutation relations");
  }

  CommRel rel_;
  Terms terms_;
};

inline TracePoly tracepoly_mul(const TracePoly& x, const TracePoly& y) { return x * y; }

/// Substitutes block (i,j) of M for g_(i,j). Meaningful when every related
/// pair of generators maps to commuting blocks.
inline Matrix evaluate(const TracePoly& p, const BlockMatrix& M) {
  if (M.count() != p.size()) throw Error("block matrix size does not match the trace polynomial");
  const RingDescriptor& d = M.descriptor();
  Matrix total(d, M.block_size(), M.block_size());
  for (const auto& [w, c] : p.terms()) {
    Matrix term = Matrix::identity(d, M.block_size());
    for (const auto& g : w) term = term * M.block(g.row, g.col);
    total += term.scaled(RingValue::from_integer(d, c));
  }
  return total;
}

/// Cap on n for the symbolic expansions (6! = 720 terms).
inline constexpr std::size_t kMaxSymbolicSize = 6;

namespace detail {

inline void require_symbolic_size(std::size_t n, std::size_t cap) {
  if (n == 0 || n > cap) {
    throw Error("symbolic size " + std::to_string(n) + " outside 1.." + std::to_string(cap));
  }
}

/// Sum over pi of sgn(pi) times the word built by word_of(pi).
template <class WordOf>
TracePoly signed_expansion(std::size_t n, const CommRel& rel, WordOf&& word_of) {
  TracePoly p(rel);
  for_each_permutation(n, [&](const Permutation& pi) { p.add_term(word_of(pi), pi.sign()); });
  return p;
}

}  // namespace detail

/// Row-determinant of the generic matrix of generators: sum of
/// sgn(pi) g_(1,pi(1)) ... g_(n,pi(n)) under rel.
inline TracePoly symbolic_row_det(std::size_t n, const CommRel& rel) {
  detail::require_symbolic_size(n, kMaxSymbolicSize);
  if (rel.size() != n) throw Error("relation size does not match n");
  return detail::signed_expansion(n, rel, [n](const Permutation& pi) {
    TraceWord w;
    for (std::size_t r = 0; r < n; ++r) w.push_back(Vertex{r, pi(r)});
    return w;
  });
}

/// Swapping block columns k and k+1 (1-based) negates the row-determinant,
/// with no commutation at all: each product stays ordered by row.
inline bool check_colswap_identity(std::size_t n, std::size_t k) {
  detail::require_symbolic_size(n, kMaxSymbolicSize);
  if (k == 0 || k >= n) throw Error("colswap needs 1 <= k < n");
  const CommRel rel = CommRel::empty(n);
  const Permutation swap = Permutation::transposition(n, k - 1, k);
  const TracePoly swapped = detail::signed_expansion(n, rel, [&](const Permutation& pi) {
    TraceWord w;
    for (std::size_t r = 0; r < n; ++r) w.push_back(Vertex{r, swap(pi(r))});
    return w;
  });
  return swapped == -symbolic_row_det(n, rel);
}

/// Row-determinant of the transpose, transposed back: sum of
/// sgn(pi) g_(pi(n),n) ... g_(pi(1),1), with factors in descending column order.
inline TracePoly symbolic_transpose_row_det(std::size_t n, const CommRel& rel) {
  return detail::signed_expansion(n, rel, [n](const Permutation& pi) {
    TraceWord w;
    for (std::size_t c = n; c-- > 0;) w.push_back(Vertex{pi(c), c});
    return w;
  });
}

/// The transposed expansion equals the row-determinant under T_{col c,n}. 1 <= c <= n <= 5.
inline bool check_transpose_identity(std::size_t n, std::size_t c) {
  detail::require_symbolic_size(n, 5);
  if (c == 0 || c > n) throw Error("transpose check needs 1 <= c <= n");
  const CommRel rel = CommRel::from_condition(cond_t_col(c, n));
  return symbolic_transpose_row_det(n, rel) == symbolic_row_det(n, rel);
}

/// Relation of kappa_n minus one edge: every pair of generators outside row 1
/// commutes except the missing pair (if any).
inline CommRel rowswap_relation(std::size_t n, const std::optional<Edge>& missing) {
  if (!missing) return CommRel::from_condition(cond_kappa(n));
  return CommRel::from_condition(kappa_without(n, missing->first, missing->second));
}

/// Moving block row r of the generic matrix to row sigma(r) multiplies the
/// row-determinant by sgn(sigma), under rowswap_relation. sigma must fix row 1.
inline bool check_row_permutation_identity(std::size_t n, const Permutation& sigma,
                                           const std::optional<Edge>& missing) {
  detail::require_symbolic_size(n, 5);
  if (sigma.degree() != n || sigma(0) != 0) throw Error("row permutation must have degree n and fix row 1");
  if (missing && (missing->first.row == 0 || missing->second.row == 0)) {
    throw Error("the missing edge must avoid row 1");
  }
  const CommRel rel = rowswap_relation(n, missing);
  const Permutation source = sigma.inverse();
  const TracePoly permuted = detail::signed_expansion(n, rel, [&](const Permutation& pi) {
    TraceWord w;
    for (std::size_t r = 0; r < n; ++r) w.push_back(Vertex{source(r), pi(r)});
    return w;
  });
  const TracePoly original = symbolic_row_det(n, rel);
  return permuted == (sigma.sign() > 0 ? original : -original);
}

/// Swapping block rows i and j (1-based, 2 <= i < j <= n <= 5) negates the
/// row-determinant under rowswap_relation. The identity holds when the missing
/// pair lies in one row, or when the swap keeps its two rows in the same order;
/// the return value is the truth of the identity either way.
inline bool check_rowswap_identity(std::size_t n, std::size_t i, std::size_t j, const std::optional<Edge>& missing) {
  detail::require_symbolic_size(n, 5);
  if (i < 2 || i >= j || j > n) throw Error("rowswap needs 2 <= i < j <= n");
  return check_row_permutation_identity(n, Permutation::transposition(n, i - 1, j - 1), missing);
}

/// Symbolic cofactor column identity under F_n: for each block row i,
/// sum_j g_(i,j) Cof^{1j} equals the row-determinant when i = 1 and 0 otherwise.
/// Returns the 1-based rows where it fails (empty when it holds).
inline std::vector<std::size_t> check_lemma41_identity(std::size_t n) {
  detail::require_symbolic_size(n, kMaxSymbolicSize);
  const CommRel rel = CommRel::from_condition(cond_f(n));
  std::vector<TracePoly> cofactors;
  for (std::size_t j = 0; j < n; ++j) {
    TracePoly cof(rel);
    if (n == 1) {
      cof = TracePoly::one(rel);
    } else {
      // Rows 2..n against the columns other than j, in row order.
      std::vector<std::size_t> columns;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != j) columns.push_back(c);
      }
      for_each_permutation(n - 1, [&](const Permutation& sigma) {
        TraceWord w;
        for (std::size_t r = 0; r + 1 < n; ++r) w.push_back(Vertex{r + 1, columns[sigma(r)]});
        cof.add_term(w, j % 2 == 0 ? sigma.sign() : -sigma.sign());
      });
    }
    cofactors.push_back(std::move(cof));
  }
  const TracePoly det = symbolic_row_det(n, rel);
  std::vector<std::size_t> failing;
  for (std::size_t i = 0; i < n; ++i) {
    TracePoly sum(rel);
    for (std::size_t j = 0; j < n; ++j) sum += TracePoly::monomial(rel, {Vertex{i, j}}) * cofactors[j];
    const bool ok = i == 0 ? sum == det : sum.is_zero();
    if (!ok) failing.push_back(i + 1);
  }
  return failing;
}

}  // namespace blockdet

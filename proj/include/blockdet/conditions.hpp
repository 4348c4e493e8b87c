#pragma once

// Commutativity conditions: graphs on V_n = {(i,j)} whose edges name block
// pairs required to commute, the named families built from them, and the
// satisfies relation against concrete block matrices.

#include "blockdet/matrix.hpp"
#include "blockdet/permutation.hpp"

#include <charconv>
#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace blockdet {

/// A position (row, col) in V_n, stored 0-based and printed 1-based.
struct Vertex {
  std::size_t row = 0;
  std::size_t col = 0;

  friend auto operator<=>(const Vertex&, const Vertex&) = default;

  std::string to_string() const { return "(" + std::to_string(row + 1) + "," + std::to_string(col + 1) + ")"; }
};

/// Vertex from 1-based coordinates, matching the printed form.
inline Vertex at(std::size_t row, std::size_t col) {
  if (row == 0 || col == 0) throw Error("1-based vertex coordinates must be positive");
  return Vertex{row - 1, col - 1};
}

/// Unordered vertex pair, stored with first < second.
using Edge = std::pair<Vertex, Vertex>;

inline Edge make_edge(Vertex u, Vertex v) {
  if (u == v) throw Error("a commutativity condition has no self-loops");
  return u < v ? Edge{u, v} : Edge{v, u};
}

class Condition {
 public:
  explicit Condition(std::size_t n = 1) : n_(n) {
    if (n == 0) throw Error("condition size must be at least 1");
  }

  Condition(std::size_t n, std::initializer_list<Edge> edges) : Condition(n) {
    for (const auto& [u, v] : edges) add_edge(u, v);
  }

  std::size_t size() const noexcept { return n_; }
  const std::set<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  void add_edge(Vertex u, Vertex v) {
    check(u);
    check(v);
    edges_.insert(make_edge(u, v));
  }

  void remove_edge(Vertex u, Vertex v) { edges_.erase(make_edge(u, v)); }

  bool has_edge(Vertex u, Vertex v) const { return u != v && edges_.count(make_edge(u, v)) != 0; }

  std::vector<Vertex> vertices() const {
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) out.push_back(Vertex{i, j});
    }
    return out;
  }

  /// "{(2,1)-(2,2), ...}".
  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [u, v] : edges_) {
      if (!first) out += ", ";
      first = false;
      out += u.to_string() + "-" + v.to_string();
    }
    return out + "}";
  }

  friend bool operator==(const Condition&, const Condition&) = default;

 private:
  void check(Vertex v) const {
    if (v.row >= n_ || v.col >= n_) throw Error("vertex " + v.to_string() + " outside V_" + std::to_string(n_));
  }

  std::size_t n_;
  std::set<Edge> edges_;
};

namespace detail {

template <class Pred>
Condition condition_from_predicate(std::size_t n, Pred&& pred) {
  Condition g(n);
  const auto vs = g.vertices();
  for (std::size_t a = 0; a < vs.size(); ++a) {
    for (std::size_t b = a + 1; b < vs.size(); ++b) {
      if (pred(vs[a], vs[b])) g.add_edge(vs[a], vs[b]);
    }
  }
  return g;
}

inline void require_same_size(const Condition& g, const Condition& h) {
  if (g.size() != h.size()) throw Error("conditions of different sizes");
}

inline void require_parameter(std::size_t p, std::size_t n, const char* what) {
  if (p == 0 || p > n) {
    throw Error(std::string(what) + " parameter " + std::to_string(p) + " must lie in [1, " + std::to_string(n) + "]");
  }
}

}  // namespace detail

inline Condition cond_empty(std::size_t n) { return Condition(n); }

inline Condition cond_complete(std::size_t n) {
  return detail::condition_from_predicate(n, [](Vertex, Vertex) { return true; });
}

/// Edges between blocks outside row 1 lying in different columns.
inline Condition cond_f(std::size_t n) {
  return detail::condition_from_predicate(n, [](Vertex u, Vertex v) { return u.row != 0 && v.row != 0 && u.col != v.col; });
}

/// Complete graph on rows 2..n.
inline Condition cond_kappa(std::size_t n) {
  return detail::condition_from_predicate(n, [](Vertex u, Vertex v) { return u.row != 0 && v.row != 0; });
}

/// Pairs off column c in different rows and columns, plus column-c blocks
/// paired with blocks strictly above-left or strictly below-right. c is 1-based.
inline Condition cond_t_col(std::size_t c, std::size_t n) {
  detail::require_parameter(c, n, "column");
  const std::size_t col = c - 1;
  return detail::condition_from_predicate(n, [col](Vertex u, Vertex v) {
    if (u.row != v.row && u.col != v.col && u.col != col && v.col != col) return true;
    if (u.col == col || v.col == col) {
      const long long dr = static_cast<long long>(u.row) - static_cast<long long>(v.row);
      const long long dc = static_cast<long long>(u.col) - static_cast<long long>(v.col);
      return dr * dc > 0;
    }
    return false;
  });
}

/// Relabels every vertex (i,j) as (i, pi'(j)), pi' extending pi by fixed points.
inline Condition cond_col_permute(const Condition& g, const Permutation& pi) {
  if (pi.degree() > g.size()) throw Error("permutation degree exceeds condition size");
  const Permutation p = pi.extended(g.size());
  Condition out(g.size());
  for (const auto& [u, v] : g.edges()) out.add_edge(Vertex{u.row, p(u.col)}, Vertex{v.row, p(v.col)});
  return out;
}

/// Relabels every vertex (i,j) as (pi'(i), j).
inline Condition cond_row_permute(const Condition& g, const Permutation& pi) {
  if (pi.degree() > g.size()) throw Error("permutation degree exceeds condition size");
  const Permutation p = pi.extended(g.size());
  Condition out(g.size());
  for (const auto& [u, v] : g.edges()) out.add_edge(Vertex{p(u.row), u.col}, Vertex{p(v.row), v.col});
  return out;
}

inline Condition cond_transpose(const Condition& g) {
  Condition out(g.size());
  for (const auto& [u, v] : g.edges()) out.add_edge(Vertex{u.col, u.row}, Vertex{v.col, v.row});
  return out;
}

inline Condition cond_union(const Condition& g, const Condition& h) {
  detail::require_same_size(g, h);
  Condition out = g;
  for (const auto& [u, v] : h.edges()) out.add_edge(u, v);
  return out;
}

inline Condition cond_t_row(std::size_t r, std::size_t n) { return cond_transpose(cond_t_col(r, n)); }

/// (F_n^t u T_{col 1,n}) with columns 1 and j exchanged.
inline Condition cond_f_side(std::size_t j, std::size_t n) {
  detail::require_parameter(j, n, "side");
  const Condition base = cond_union(cond_transpose(cond_f(n)), cond_t_col(1, n));
  return cond_col_permute(base, Permutation::transposition(j, 0, j - 1));
}

/// F_side(i)^t u T_{row i,n}.
inline Condition cond_f_down(std::size_t i, std::size_t n) {
  detail::require_parameter(i, n, "down");
  return cond_union(cond_transpose(cond_f_side(i, n)), cond_t_row(i, n));
}

/// E(G) is a subset of E(H), on the same labeled vertex set.
inline bool is_subgraph(const Condition& g, const Condition& h) {
  detail::require_same_size(g, h);
  for (const auto& [u, v] : g.edges()) {
    if (!h.has_edge(u, v)) return false;
  }
  return true;
}

/// kappa_n with one edge removed.
inline Condition kappa_without(std::size_t n, Vertex u, Vertex v) {
  Condition g = cond_kappa(n);
  if (!g.has_edge(u, v)) throw Error("edge " + u.to_string() + "-" + v.to_string() + " is not in kappa_" + std::to_string(n));
  g.remove_edge(u, v);
  return g;
}

// Size-2 vocabulary: A = (1,1), B = (1,2), C = (2,1), D = (2,2).

inline Vertex size2_vertex(char letter) {
  switch (letter) {
    case 'A':
      return Vertex{0, 0};
    case 'B':
      return Vertex{0, 1};
    case 'C':
      return Vertex{1, 0};
    case 'D':
      return Vertex{1, 1};
    default:
      throw Error(std::string("unknown size-2 vertex letter '") + letter + "'");
  }
}

inline char size2_letter(Vertex v) { return static_cast<char>('A' + v.row * 2 + v.col); }

/// Size-2 condition from edge names such as {"AD", "BC"}.
inline Condition size2_condition(std::initializer_list<std::string_view> edges) {
  Condition g(2);
  for (auto e : edges) {
    if (e.size() != 2) throw Error("size-2 edge names are two letters");
    g.add_edge(size2_vertex(e[0]), size2_vertex(e[1]));
  }
  return g;
}

/// "{AC,BD}" for size-2 conditions.
inline std::string size2_label(const Condition& g) {
  if (g.size() != 2) throw Error("size-2 label requested for a condition of size " + std::to_string(g.size()));
  std::string out = "{";
  bool first = true;
  for (const auto& [u, v] : g.edges()) {
    if (!first) out += ',';
    first = false;
    out += size2_letter(u);
    out += size2_letter(v);
  }
  return out + "}";
}

/// The literal size-2 graphs G1..G5 and H1..H4.
inline Condition cond_named(std::string_view name) {
  if (name == "G1") return size2_condition({"CD"});
  if (name == "G2") return size2_condition({"AD", "BD"});
  if (name == "G3") return size2_condition({"AC", "BC"});
  if (name == "G4") return size2_condition({"AB", "AD", "BC"});
  if (name == "G5") return size2_condition({"AB", "AC", "BD"});
  if (name == "H1") return size2_condition({"AD", "BC"});
  if (name == "H2") return size2_condition({"AB", "AC", "AD"});
  if (name == "H3") return size2_condition({"AB", "BC", "BD"});
  if (name == "H4") return size2_condition({"AC", "BD"});
  throw Error("unknown named condition '" + std::string(name) + "'");
}

enum class FamilyKind { f, side, down, t_col, t_row, kappa, complete, empty, named };

/// A family with at most one member per size, addressed by a string id:
/// "f", "side:j", "down:i", "tcol:c", "trow:r", "kappa", "complete", "empty",
/// or one of "g1".."g5", "h1".."h4" (size 2 only).
struct ConditionFamily {
  FamilyKind kind = FamilyKind::f;
  std::size_t parameter = 0;
  std::string name;

  static ConditionFamily parse(std::string_view id) {
    auto parameterized = [&](std::string_view prefix, FamilyKind kind) -> std::optional<ConditionFamily> {
      if (id.substr(0, prefix.size()) != prefix) return std::nullopt;
      std::string_view digits = id.substr(prefix.size());
      std::size_t value = 0;
      auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
      if (ec != std::errc() || end != digits.data() + digits.size() || value == 0) {
        throw Error("invalid family parameter in '" + std::string(id) + "'");
      }
      return ConditionFamily{kind, value, {}};
    };
    if (id == "f") return {FamilyKind::f, 0, {}};
    if (id == "kappa") return {FamilyKind::kappa, 0, {}};
    if (id == "complete") return {FamilyKind::complete, 0, {}};
    if (id == "empty") return {FamilyKind::empty, 0, {}};
    if (auto f = parameterized("side:", FamilyKind::side)) return *f;
    if (auto f = parameterized("down:", FamilyKind::down)) return *f;
    if (auto f = parameterized("tcol:", FamilyKind::t_col)) return *f;
    if (auto f = parameterized("trow:", FamilyKind::t_row)) return *f;
    if (id.size() == 2 && (id[0] == 'g' || id[0] == 'h')) {
      std::string upper{static_cast<char>(id[0] - 'a' + 'A'), id[1]};
      cond_named(upper);  // validates
      return {FamilyKind::named, 0, upper};
    }
    throw Error("unknown condition family '" + std::string(id) + "'");
  }

  std::string id() const {
    switch (kind) {
      case FamilyKind::f:
        return "f";
      case FamilyKind::side:
        return "side:" + std::to_string(parameter);
      case FamilyKind::down:
        return "down:" + std::to_string(parameter);
      case FamilyKind::t_col:
        return "tcol:" + std::to_string(parameter);
      case FamilyKind::t_row:
        return "trow:" + std::to_string(parameter);
      case FamilyKind::kappa:
        return "kappa";
      case FamilyKind::complete:
        return "complete";
      case FamilyKind::empty:
        return "empty";
      case FamilyKind::named: {
        std::string lower = name;
        lower[0] = static_cast<char>(lower[0] - 'A' + 'a');
        return lower;
      }
    }
    return {};
  }

  Condition instantiate(std::size_t n) const {
    switch (kind) {
      case FamilyKind::f:
        return cond_f(n);
      case FamilyKind::side:
        return cond_f_side(parameter, n);
      case FamilyKind::down:
        return cond_f_down(parameter, n);
      case FamilyKind::t_col:
        return cond_t_col(parameter, n);
      case FamilyKind::t_row:
        return cond_t_row(parameter, n);
      case FamilyKind::kappa:
        return cond_kappa(n);
      case FamilyKind::complete:
        return cond_complete(n);
      case FamilyKind::empty:
        return cond_empty(n);
      case FamilyKind::named:
        if (n != 2) throw Error("condition " + name + " exists only at size 2");
        return cond_named(name);
    }
    throw Error("unreachable family kind");
  }
};

namespace detail {
inline bool blocks_commute(const Matrix& x, const Matrix& y) { return x * y == y * x; }
}  // namespace detail

/// Edge wherever the two blocks commute exactly.
inline Condition commutativity_graph(const BlockMatrix& M) {
  return detail::condition_from_predicate(M.count(), [&](Vertex u, Vertex v) {
    return detail::blocks_commute(M.block(u.row, u.col), M.block(v.row, v.col));
  });
}

/// Every edge of G joins a commuting pair of blocks of M.
inline bool matrix_satisfies(const BlockMatrix& M, const Condition& g) {
  if (M.count() != g.size()) throw Error("condition size does not match the block count");
  for (const auto& [u, v] : g.edges()) {
    if (!detail::blocks_commute(M.block(u.row, u.col), M.block(v.row, v.col))) return false;
  }
  return true;
}

}  // namespace blockdet

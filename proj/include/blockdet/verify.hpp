#pragma once

// Theorem-checking layer: generators of block matrices satisfying a
// condition, randomized campaigns of det(Det M) == det M, the fixed
// counterexamples, and the complete size-2 classification.

#include "blockdet/conditions.hpp"
#include "blockdet/matrix.hpp"
#include "blockdet/ncdet.hpp"
#include "blockdet/traces.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace blockdet {

// ---------------------------------------------------------------------------
// Randomness
//
// Every campaign is driven by one 64-bit seed. Trial t runs on its own
// std::mt19937_64 seeded with trial_seed(seed, t), so trials are independent
// of evaluation order. Ranges are mapped by modulo reduction of the raw
// engine output, which the standard fixes bit-for-bit, so reports are
// reproducible across platforms.
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31U);
}

inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(seed ^ splitmix64(trial + 1));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform-ish integer in [lo, hi].
  long long uniform(long long lo, long long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(next() % span);
  }

 private:
  std::mt19937_64 engine_;
};

/// Integers in [-3, 3], residues in [0, p), or polynomials of degree <= 1
/// with coefficients in [-3, 3].
inline RingValue random_scalar(const RingDescriptor& d, Rng& rng) {
  switch (d.kind()) {
    case RingKind::integers:
      return RingValue::from_integer(d, rng.uniform(-3, 3));
    case RingKind::prime_field:
      return RingValue::from_integer(d, BigInt(rng.next() % d.modulus()));
    case RingKind::polynomial:
      return RingValue::polynomial(d, {BigInt(rng.uniform(-3, 3)), BigInt(rng.uniform(-3, 3))});
  }
  return RingValue::zero(d);
}

inline Matrix random_matrix(const RingDescriptor& d, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix out(d, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out.set(r, c, random_scalar(d, rng));
  }
  return out;
}

/// c0 I + c1 X + ... + c_deg X^deg with random scalar coefficients.
inline Matrix random_polynomial_in(const Matrix& X, std::size_t degree, Rng& rng) {
  const RingDescriptor& d = X.descriptor();
  Matrix power = Matrix::identity(d, X.rows());
  Matrix out(d, X.rows(), X.cols());
  for (std::size_t k = 0; k <= degree; ++k) {
    if (k > 0) power = power * X;
    out += power.scaled(random_scalar(d, rng));
  }
  return out;
}

/// Adds a random 2 x 2 matrix on diagonal slot s (rows and columns 2s, 2s+1).
inline void add_slot_perturbation(Matrix& block, std::size_t slot, Rng& rng) {
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      block.set(2 * slot + r, 2 * slot + c, block(2 * slot + r, 2 * slot + c) + random_scalar(block.descriptor(), rng));
    }
  }
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

enum class GeneratorKind { f_column_slots, slot_cover, centralizer, fallback };
inline constexpr std::size_t kGeneratorKinds = 4;

/// Largest block size for which the centralizer generator is used.
inline constexpr std::size_t kMaxCentralizerBlock = 12;

inline std::string to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::f_column_slots:
      return "f-column-slots";
    case GeneratorKind::slot_cover:
      return "slot-cover";
    case GeneratorKind::centralizer:
      return "centralizer";
    case GeneratorKind::fallback:
      return "fallback";
  }
  return {};
}

/// Assignment of 2 x 2 diagonal slots to the vertices of a condition.
///
/// Vertices with no edge get fully random blocks. Every other vertex v gets
/// p_v(X) + sum of random 2 x 2 perturbations on its slots, where X is scalar
/// on every slot and random on the remainder. Blocks sharing no slot commute;
/// each slot holds a set of pairwise non-adjacent vertices, and the slots
/// together cover every non-edge between non-isolated vertices, so the result
/// satisfies the condition while every non-edge is (generically) violated.
struct SlotPlan {
  std::vector<bool> isolated;                  // indexed by row * n + col
  std::vector<std::vector<Vertex>> slots;      // vertices sharing each slot

  /// Smallest block size the plan fits in (at least 2).
  std::size_t block_size() const { return std::max<std::size_t>(2, 2 * slots.size()); }
};

inline SlotPlan plan_slots(const Condition& g) {
  const std::size_t n = g.size();
  const auto vs = g.vertices();
  SlotPlan plan;
  plan.isolated.assign(n * n, true);
  for (const auto& [u, v] : g.edges()) {
    plan.isolated[u.row * n + u.col] = false;
    plan.isolated[v.row * n + v.col] = false;
  }
  auto isolated = [&](Vertex v) { return plan.isolated[v.row * n + v.col]; };

  std::set<Edge> uncovered;
  for (std::size_t a = 0; a < vs.size(); ++a) {
    for (std::size_t b = a + 1; b < vs.size(); ++b) {
      if (!isolated(vs[a]) && !isolated(vs[b]) && !g.has_edge(vs[a], vs[b])) uncovered.insert(make_edge(vs[a], vs[b]));
    }
  }
  // Greedy maximal independent sets of g, each seeded by an uncovered non-edge.
  while (!uncovered.empty()) {
    const Edge seed = *uncovered.begin();
    std::vector<Vertex> clique{seed.first, seed.second};
    for (const auto& w : vs) {
      if (isolated(w) || w == seed.first || w == seed.second) continue;
      bool independent = true;
      for (const auto& c : clique) independent = independent && !g.has_edge(w, c);
      if (independent) clique.push_back(w);
    }
    for (std::size_t a = 0; a < clique.size(); ++a) {
      for (std::size_t b = a + 1; b < clique.size(); ++b) uncovered.erase(make_edge(clique[a], clique[b]));
    }
    plan.slots.push_back(std::move(clique));
  }
  return plan;
}

struct GeneratedMatrix {
  BlockMatrix matrix;
  GeneratorKind generator = GeneratorKind::slot_cover;
};

namespace detail {

// Row 1 fully random; block (i,j) for i >= 2 is c I + T with T a random 2 x 2
// on slot j, so blocks in different columns multiply to the same thing both ways.
inline BlockMatrix generate_f_column_slots(std::size_t n, std::size_t m, const RingDescriptor& d, Rng& rng) {
  BlockMatrix M(d, m, n);
  for (std::size_t j = 0; j < n; ++j) M.set_block(0, j, random_matrix(d, m, m, rng));
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Matrix b = Matrix::identity(d, m).scaled(random_scalar(d, rng));
      add_slot_perturbation(b, j, rng);
      M.set_block(i, j, std::move(b));
    }
  }
  return M;
}

// X is lambda_s I_2 on each of the first `scalar_slots` slots and random elsewhere.
inline Matrix slot_compatible_base(const RingDescriptor& d, std::size_t m, std::size_t scalar_slots, Rng& rng) {
  Matrix X = random_matrix(d, m, m, rng);
  const std::size_t fixed = 2 * scalar_slots;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      if ((r < fixed || c < fixed) && (r / 2 != c / 2 || r >= fixed || c >= fixed)) X.set(r, c, RingValue::zero(d));
    }
  }
  for (std::size_t s = 0; s < scalar_slots; ++s) {
    const RingValue lambda = random_scalar(d, rng);
    X.set(2 * s, 2 * s, lambda);
    X.set(2 * s, 2 * s + 1, RingValue::zero(d));
    X.set(2 * s + 1, 2 * s, RingValue::zero(d));
    X.set(2 * s + 1, 2 * s + 1, lambda);
  }
  return X;
}

inline BlockMatrix generate_slot_cover(const Condition& g, const SlotPlan& plan, std::size_t m,
                                       const RingDescriptor& d, Rng& rng) {
  const std::size_t n = g.size();
  const Matrix X = slot_compatible_base(d, m, plan.slots.size(), rng);
  BlockMatrix M(d, m, n);
  for (const auto& v : g.vertices()) {
    if (plan.isolated[v.row * n + v.col]) {
      M.set_block(v.row, v.col, random_matrix(d, m, m, rng));
      continue;
    }
    Matrix b = random_polynomial_in(X, 2, rng);
    for (std::size_t s = 0; s < plan.slots.size(); ++s) {
      const auto& members = plan.slots[s];
      if (std::find(members.begin(), members.end(), v) != members.end()) add_slot_perturbation(b, s, rng);
    }
    M.set_block(v.row, v.col, std::move(b));
  }
  return M;
}

// All blocks are polynomials in X (scalar on slot 0), except one non-edge pair,
// preferably outside row 1, which also gets random perturbations on slot 0.
inline BlockMatrix generate_fallback(const Condition& g, std::size_t m, const RingDescriptor& d, Rng& rng) {
  const std::size_t n = g.size();
  const Matrix X = slot_compatible_base(d, m, 1, rng);
  BlockMatrix M(d, m, n);
  for (const auto& v : g.vertices()) M.set_block(v.row, v.col, random_polynomial_in(X, 2, rng));

  std::optional<Edge> chosen;
  const auto vs = g.vertices();
  for (int pass = 0; pass < 2 && !chosen; ++pass) {
    for (std::size_t a = 0; a < vs.size() && !chosen; ++a) {
      for (std::size_t b = a + 1; b < vs.size() && !chosen; ++b) {
        const bool outside_row1 = vs[a].row != 0 && vs[b].row != 0;
        if ((pass == 1 || outside_row1) && !g.has_edge(vs[a], vs[b])) chosen = make_edge(vs[a], vs[b]);
      }
    }
  }
  if (chosen) {
    for (const Vertex& v : {chosen->first, chosen->second}) {
      Matrix b = M.block(v.row, v.col);
      add_slot_perturbation(b, 0, rng);
      M.set_block(v.row, v.col, std::move(b));
    }
  }
  return M;
}

// Basis of the solution space of a x = 0 over a field, by reduced row echelon
// form. T needs +, -, *, == and the supplied division.
template <class T, class Div>
std::vector<std::vector<T>> nullspace(std::vector<std::vector<T>> a, std::size_t vars, const T& zero, const T& one,
                                      Div div) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < vars && rank < a.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < a.size() && a[pivot][col] == zero) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[pivot], a[rank]);
    const T lead = a[rank][col];
    for (auto& x : a[rank]) x = div(x, lead);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][col] == zero) continue;
      const T factor = a[r][col];
      for (std::size_t c = col; c < vars; ++c) a[r][c] = a[r][c] - factor * a[rank][c];
    }
    pivots.push_back(col);
    ++rank;
  }
  std::vector<std::vector<T>> basis;
  std::vector<bool> is_pivot(vars, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  for (std::size_t free = 0; free < vars; ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(vars, zero);
    v[free] = one;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = zero - a[k][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Basis of {Y : Y N = N Y for every N in with}, each matrix a row-major
// vector of m*m entries. Starts from all matrices and cuts the current
// subspace down one neighbour at a time.
template <class T, class Div>
std::vector<std::vector<T>> centralizer_in(const std::vector<std::vector<T>>& with, std::size_t m, const T& zero,
                                           const T& one, Div div) {
  std::vector<std::vector<T>> basis;
  for (std::size_t k = 0; k < m * m; ++k) {
    std::vector<T> e(m * m, zero);
    e[k] = one;
    basis.push_back(std::move(e));
  }
  for (const auto& N : with) {
    if (basis.empty()) break;
    // Column b of the system is the commutator B_b N - N B_b.
    std::vector<std::vector<T>> rows(m * m, std::vector<T>(basis.size(), zero));
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const auto& B = basis[b];
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
          T acc = zero;
          for (std::size_t k = 0; k < m; ++k) acc = acc + B[r * m + k] * N[k * m + c] - N[r * m + k] * B[k * m + c];
          rows[r * m + c][b] = acc;
        }
      }
    }
    const auto combos = nullspace(std::move(rows), basis.size(), zero, one, div);
    std::vector<std::vector<T>> next;
    for (const auto& coeffs : combos) {
      std::vector<T> y(m * m, zero);
      for (std::size_t b = 0; b < basis.size(); ++b) {
        if (coeffs[b] == zero) continue;
        for (std::size_t k = 0; k < m * m; ++k) y[k] = y[k] + coeffs[b] * basis[b][k];
      }
      next.push_back(std::move(y));
    }
    basis = std::move(next);
  }
  return basis;
}

struct Residue {
  std::uint64_t v = 0;
  std::uint64_t p = 0;

  friend Residue operator+(Residue x, Residue y) { return {x.v + y.v >= x.p ? x.v + y.v - x.p : x.v + y.v, x.p}; }
  friend Residue operator-(Residue x, Residue y) { return {x.v >= y.v ? x.v - y.v : x.v + x.p - y.v, x.p}; }
  friend Residue operator*(Residue x, Residue y) { return {detail::mul_mod(x.v, y.v, x.p), x.p}; }
  friend bool operator==(Residue x, Residue y) { return x.v == y.v; }
};

// Basis of the matrices commuting with every matrix in `with`, as row-major
// vectors of ring values. Integers (basis scaled to integer entries) and
// prime fields only.
inline std::vector<std::vector<RingValue>> centralizer_basis(const std::vector<Matrix>& with, std::size_t m,
                                                             const RingDescriptor& ring) {
  auto flat = [&](auto convert) {
    using T = decltype(convert(RingValue()));
    std::vector<std::vector<T>> out;
    for (const Matrix& N : with) {
      std::vector<T> v;
      for (std::size_t k = 0; k < m * m; ++k) v.push_back(convert(N(k / m, k % m)));
      out.push_back(std::move(v));
    }
    return out;
  };
  std::vector<std::vector<RingValue>> out;
  if (ring.kind() == RingKind::prime_field) {
    const std::uint64_t p = ring.modulus();
    const auto basis = centralizer_in(flat([p](const RingValue& v) { return Residue{v.residue(), p}; }), m,
                                      Residue{0, p}, Residue{1, p}, [p](const Residue& x, const Residue& y) {
                                        return x * Residue{detail::pow_mod(y.v, p - 2, p), p};
                                      });
    for (const auto& v : basis) {
      std::vector<RingValue> row;
      for (const auto& x : v) row.push_back(RingValue::from_integer(ring, x.v));
      out.push_back(std::move(row));
    }
    return out;
  }
  if (ring.kind() != RingKind::integers) throw Error("centralizer generator needs integers or a prime field");
  using Rational = boost::multiprecision::cpp_rational;
  const auto basis = centralizer_in(flat([](const RingValue& v) { return Rational(v.as_integer()); }), m,
                                    Rational(0), Rational(1), [](const Rational& x, const Rational& y) { return x / y; });
  for (const auto& v : basis) {
    BigInt scale = 1;
    for (const auto& x : v) {
      const BigInt d = boost::multiprecision::denominator(x);
      scale = scale / boost::multiprecision::gcd(scale, d) * d;
    }
    std::vector<RingValue> row;
    for (const auto& x : v) {
      row.push_back(RingValue::integer(boost::multiprecision::numerator(x) * (scale / boost::multiprecision::denominator(x))));
    }
    out.push_back(std::move(row));
  }
  return out;
}

// Vertices in order of decreasing degree; each block is a random element of
// the centralizer of its neighbours chosen so far.
inline BlockMatrix generate_centralizer(const Condition& g, std::size_t m, const RingDescriptor& ring, Rng& rng) {
  const std::size_t n = g.size();
  auto vs = g.vertices();
  std::vector<std::size_t> degree(n * n, 0);
  for (const auto& [u, v] : g.edges()) {
    ++degree[u.row * n + u.col];
    ++degree[v.row * n + v.col];
  }
  std::stable_sort(vs.begin(), vs.end(),
                   [&](Vertex a, Vertex b) { return degree[a.row * n + a.col] > degree[b.row * n + b.col]; });
  BlockMatrix M(ring, m, n);
  std::vector<bool> chosen(n * n, false);
  for (const Vertex v : vs) {
    std::vector<Matrix> neighbours;
    for (const Vertex w : vs) {
      if (chosen[w.row * n + w.col] && g.has_edge(v, w)) neighbours.push_back(M.block(w.row, w.col));
    }
    Matrix block(ring, m, m);
    if (neighbours.empty()) {
      block = random_matrix(ring, m, m, rng);
    } else {
      for (const auto& b : centralizer_basis(neighbours, m, ring)) {
        const RingValue coefficient = random_scalar(ring, rng);
        for (std::size_t k = 0; k < m * m; ++k) block.set(k / m, k % m, block(k / m, k % m) + coefficient * b[k]);
      }
    }
    M.set_block(v.row, v.col, std::move(block));
    chosen[v.row * n + v.col] = true;
  }
  return M;
}

}  // namespace detail

/// A block matrix satisfying g, deterministic in seed. F_n with m >= 2n uses
/// the column-slot generator. Otherwise, over the integers and prime fields,
/// the seed's low bit picks between the centralizer generator and the slot
/// cover; polynomial rings always use the slot cover. The slot cover falls
/// back to the single-pair generator when m is too small for its plan.
inline GeneratedMatrix gen_satisfying(const Condition& g, std::size_t m, const RingDescriptor& ring,
                                      std::uint64_t seed) {
  if (m < 2) throw Error("generated blocks need size m >= 2");
  Rng rng(seed);
  const std::size_t n = g.size();
  if (m >= 2 * n && g == cond_f(n)) {
    return {detail::generate_f_column_slots(n, m, ring, rng), GeneratorKind::f_column_slots};
  }
  if (ring.kind() != RingKind::polynomial && m <= kMaxCentralizerBlock && seed % 2 == 1) {
    return {detail::generate_centralizer(g, m, ring, rng), GeneratorKind::centralizer};
  }
  const SlotPlan plan = plan_slots(g);
  if (2 * plan.slots.size() <= m) {
    return {detail::generate_slot_cover(g, plan, m, ring, rng), GeneratorKind::slot_cover};
  }
  return {detail::generate_fallback(g, m, ring, rng), GeneratorKind::fallback};
}

/// Some non-edge of g joins two blocks that do not commute.
inline bool violates_some_non_edge(const BlockMatrix& M, const Condition& g) {
  const Condition graph = commutativity_graph(M);
  const Condition complete = cond_complete(g.size());
  for (const auto& [u, v] : complete.edges()) {
    if (!g.has_edge(u, v) && !graph.has_edge(u, v)) return true;
  }
  return false;
}

/// Two blocks in one block column that do not commute.
inline bool has_noncommuting_same_column_pair(const BlockMatrix& M) {
  for (std::size_t j = 0; j < M.count(); ++j) {
    for (std::size_t a = 0; a < M.count(); ++a) {
      for (std::size_t b = a + 1; b < M.count(); ++b) {
        if (!(M.block(a, j) * M.block(b, j) == M.block(b, j) * M.block(a, j))) return true;
      }
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Identity checks and campaigns
// ---------------------------------------------------------------------------

struct IdentityCheck {
  RingValue lhs;  // det_R(Det_S M)
  RingValue rhs;  // det_R(M)
  bool equal = false;
};

inline IdentityCheck check_identity(const BlockMatrix& M) {
  IdentityCheck out;
  out.lhs = det_commutative(nc_row_det(M));
  out.rhs = det_commutative(block_flatten(M));
  out.equal = out.lhs == out.rhs;
  return out;
}

struct CampaignFailure {
  std::size_t trial = 0;
  BlockMatrix matrix;
  RingValue lhs;
  RingValue rhs;
};

struct VerificationReport {
  std::string condition_id;
  Condition condition;
  std::size_t block_size = 0;
  RingDescriptor ring;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  /// Samples in which some non-edge of the condition joins non-commuting blocks.
  std::size_t nonvacuous_samples = 0;
  /// Samples with two non-commuting blocks in one block column.
  std::size_t column_noncommuting_samples = 0;
  /// Samples drawn from each generator, indexed by GeneratorKind.
  std::array<std::size_t, kGeneratorKinds> generator_samples{};
  std::optional<CampaignFailure> first_failure;
  /// (trial, lhs, rhs) of every failing trial, in trial order.
  std::vector<CampaignFailure> failure_log;

  std::string summary() const {
    return "condition=" + condition_id + " trials=" + std::to_string(trials) + " failures=" +
           std::to_string(failures) + " seed=" + std::to_string(seed);
  }

  /// One line per failing trial, a generator line, then the summary line.
  std::string to_text() const {
    std::string out;
    for (const auto& f : failure_log) {
      out += "failure trial=" + std::to_string(f.trial) + " lhs=" + f.lhs.to_string() + " rhs=" + f.rhs.to_string() +
             "\n";
    }
    std::string generators;
    for (std::size_t k = 0; k < kGeneratorKinds; ++k) {
      if (generator_samples[k] == 0) continue;
      if (!generators.empty()) generators += ',';
      generators += to_string(static_cast<GeneratorKind>(k)) + ":" + std::to_string(generator_samples[k]);
    }
    out += "generators=" + (generators.empty() ? std::string("none") : generators) + " m=" + std::to_string(block_size) + " ring=" + ring.to_string() +
           " nonvacuous=" + std::to_string(nonvacuous_samples) + "/" + std::to_string(trials) + "\n";
    return out + summary() + "\n";
  }
};

namespace detail {

inline void record_trial(VerificationReport& report, std::size_t trial, const BlockMatrix& M) {
  IdentityCheck check = check_identity(M);
  if (check.equal) return;
  ++report.failures;
  CampaignFailure failure{trial, M, check.lhs, check.rhs};
  if (!report.first_failure) report.first_failure = failure;
  failure.matrix = BlockMatrix();
  report.failure_log.push_back(std::move(failure));
}

}  // namespace detail

/// Runs check_identity on `trials` generated matrices satisfying g. Every
/// sample is asserted to satisfy g. A clean report means "no counterexample
/// found", never a proof of sufficiency.
inline VerificationReport run_campaign(const Condition& g, std::size_t m, const RingDescriptor& ring,
                                       std::size_t trials, std::uint64_t seed, std::string condition_id = "custom") {
  VerificationReport report;
  report.condition_id = std::move(condition_id);
  report.condition = g;
  report.block_size = m;
  report.ring = ring;
  report.seed = seed;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    GeneratedMatrix sample = gen_satisfying(g, m, ring, trial_seed(seed, t));
    ++report.generator_samples[static_cast<std::size_t>(sample.generator)];
    if (!matrix_satisfies(sample.matrix, g)) {
      throw Error("generator " + to_string(sample.generator) + " produced a matrix violating " + report.condition_id);
    }
    if (violates_some_non_edge(sample.matrix, g)) ++report.nonvacuous_samples;
    if (has_noncommuting_same_column_pair(sample.matrix)) ++report.column_noncommuting_samples;
    detail::record_trial(report, t, sample.matrix);
  }
  return report;
}

enum class SilvesterVariant { a, b, c };

/// Checks det M == det(AD - CB) given AC = CA (variant a), det(DA - BC) given
/// BD = DB (b), or det(DA - CB) given AB = BA (c), for M = [[A, B], [C, D]].
/// The constrained pair are polynomials in one random matrix and the other two
/// blocks are random. With hypothesis = false every block is random.
inline VerificationReport silvester_check(SilvesterVariant variant, std::size_t m, const RingDescriptor& ring,
                                          std::size_t trials, std::uint64_t seed, bool hypothesis = true) {
  if (m < 1) throw Error("silvester_check needs m >= 1");
  VerificationReport report;
  const char* names[] = {"a", "b", "c"};
  const char* edges[] = {"AC", "BD", "AB"};
  const auto index = static_cast<std::size_t>(variant);
  report.condition_id = std::string("silvester:") + names[index] + (hypothesis ? "" : ":unconstrained");
  report.condition = hypothesis ? size2_condition({edges[index]}) : cond_empty(2);
  report.block_size = m;
  report.ring = ring;
  report.seed = seed;
  report.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, t));
    std::array<Matrix, 4> blocks{random_matrix(ring, m, m, rng), random_matrix(ring, m, m, rng),
                                 random_matrix(ring, m, m, rng), random_matrix(ring, m, m, rng)};
    if (hypothesis) {
      const Matrix X = random_matrix(ring, m, m, rng);
      const std::array<std::array<std::size_t, 2>, 3> pairs{{{0, 2}, {1, 3}, {0, 1}}};
      for (std::size_t k : pairs[index]) blocks[k] = random_polynomial_in(X, 2, rng);
    }
    const auto& [A, B, C, D] = blocks;
    const BlockMatrix M = BlockMatrix::from_blocks({{A, B}, {C, D}});
    if (!matrix_satisfies(M, report.condition)) throw Error("silvester sample violates its hypothesis");
    Matrix reduced = variant == SilvesterVariant::a   ? A * D - C * B
                     : variant == SilvesterVariant::b ? D * A - B * C
                                                      : D * A - C * B;
    const RingValue lhs = det_commutative(reduced);
    const RingValue rhs = det_commutative(block_flatten(M));
    if (lhs == rhs) continue;
    ++report.failures;
    CampaignFailure failure{t, M, lhs, rhs};
    if (!report.first_failure) report.first_failure = failure;
    failure.matrix = BlockMatrix();
    report.failure_log.push_back(std::move(failure));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Fixed counterexamples and the size-2 classification
// ---------------------------------------------------------------------------

/// A named block matrix certifying that some condition is not sufficient.
struct Falsifier {
  std::string id;
  BlockMatrix matrix;
};

/// [[A, B], [B, A]] with A = [[1,2],[3,4]], B = [[5,6],[7,8]].
inline BlockMatrix matrix_m1() {
  const auto Z = RingDescriptor::integers();
  const Matrix A = Matrix::from_integers(Z, 2, 2, {1, 2, 3, 4});
  const Matrix B = Matrix::from_integers(Z, 2, 2, {5, 6, 7, 8});
  return BlockMatrix::from_blocks({{A, B}, {B, A}});
}

/// [[A, B], [A, B]].
inline BlockMatrix matrix_m2() {
  const auto Z = RingDescriptor::integers();
  const Matrix A = Matrix::from_integers(Z, 2, 2, {1, 2, 3, 4});
  const Matrix B = Matrix::from_integers(Z, 2, 2, {5, 6, 7, 8});
  return BlockMatrix::from_blocks({{A, B}, {A, B}});
}

/// [[C, D], [E, F]] with 3 x 3 blocks; C = diag(1,1,2) commutes with the rest.
inline BlockMatrix matrix_m3() {
  const auto Z = RingDescriptor::integers();
  const Matrix C = Matrix::from_integers(Z, 3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 2});
  const Matrix D = Matrix::from_integers(Z, 3, 3, {1, 2, 0, 3, 4, 0, 0, 0, 5});
  const Matrix E = Matrix::from_integers(Z, 3, 3, {6, 7, 0, 8, 9, 0, 0, 0, 10});
  const Matrix F = Matrix::from_integers(Z, 3, 3, {1, 1, 0, 0, 1, 0, 0, 0, 1});
  return BlockMatrix::from_blocks({{C, D}, {E, F}});
}

/// The falsifier for H1..H4: M1, M3, M3 with block columns swapped, M2.
inline Falsifier counterexample_h(std::string_view which) {
  if (which == "H1") return {"M1", matrix_m1()};
  if (which == "H2") return {"M3", matrix_m3()};
  if (which == "H3") return {"M3swap", matrix_m3().with_columns_permuted(Permutation::transposition(2, 0, 1))};
  if (which == "H4") return {"M2", matrix_m2()};
  throw Error("no counterexample for '" + std::string(which) + "' (expected H1..H4)");
}

/// Looks up a built-in matrix by id: M1, M2, M3, M3swap.
inline BlockMatrix builtin_matrix(std::string_view id) {
  if (id == "M1") return matrix_m1();
  if (id == "M2") return matrix_m2();
  if (id == "M3") return matrix_m3();
  if (id == "M3swap") return counterexample_h("H3").matrix;
  throw Error("unknown built-in matrix '" + std::string(id) + "' (expected M1, M2, M3 or M3swap)");
}

/// The six possible edges on V_2, in bit order of the classification masks.
inline const std::array<Edge, 6>& size2_edges() {
  static const std::array<Edge, 6> edges{
      make_edge(size2_vertex('A'), size2_vertex('B')), make_edge(size2_vertex('A'), size2_vertex('C')),
      make_edge(size2_vertex('A'), size2_vertex('D')), make_edge(size2_vertex('B'), size2_vertex('C')),
      make_edge(size2_vertex('B'), size2_vertex('D')), make_edge(size2_vertex('C'), size2_vertex('D'))};
  return edges;
}

inline Condition size2_from_mask(unsigned mask) {
  Condition g(2);
  for (std::size_t k = 0; k < 6; ++k) {
    if (mask & (1U << k)) g.add_edge(size2_edges()[k].first, size2_edges()[k].second);
  }
  return g;
}

struct Size2Record {
  unsigned mask = 0;
  Condition graph{2};
  bool is_scc = false;
  /// Minimal SCC contained in the graph (SCC case).
  std::string witness;
  /// H_j containing the graph and its falsifier (non-SCC case).
  std::string obstruction;
  std::string falsifier;
  RingValue lhs;
  RingValue rhs;

  /// "{CD} SCC witness=G1" or "{AC,BD} NOT-SCC falsifier=M2 lhs=128 rhs=0 within=H4".
  std::string to_line() const {
    if (is_scc) return size2_label(graph) + " SCC witness=" + witness;
    return size2_label(graph) + " NOT-SCC falsifier=" + falsifier + " lhs=" + lhs.to_string() +
           " rhs=" + rhs.to_string() + " within=" + obstruction;
  }
};

struct Size2Classification {
  std::vector<Size2Record> records;  // indexed by mask
};

/// Labels all 64 graphs on V_2. SCC iff some G_i is contained; otherwise the
/// graph lies inside some H_j whose fixed falsifier is re-verified against it.
inline Size2Classification classify_size2() {
  static constexpr std::array<const char*, 5> minimal{"G1", "G2", "G3", "G4", "G5"};
  static constexpr std::array<const char*, 4> maximal{"H1", "H2", "H3", "H4"};
  Size2Classification out;
  for (unsigned mask = 0; mask < 64; ++mask) {
    Size2Record rec;
    rec.mask = mask;
    rec.graph = size2_from_mask(mask);
    for (const char* name : minimal) {
      if (is_subgraph(cond_named(name), rec.graph)) {
        rec.is_scc = true;
        rec.witness = name;
        break;
      }
    }
    if (!rec.is_scc) {
      for (const char* name : maximal) {
        if (!is_subgraph(rec.graph, cond_named(name))) continue;
        const Falsifier f = counterexample_h(name);
        const IdentityCheck check = check_identity(f.matrix);
        if (!matrix_satisfies(f.matrix, rec.graph) || check.equal) {
          throw Error("falsifier " + f.id + " does not refute " + size2_label(rec.graph));
        }
        rec.obstruction = name;
        rec.falsifier = f.id;
        rec.lhs = check.lhs;
        rec.rhs = check.rhs;
        break;
      }
      if (rec.falsifier.empty()) {
        throw Error("graph " + size2_label(rec.graph) + " contains no G_i and fits in no H_j");
      }
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Optimality of F_n inside kappa_n
// ---------------------------------------------------------------------------

enum class OptimalityCase { same_row, diff_row };

struct OptimalityCounterexample {
  OptimalityCase which = OptimalityCase::same_row;
  BlockMatrix matrix;  // over Z[a], m = 2
  Matrix row_det;
  RingValue det_flat;
  RingValue det_of_row_det;
};

/// The 2 x 2-block matrices over Z[a] built from K = diag(1,0), L = e21,
/// A = diag(a,0), B = e12 and identity blocks. same_row places A, B in row 2;
/// diff_row places A at (2,1) and B at (3,2) with identities in column 3.
inline OptimalityCounterexample optimality_counterexample(OptimalityCase which, std::size_t n) {
  if (which == OptimalityCase::same_row && n < 2) throw Error("same_row counterexample needs n >= 2");
  if (which == OptimalityCase::diff_row && n < 3) throw Error("diff_row counterexample needs n >= 3");
  if (n > kMaxEnumerationDegree) throw Error("optimality counterexample size exceeds the enumeration cap");
  const RingDescriptor pa = RingDescriptor::polynomial("a");
  const RingValue a = RingValue::variable(pa);
  const Matrix K = Matrix::from_integers(pa, 2, 2, {1, 0, 0, 0});
  const Matrix L = Matrix::from_integers(pa, 2, 2, {0, 0, 1, 0});
  Matrix A(pa, 2, 2);
  A.set(0, 0, a);
  const Matrix B = Matrix::from_integers(pa, 2, 2, {0, 1, 0, 0});
  const Matrix I = Matrix::identity(pa, 2);

  OptimalityCounterexample out;
  out.which = which;
  out.matrix = BlockMatrix(pa, 2, n);
  out.matrix.set_block(0, 0, K);
  out.matrix.set_block(0, 1, L);
  if (which == OptimalityCase::same_row) {
    out.matrix.set_block(1, 0, A);
    out.matrix.set_block(1, 1, B);
    for (std::size_t i = 2; i < n; ++i) out.matrix.set_block(i, i, I);
  } else {
    out.matrix.set_block(1, 0, A);
    out.matrix.set_block(1, 2, I);
    out.matrix.set_block(2, 1, B);
    out.matrix.set_block(2, 2, I);
    for (std::size_t i = 3; i < n; ++i) out.matrix.set_block(i, i, I);
  }
  out.row_det = nc_row_det(out.matrix);
  out.det_of_row_det = det_commutative(out.row_det);
  out.det_flat = det_commutative(block_flatten(out.matrix));
  return out;
}

struct OptimalityEdgeResult {
  Edge edge;                  // the edge of F_n removed from kappa_n
  OptimalityCase which = OptimalityCase::same_row;
  Edge canonical;             // ((2,1),(2,2)) or ((2,1),(3,2))
  Permutation column_map = Permutation::identity(1);
  Permutation row_map = Permutation::identity(1);
  bool relabels_to_canonical = false;  // the two maps carry kappa_n - edge onto kappa_n - canonical
  bool row_identity = false;           // Det M' = sgn Det M under the canonical relation (n <= 5)
  bool satisfies = false;              // the counterexample satisfies kappa_n - canonical
  bool falsified = false;              // and fails the determinant identity
  int degree_row_det = -1;             // degree in a of det(Det M)
  int degree_flat = -1;                // degree in a of det M

  bool ok() const {
    return relabels_to_canonical && row_identity && satisfies && falsified && degree_row_det >= 1 && degree_flat <= 0;
  }
};

struct OptimalityScan {
  std::size_t n = 0;
  std::vector<OptimalityEdgeResult> edges;
  /// Campaigns over sampled subgraphs of kappa_n containing F_n.
  std::vector<VerificationReport> sufficient;

  bool ok() const {
    for (const auto& e : edges) {
      if (!e.ok()) return false;
    }
    for (const auto& r : sufficient) {
      if (r.failures != 0) return false;
    }
    return true;
  }
};

namespace detail {

// Permutation of degree n sending the listed points to 0, 1, ... in order and
// the remaining points, in increasing order, after them.
inline Permutation sending_to_front(std::size_t n, const std::vector<std::size_t>& points) {
  std::vector<std::size_t> images(n, n);
  std::size_t next = 0;
  for (std::size_t p : points) images[p] = next++;
  for (std::size_t i = 0; i < n; ++i) {
    if (images[i] == n) images[i] = next++;
  }
  return Permutation(std::move(images));
}

}  // namespace detail

/// For every edge e of F_n, relabels kappa_n - e onto one of the two canonical
/// graphs by column and row permutations, checks the reordering identity for
/// that row permutation, and confirms the canonical counterexample refutes it.
/// Also runs campaigns on F_n, kappa_n and one random graph between them.
inline OptimalityScan optimality_scan(std::size_t n, std::size_t trials = 100, std::uint64_t seed = 1) {
  if (n < 2 || n > 4) throw Error("optimality_scan supports 2 <= n <= 4");
  OptimalityScan scan;
  scan.n = n;
  const Edge same_row_edge = make_edge(Vertex{1, 0}, Vertex{1, 1});
  const Edge diff_row_edge = make_edge(Vertex{1, 0}, Vertex{2, 1});

  const Condition f = cond_f(n);
  for (const auto& [u, v] : f.edges()) {
    OptimalityEdgeResult r;
    r.edge = make_edge(u, v);
    const Condition g = kappa_without(n, u, v);
    // u precedes v, so u.row <= v.row.
    r.column_map = detail::sending_to_front(n, {u.col, v.col});
    if (u.row == v.row) {
      r.which = OptimalityCase::same_row;
      r.canonical = same_row_edge;
      r.row_map = Permutation::transposition(n, 1, u.row);
    } else {
      r.which = OptimalityCase::diff_row;
      r.canonical = diff_row_edge;
      // Row 2 of the canonical matrix goes to u.row and row 3 to v.row, in order.
      std::vector<std::size_t> images(n);
      std::vector<std::size_t> others;
      for (std::size_t i = 1; i < n; ++i) {
        if (i != u.row && i != v.row) others.push_back(i);
      }
      images[0] = 0;
      images[1] = u.row;
      images[2] = v.row;
      for (std::size_t i = 3; i < n; ++i) images[i] = others[i - 3];
      r.row_map = Permutation(std::move(images)).inverse();
    }
    const Condition canonical_graph = kappa_without(n, r.canonical.first, r.canonical.second);
    r.relabels_to_canonical = cond_row_permute(cond_col_permute(g, r.column_map), r.row_map) == canonical_graph;
    // Rows of a canonical-relation matrix moved back to where e sits.
    r.row_identity = check_row_permutation_identity(n, r.row_map.inverse(), r.canonical);

    const OptimalityCounterexample cx = optimality_counterexample(r.which, n);
    r.satisfies = matrix_satisfies(cx.matrix, canonical_graph);
    r.falsified = !(cx.det_of_row_det == cx.det_flat);
    r.degree_row_det = cx.det_of_row_det.degree();
    r.degree_flat = cx.det_flat.degree();
    scan.edges.push_back(std::move(r));
  }

  const auto ring = RingDescriptor::prime_field(10007);
  Rng rng(seed);
  Condition between = cond_f(n);
  const Condition kappa = cond_kappa(n);
  std::vector<Edge> extra;
  for (const auto& e : kappa.edges()) {
    if (!between.has_edge(e.first, e.second)) extra.push_back(e);
  }
  for (const auto& [u, v] : extra) {
    if (rng.uniform(0, 1) == 1) between.add_edge(u, v);
  }
  if (!extra.empty() && between == cond_f(n)) between.add_edge(extra.front().first, extra.front().second);
  const std::vector<std::pair<std::string, Condition>> samples{
      {"f", cond_f(n)}, {"kappa", cond_kappa(n)}, {"f+random", between}};
  std::uint64_t sample_seed = seed;
  for (const auto& [id, g] : samples) {
    const std::size_t m = std::max<std::size_t>(2 * n, plan_slots(g).block_size());
    scan.sufficient.push_back(run_campaign(g, m, ring, trials, splitmix64(++sample_seed), id));
  }
  return scan;
}

}  // namespace blockdet

#pragma once

// blockdet command dispatch. Exit codes: 0 success / equal, 1 inequality or
// falsification found, 2 usage or input error.

#include "blockdet/io.hpp"
#include "blockdet/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace blockdet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitUsage = 2;

/// Built-in block matrices: M1, M2, M3, M3swap, same_row:n, diff_row:n.
inline BlockMatrix builtin_block_matrix(const std::string& id) {
  for (const auto& [prefix, which] : {std::pair{"same_row:", OptimalityCase::same_row},
                                      std::pair{"diff_row:", OptimalityCase::diff_row}}) {
    const std::string p = prefix;
    if (id.rfind(p, 0) != 0) continue;
    std::size_t n = 0;
    const std::string digits = id.substr(p.size());
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc() || end != digits.data() + digits.size()) throw Error("bad size in '" + id + "'");
    return optimality_counterexample(which, n).matrix;
  }
  return builtin_matrix(id);
}

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline BlockMatrix load_block_matrix(const std::string& file, const std::string& builtin) {
  if (!file.empty() && !builtin.empty()) throw Error("give either --file or --builtin, not both");
  if (!builtin.empty()) return builtin_block_matrix(builtin);
  if (file.empty()) throw Error("one of --file or --builtin is required");
  return parse_block_matrix(read_file(file));
}

inline std::optional<Edge> parse_missing(const std::string& text, std::size_t n) {
  if (text.empty()) return std::nullopt;
  std::vector<std::size_t> v;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::size_t x = 0;
    auto [end, ec] = std::from_chars(text.data() + start, text.data() + comma, x);
    if (ec != std::errc() || end != text.data() + comma || x == 0 || x > n) {
      throw Error("--missing expects i,j,k,l with indices in 1.." + std::to_string(n));
    }
    v.push_back(x);
    start = comma + 1;
  }
  if (v.size() != 4) throw Error("--missing expects four indices i,j,k,l");
  return make_edge(at(v[0], v[1]), at(v[2], v[3]));
}

}  // namespace detail

/// Runs one command line (without the program name). All output goes to out,
/// diagnostics to err.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Noncommutative block-matrix determinants and commutativity conditions", "blockdet"};
  app.require_subcommand(1, 1);
  int status = kExitOk;

  std::string file, builtin;
  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--file", file, "Block matrix file ('m n ring' header, then the flattened rows)");
    cmd->add_option("--builtin", builtin, "M1, M2, M3, M3swap, same_row:n or diff_row:n");
  };

  auto* det = app.add_subcommand("det", "Commutative determinant of a matrix file ('rows cols ring' header)");
  det->add_option("--file", file, "Matrix file");
  det->add_option("--builtin", builtin, "Flattened built-in block matrix");
  det->callback([&] {
    if (file.empty() == builtin.empty()) throw Error("give exactly one of --file or --builtin");
    const Matrix x = file.empty() ? block_flatten(builtin_block_matrix(builtin)) : parse_matrix(detail::read_file(file));
    out << "det=" << det_commutative(x).to_string() << "\n";
  });

  auto* ncdet = app.add_subcommand("ncdet", "Row-determinant of a block matrix and its determinant");
  add_input(ncdet);
  ncdet->callback([&] {
    const BlockMatrix M = detail::load_block_matrix(file, builtin);
    const Matrix d = nc_row_det(M);
    out << "ncdet=" << d.to_string() << "\n";
    out << "det=" << det_commutative(d).to_string() << "\n";
  });

  auto* check = app.add_subcommand("check", "Compare det(Det M) with det M");
  add_input(check);
  check->callback([&] {
    const IdentityCheck c = check_identity(detail::load_block_matrix(file, builtin));
    out << "lhs=" << c.lhs.to_string() << " rhs=" << c.rhs.to_string() << (c.equal ? " EQUAL" : " UNEQUAL") << "\n";
    status = c.equal ? kExitOk : kExitFalse;
  });

  std::string family_id = "f";
  std::size_t n = 2;
  auto* family = app.add_subcommand("family", "Print a condition in the condition file format");
  family->add_option("--id", family_id, "f, kappa, complete, empty, side:j, down:i, tcol:c, trow:r, g1..g5, h1..h4")
      ->required();
  family->add_option("--n", n, "Size")->required();
  family->callback([&] {
    const Condition g = ConditionFamily::parse(family_id).instantiate(n);
    out << format_condition(g);
    out << "edges=" << g.edge_count() << "\n";
  });

  std::size_t m = 0, trials = 200;
  std::uint64_t seed = 1;
  std::string ring_text = "mod:10007";
  auto* campaign = app.add_subcommand("campaign", "Randomized check of the identity on a condition family");
  campaign->add_option("--family", family_id, "Condition family id")->required();
  campaign->add_option("--n", n, "Size")->required();
  campaign->add_option("--m", m, "Block size (default: smallest the generator supports, at least 2n)");
  campaign->add_option("--ring", ring_text, "int, mod:p or poly:v");
  campaign->add_option("--trials", trials, "Number of trials");
  campaign->add_option("--seed", seed, "64-bit seed");
  campaign->callback([&] {
    const ConditionFamily fam = ConditionFamily::parse(family_id);
    const Condition g = fam.instantiate(n);
    const RingDescriptor ring = RingDescriptor::parse(ring_text);
    const std::size_t block = m != 0 ? m : std::max<std::size_t>(2 * n, plan_slots(g).block_size());
    const VerificationReport report = run_campaign(g, block, ring, trials, seed, fam.id());
    out << report.to_text();
    status = report.failures == 0 ? kExitOk : kExitFalse;
  });

  auto* classify2 = app.add_subcommand("classify2", "Classify all 64 conditions of size 2");
  classify2->callback([&] {
    for (const auto& rec : classify_size2().records) out << rec.to_line() << "\n";
  });

  std::string which;
  auto* counterexample = app.add_subcommand("counterexample", "Print a fixed counterexample and its determinants");
  counterexample->add_option("--which", which, "H1..H4, same_row or diff_row")->required();
  counterexample->add_option("--n", n, "Size for same_row / diff_row");
  counterexample->callback([&] {
    BlockMatrix M;
    if (which == "same_row" || which == "diff_row") {
      const auto cx = optimality_counterexample(which == "same_row" ? OptimalityCase::same_row
                                                                    : OptimalityCase::diff_row, n);
      M = cx.matrix;
      out << "ncdet=" << cx.row_det.to_string() << "\n";
    } else {
      const Falsifier f = counterexample_h(which);
      out << "id=" << f.id << "\n";
      M = f.matrix;
    }
    out << format_block_matrix(M);
    const IdentityCheck c = check_identity(M);
    out << "lhs=" << c.lhs.to_string() << " rhs=" << c.rhs.to_string() << (c.equal ? " EQUAL" : " UNEQUAL") << "\n";
  });

  std::string check_id, missing;
  std::size_t k = 1, c = 1, i = 2, j = 3;
  auto* symbolic = app.add_subcommand("symbolic", "Symbolic identity checks in the trace monoid");
  symbolic->add_option("--check", check_id, "colswap, transpose, rowswap or lemma41")->required();
  symbolic->add_option("--n", n, "Size")->required();
  symbolic->add_option("--k", k, "colswap: swap columns k and k+1");
  symbolic->add_option("--c", c, "transpose: column of the T_col condition");
  symbolic->add_option("--i", i, "rowswap: first row");
  symbolic->add_option("--j", j, "rowswap: second row");
  symbolic->add_option("--missing", missing, "rowswap: edge i,j,k,l removed from kappa_n");
  symbolic->callback([&] {
    bool pass = false;
    std::size_t terms = 0;
    if (check_id == "colswap") {
      pass = check_colswap_identity(n, k);
      terms = symbolic_row_det(n, CommRel::empty(n)).term_count();
    } else if (check_id == "transpose") {
      pass = check_transpose_identity(n, c);
      terms = symbolic_row_det(n, CommRel::from_condition(cond_t_col(c, n))).term_count();
    } else if (check_id == "rowswap") {
      const auto edge = detail::parse_missing(missing, n);
      pass = check_rowswap_identity(n, i, j, edge);
      terms = symbolic_row_det(n, rowswap_relation(n, edge)).term_count();
    } else if (check_id == "lemma41") {
      const auto failing = check_lemma41_identity(n);
      pass = failing.empty();
      terms = symbolic_row_det(n, CommRel::from_condition(cond_f(n))).term_count();
    } else {
      throw CLI::ValidationError("--check", "unknown check '" + check_id + "'");
    }
    out << "check=" << check_id << " n=" << n << " terms=" << terms << (pass ? " PASS" : " FAIL") << "\n";
    status = pass ? kExitOk : kExitFalse;
  });

  trials = 200;
  auto* optimality = app.add_subcommand("optimality", "Per-edge optimality scan of F_n inside kappa_n");
  optimality->add_option("--n", n, "Size, 2..4")->required();
  optimality->add_option("--trials", trials, "Trials per sampled campaign");
  optimality->add_option("--seed", seed, "64-bit seed");
  optimality->callback([&] {
    const OptimalityScan scan = optimality_scan(n, trials, seed);
    for (const auto& e : scan.edges) {
      out << "edge=" << e.edge.first.to_string() << e.edge.second.to_string()
          << " case=" << (e.which == OptimalityCase::same_row ? "same_row" : "diff_row")
          << " columns=" << e.column_map.to_string() << " rows=" << e.row_map.to_string()
          << " deg_ncdet=" << e.degree_row_det << " deg_flat=" << e.degree_flat << (e.ok() ? " PASS" : " FAIL")
          << "\n";
    }
    for (const auto& r : scan.sufficient) out << r.summary() << "\n";
    status = scan.ok() ? kExitOk : kExitFalse;
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return status;
}

}  // namespace blockdet::cli

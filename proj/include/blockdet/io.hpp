#pragma once

// Line-oriented text formats.
//
//   matrix:        "rows cols ring" then `rows` lines of entries
//   block matrix:  "m n ring" then m*n lines of m*n entries (the flattened matrix)
//   condition:     "n" then one edge "i j k l" per line, 1-based
//
// Entries are whitespace separated; polynomial entries use "c0,c1,...".
// Blank lines and lines starting with '#' are skipped.

#include "blockdet/conditions.hpp"
#include "blockdet/matrix.hpp"

#include <charconv>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace blockdet {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

struct Token {
  std::string text;
  std::size_t column = 0;  // 1-based
};

struct Line {
  std::size_t number = 0;  // 1-based
  std::vector<Token> tokens;
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(Token{std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

// Non-empty, non-comment lines.
inline std::vector<Line> content_lines(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto tokens = tokenize(raw);
    if (tokens.empty() || tokens.front().text.front() == '#') continue;
    out.push_back(Line{number, std::move(tokens)});
  }
  return out;
}

inline std::size_t parse_count(const Token& t, std::size_t line, const char* what) {
  std::size_t value = 0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, t.column, std::string("expected ") + what + ", got '" + t.text + "'");
  }
  return value;
}

inline void require_tokens(const Line& line, std::size_t count, const char* what) {
  if (line.tokens.size() != count) {
    const std::size_t column = line.tokens.size() > count ? line.tokens[count].column : line.tokens.back().column;
    throw ParseError(line.number, column,
                     std::string(what) + ": expected " + std::to_string(count) + " fields, got " +
                         std::to_string(line.tokens.size()));
  }
}

inline RingDescriptor parse_ring_token(const Token& t, std::size_t line) {
  try {
    return RingDescriptor::parse(t.text);
  } catch (const Error& e) {
    throw ParseError(line, t.column, e.what());
  }
}

inline Matrix parse_entries(const std::vector<Line>& lines, std::size_t first, const RingDescriptor& ring,
                            std::size_t rows, std::size_t cols) {
  if (lines.size() != first + rows) {
    const std::size_t at = lines.size() > first + rows ? lines[first + rows].number
                           : lines.empty()             ? 1
                                                       : lines.back().number;
    throw ParseError(at, 1, "expected " + std::to_string(rows) + " rows of entries, got " +
                                std::to_string(lines.size() - first));
  }
  Matrix out(ring, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const Line& line = lines[first + r];
    require_tokens(line, cols, "matrix row");
    for (std::size_t c = 0; c < cols; ++c) {
      const Token& t = line.tokens[c];
      try {
        out.set(r, c, RingValue::parse(ring, t.text));
      } catch (const Error& e) {
        throw ParseError(line.number, t.column, e.what());
      }
    }
  }
  return out;
}

}  // namespace detail

inline Matrix read_matrix(std::istream& in) {
  const auto lines = detail::content_lines(in);
  if (lines.empty()) throw ParseError(1, 1, "missing header 'rows cols ring'");
  const auto& header = lines.front();
  detail::require_tokens(header, 3, "header 'rows cols ring'");
  const std::size_t rows = detail::parse_count(header.tokens[0], header.number, "row count");
  const std::size_t cols = detail::parse_count(header.tokens[1], header.number, "column count");
  const RingDescriptor ring = detail::parse_ring_token(header.tokens[2], header.number);
  return detail::parse_entries(lines, 1, ring, rows, cols);
}

inline BlockMatrix read_block_matrix(std::istream& in) {
  const auto lines = detail::content_lines(in);
  if (lines.empty()) throw ParseError(1, 1, "missing header 'm n ring'");
  const auto& header = lines.front();
  detail::require_tokens(header, 3, "header 'm n ring'");
  const std::size_t m = detail::parse_count(header.tokens[0], header.number, "block size");
  const std::size_t n = detail::parse_count(header.tokens[1], header.number, "block count");
  if (m == 0 || n == 0) throw ParseError(header.number, 1, "block size and count must be positive");
  const RingDescriptor ring = detail::parse_ring_token(header.tokens[2], header.number);
  return block_view(detail::parse_entries(lines, 1, ring, m * n, m * n), m);
}

inline Condition read_condition(std::istream& in) {
  const auto lines = detail::content_lines(in);
  if (lines.empty()) throw ParseError(1, 1, "missing header 'n'");
  detail::require_tokens(lines.front(), 1, "header 'n'");
  const std::size_t n = detail::parse_count(lines.front().tokens[0], lines.front().number, "size");
  if (n == 0) throw ParseError(lines.front().number, 1, "size must be positive");
  Condition g(n);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const detail::Line& line = lines[k];
    detail::require_tokens(line, 4, "edge 'i j k l'");
    std::size_t v[4];
    for (std::size_t t = 0; t < 4; ++t) {
      v[t] = detail::parse_count(line.tokens[t], line.number, "index");
      if (v[t] == 0 || v[t] > n) {
        throw ParseError(line.number, line.tokens[t].column, "index outside 1.." + std::to_string(n));
      }
    }
    if (v[0] == v[2] && v[1] == v[3]) throw ParseError(line.number, line.tokens[0].column, "self-loop");
    g.add_edge(at(v[0], v[1]), at(v[2], v[3]));
  }
  return g;
}

inline Matrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_matrix(in);
}

inline BlockMatrix parse_block_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_block_matrix(in);
}

inline Condition parse_condition(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_condition(in);
}

inline std::string format_matrix(const Matrix& x) {
  std::string out = std::to_string(x.rows()) + " " + std::to_string(x.cols()) + " " + x.descriptor().to_string() + "\n";
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) {
      if (c > 0) out += ' ';
      const RingValue& v = x(r, c);
      if (v.descriptor().kind() == RingKind::polynomial) {
        // Coefficient-list syntax, readable by RingValue::parse.
        const auto& coeffs = v.coefficients();
        if (coeffs.empty()) out += '0';
        for (std::size_t k = 0; k < coeffs.size(); ++k) out += (k ? "," : "") + coeffs[k].str();
      } else {
        out += v.to_string();
      }
    }
    out += '\n';
  }
  return out;
}

inline std::string format_block_matrix(const BlockMatrix& M) {
  std::string body = format_matrix(block_flatten(M));
  body.erase(0, body.find('\n') + 1);
  return std::to_string(M.block_size()) + " " + std::to_string(M.count()) + " " + M.descriptor().to_string() + "\n" +
         body;
}

inline std::string format_condition(const Condition& g) {
  std::string out = std::to_string(g.size()) + "\n";
  for (const auto& [u, v] : g.edges()) {
    out += std::to_string(u.row + 1) + " " + std::to_string(u.col + 1) + " " + std::to_string(v.row + 1) + " " +
           std::to_string(v.col + 1) + "\n";
  }
  return out;
}

}  // namespace blockdet

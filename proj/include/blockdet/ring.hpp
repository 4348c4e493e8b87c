#pragma once

// Exact commutative rings: arbitrary-precision integers, integers modulo a
// prime, and univariate polynomials with integer coefficients.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace blockdet {

using BigInt = boost::multiprecision::cpp_int;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RingKind { integers, prime_field, polynomial };

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

// Deterministic Miller-Rabin; these bases are exact for every 64-bit input.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline bool is_identifier(std::string_view s) {
  if (s.empty() || (s.front() >= '0' && s.front() <= '9')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

// Decimal integer with an optional leading '-'. Returns false on malformed input.
inline bool parse_bigint(std::string_view text, BigInt& out) {
  if (text.empty()) return false;
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) return false;
  BigInt value = 0;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  out = negative ? BigInt(-value) : value;
  return true;
}

}  // namespace detail

/// Identifies one of the supported rings. Serialized as "int", "mod:p" or "poly:v".
class RingDescriptor {
 public:
  RingDescriptor() = default;

  static RingDescriptor integers() { return RingDescriptor(); }

  static RingDescriptor prime_field(std::uint64_t p) {
    if (p >= (1ULL << 63U) || !detail::is_prime(p)) {
      throw Error("prime field modulus must be a prime below 2^63, got " + std::to_string(p));
    }
    RingDescriptor d;
    d.kind_ = RingKind::prime_field;
    d.modulus_ = p;
    return d;
  }

  static RingDescriptor polynomial(std::string variable = "z") {
    if (!detail::is_identifier(variable)) {
      throw Error("invalid polynomial variable name '" + variable + "'");
    }
    RingDescriptor d;
    d.kind_ = RingKind::polynomial;
    d.variable_ = std::move(variable);
    return d;
  }

  static RingDescriptor parse(std::string_view text) {
    if (text == "int") return integers();
    if (text.substr(0, 4) == "mod:") {
      std::string_view digits = text.substr(4);
      std::uint64_t p = 0;
      auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
      if (ec != std::errc() || end != digits.data() + digits.size()) {
        throw Error("invalid modulus in ring descriptor '" + std::string(text) + "'");
      }
      return prime_field(p);
    }
    if (text.substr(0, 5) == "poly:") return polynomial(std::string(text.substr(5)));
    throw Error("unknown ring descriptor '" + std::string(text) + "' (expected int, mod:p or poly:v)");
  }

  RingKind kind() const noexcept { return kind_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  const std::string& variable() const noexcept { return variable_; }

  std::string to_string() const {
    switch (kind_) {
      case RingKind::integers:
        return "int";
      case RingKind::prime_field:
        return "mod:" + std::to_string(modulus_);
      case RingKind::polynomial:
        return "poly:" + variable_;
    }
    return {};
  }

  friend bool operator==(const RingDescriptor&, const RingDescriptor&) = default;

 private:
  RingKind kind_ = RingKind::integers;
  std::uint64_t modulus_ = 0;
  std::string variable_;
};

/// An element of one of the rings above, always kept in canonical form:
/// residues lie in [0, p) and polynomials carry no trailing zero coefficients.
class RingValue {
 public:
  using Coefficients = std::vector<BigInt>;

  RingValue() = default;

  static RingValue integer(BigInt v) {
    RingValue r;
    r.payload_ = std::move(v);
    return r;
  }

  /// Image of an integer under the canonical map Z -> ring.
  static RingValue from_integer(const RingDescriptor& d, const BigInt& v) {
    RingValue r;
    r.descriptor_ = d;
    switch (d.kind()) {
      case RingKind::integers:
        r.payload_ = v;
        break;
      case RingKind::prime_field: {
        BigInt reduced = v % d.modulus();
        if (reduced < 0) reduced += d.modulus();
        r.payload_ = static_cast<std::uint64_t>(reduced);
        break;
      }
      case RingKind::polynomial: {
        Coefficients c;
        if (v != 0) c.push_back(v);
        r.payload_ = std::move(c);
        break;
      }
    }
    return r;
  }

  static RingValue zero(const RingDescriptor& d) { return from_integer(d, 0); }
  static RingValue one(const RingDescriptor& d) { return from_integer(d, 1); }

  /// Polynomial from coefficients, constant term first.
  static RingValue polynomial(const RingDescriptor& d, Coefficients c) {
    if (d.kind() != RingKind::polynomial) throw Error("polynomial value needs a polynomial descriptor");
    RingValue r;
    r.descriptor_ = d;
    trim(c);
    r.payload_ = std::move(c);
    return r;
  }

  /// The indeterminate of a polynomial ring.
  static RingValue variable(const RingDescriptor& d) { return polynomial(d, {0, 1}); }

  /// Parses a decimal integer, or "c0,c1,...,ck" for polynomial rings.
  static RingValue parse(const RingDescriptor& d, std::string_view text) {
    if (d.kind() == RingKind::polynomial) {
      Coefficients coeffs;
      std::size_t start = 0;
      while (true) {
        std::size_t comma = text.find(',', start);
        std::string_view part = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        BigInt c;
        if (!detail::parse_bigint(part, c)) {
          throw Error("malformed polynomial coefficient '" + std::string(part) + "'");
        }
        coeffs.push_back(std::move(c));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      return polynomial(d, std::move(coeffs));
    }
    BigInt v;
    if (!detail::parse_bigint(text, v)) throw Error("malformed integer '" + std::string(text) + "'");
    return from_integer(d, v);
  }

  const RingDescriptor& descriptor() const noexcept { return descriptor_; }
  RingKind kind() const noexcept { return descriptor_.kind(); }

  bool is_zero() const {
    switch (kind()) {
      case RingKind::integers:
        return std::get<BigInt>(payload_) == 0;
      case RingKind::prime_field:
        return std::get<std::uint64_t>(payload_) == 0;
      case RingKind::polynomial:
        return std::get<Coefficients>(payload_).empty();
    }
    return false;
  }

  bool is_one() const {
    switch (kind()) {
      case RingKind::integers:
        return std::get<BigInt>(payload_) == 1;
      case RingKind::prime_field:
        return std::get<std::uint64_t>(payload_) == 1;
      case RingKind::polynomial: {
        const auto& c = std::get<Coefficients>(payload_);
        return c.size() == 1 && c[0] == 1;
      }
    }
    return false;
  }

  const BigInt& as_integer() const {
    if (kind() != RingKind::integers) throw Error("value is not an integer");
    return std::get<BigInt>(payload_);
  }

  std::uint64_t residue() const {
    if (kind() != RingKind::prime_field) throw Error("value is not a residue");
    return std::get<std::uint64_t>(payload_);
  }

  const Coefficients& coefficients() const {
    if (kind() != RingKind::polynomial) throw Error("value is not a polynomial");
    return std::get<Coefficients>(payload_);
  }

  /// Polynomial degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coefficients().size()) - 1; }

  std::string to_string() const {
    switch (kind()) {
      case RingKind::integers:
        return std::get<BigInt>(payload_).str();
      case RingKind::prime_field:
        return std::to_string(std::get<std::uint64_t>(payload_));
      case RingKind::polynomial: {
        const auto& c = std::get<Coefficients>(payload_);
        if (c.empty()) return "0";
        std::string out;
        for (std::size_t i = 0; i < c.size(); ++i) {
          if (i != 0) out += ',';
          out += c[i].str();
        }
        return out;
      }
    }
    return {};
  }

  RingValue operator-() const {
    RingValue r = *this;
    switch (kind()) {
      case RingKind::integers:
        std::get<BigInt>(r.payload_) = -std::get<BigInt>(payload_);
        break;
      case RingKind::prime_field: {
        std::uint64_t v = std::get<std::uint64_t>(payload_);
        std::get<std::uint64_t>(r.payload_) = v == 0 ? 0 : descriptor_.modulus() - v;
        break;
      }
      case RingKind::polynomial:
        for (auto& c : std::get<Coefficients>(r.payload_)) c = -c;
        break;
    }
    return r;
  }

  RingValue& operator+=(const RingValue& y) {
    require_same(y);
    switch (kind()) {
      case RingKind::integers:
        std::get<BigInt>(payload_) += std::get<BigInt>(y.payload_);
        break;
      case RingKind::prime_field: {
        std::uint64_t p = descriptor_.modulus();
        std::uint64_t s = std::get<std::uint64_t>(payload_) + std::get<std::uint64_t>(y.payload_);
        std::get<std::uint64_t>(payload_) = s >= p ? s - p : s;
        break;
      }
      case RingKind::polynomial: {
        auto& a = std::get<Coefficients>(payload_);
        const auto& b = std::get<Coefficients>(y.payload_);
        if (a.size() < b.size()) a.resize(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
        trim(a);
        break;
      }
    }
    return *this;
  }

  RingValue& operator-=(const RingValue& y) { return *this += -y; }

  RingValue& operator*=(const RingValue& y) {
    *this = *this * y;
    return *this;
  }

  friend RingValue operator+(RingValue x, const RingValue& y) { return x += y; }
  friend RingValue operator-(RingValue x, const RingValue& y) { return x -= y; }

  friend RingValue operator*(const RingValue& x, const RingValue& y) {
    x.require_same(y);
    RingValue r;
    r.descriptor_ = x.descriptor_;
    switch (x.kind()) {
      case RingKind::integers:
        r.payload_ = BigInt(std::get<BigInt>(x.payload_) * std::get<BigInt>(y.payload_));
        break;
      case RingKind::prime_field:
        r.payload_ = detail::mul_mod(std::get<std::uint64_t>(x.payload_), std::get<std::uint64_t>(y.payload_),
                                     x.descriptor_.modulus());
        break;
      case RingKind::polynomial: {
        const auto& a = std::get<Coefficients>(x.payload_);
        const auto& b = std::get<Coefficients>(y.payload_);
        Coefficients c;
        if (!a.empty() && !b.empty()) {
          c.assign(a.size() + b.size() - 1, BigInt(0));
          for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
          }
          trim(c);
        }
        r.payload_ = std::move(c);
        break;
      }
    }
    return r;
  }

  /// Equality is only defined between values of the same ring.
  friend bool operator==(const RingValue& x, const RingValue& y) {
    x.require_same(y);
    return x.payload_ == y.payload_;
  }

 private:
  static void trim(Coefficients& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  void require_same(const RingValue& y) const {
    if (!(descriptor_ == y.descriptor_)) {
      throw Error("ring descriptor mismatch: " + descriptor_.to_string() + " vs " + y.descriptor_.to_string());
    }
  }

  RingDescriptor descriptor_;
  std::variant<BigInt, std::uint64_t, Coefficients> payload_ = BigInt(0);
};

inline RingValue ring_add(const RingValue& x, const RingValue& y) { return x + y; }
inline RingValue ring_sub(const RingValue& x, const RingValue& y) { return x - y; }
inline RingValue ring_mul(const RingValue& x, const RingValue& y) { return x * y; }

/// Evaluation homomorphism R[z] -> R at z = 0.
inline RingValue poly_eval_at_zero(const RingValue& x) {
  const auto& c = x.coefficients();
  return RingValue::integer(c.empty() ? BigInt(0) : c.front());
}

/// Leading coefficient equal to 1. The constant 1 counts; the zero polynomial does not.
inline bool poly_is_monic(const RingValue& x) {
  const auto& c = x.coefficients();
  return !c.empty() && c.back() == 1;
}

}  // namespace blockdet

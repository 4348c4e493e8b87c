#pragma once

#include "blockdet/ring.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

namespace blockdet {

/// Largest degree for which S_n is ever enumerated (8! = 40320 terms).
inline constexpr std::size_t kMaxEnumerationDegree = 8;

/// A bijection of {0, ..., n-1}. Printed 1-based as the image list "[2,1,3]".
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t v : images_) {
      if (v >= images_.size() || seen[v]) throw Error("permutation images are not a bijection");
      seen[v] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<std::size_t> images(n);
    std::iota(images.begin(), images.end(), std::size_t{0});
    return Permutation(std::move(images));
  }

  /// Transposition of a and b (0-based); a == b gives the identity.
  static Permutation transposition(std::size_t n, std::size_t a, std::size_t b) {
    if (a >= n || b >= n) throw Error("transposition point out of range");
    auto images = identity(n).images_;
    std::swap(images[a], images[b]);
    return Permutation(std::move(images));
  }

  static Permutation from_one_based(const std::vector<std::size_t>& images) {
    std::vector<std::size_t> zero_based;
    zero_based.reserve(images.size());
    for (std::size_t v : images) {
      if (v == 0) throw Error("1-based permutation image cannot be 0");
      zero_based.push_back(v - 1);
    }
    return Permutation(std::move(zero_based));
  }

  std::size_t degree() const noexcept { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_.at(i); }
  const std::vector<std::size_t>& images() const noexcept { return images_; }

  /// +1 or -1, from the cycle decomposition: sgn = (-1)^(n - #cycles).
  int sign() const {
    std::vector<bool> visited(images_.size(), false);
    std::size_t cycles = 0;
    for (std::size_t start = 0; start < images_.size(); ++start) {
      if (visited[start]) continue;
      ++cycles;
      for (std::size_t i = start; !visited[i]; i = images_[i]) visited[i] = true;
    }
    return (images_.size() - cycles) % 2 == 0 ? 1 : -1;
  }

  Permutation inverse() const {
    std::vector<std::size_t> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = i;
    return Permutation(std::move(inv));
  }

  /// (this o other)(i) = this(other(i)).
  Permutation compose(const Permutation& other) const {
    if (other.degree() != degree()) throw Error("cannot compose permutations of different degree");
    std::vector<std::size_t> out(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) out[i] = images_[other.images_[i]];
    return Permutation(std::move(out));
  }

  /// Extension to degree n fixing every point >= degree().
  Permutation extended(std::size_t n) const {
    if (n < degree()) throw Error("permutation degree exceeds the requested extension");
    auto images = images_;
    for (std::size_t i = images.size(); i < n; ++i) images.push_back(i);
    return Permutation(std::move(images));
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (i != 0) out += ',';
      out += std::to_string(images_[i] + 1);
    }
    return out + "]";
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> images_;
};

/// Calls f(pi) for every pi in S_n in lexicographic order of image lists.
template <class F>
void for_each_permutation(std::size_t n, F&& f) {
  if (n > kMaxEnumerationDegree) {
    throw Error("refusing to enumerate S_" + std::to_string(n) + " (cap is " +
                std::to_string(kMaxEnumerationDegree) + ")");
  }
  std::vector<std::size_t> images(n);
  std::iota(images.begin(), images.end(), std::size_t{0});
  do {
    f(Permutation(images));
  } while (std::next_permutation(images.begin(), images.end()));
}

}  // namespace blockdet

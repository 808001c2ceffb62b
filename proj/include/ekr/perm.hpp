#pragma once

// Permutations of {0, ..., n-1} stored as image arrays.
//
// Convention: groups act on the right. The image of point i under p is
// p[i], and the product p * q applies p first and then q, so that
// i^(pq) = (i^p)^q.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ekr/errors.hpp"

namespace ekr {

using Point = std::uint16_t;

class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(std::size_t degree) {
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), Point{0});
    return Permutation(std::move(img), Unchecked{});
  }

  /// Throws ParseError unless `images` is a bijection of {0..n-1}.
  static Permutation from_images(std::vector<Point> images) {
    std::vector<bool> seen(images.size(), false);
    for (Point x : images) {
      if (x >= images.size() || seen[x]) {
        throw ParseError("image array is not a bijection");
      }
      seen[x] = true;
    }
    return Permutation(std::move(images), Unchecked{});
  }

  template <class Int>
  static Permutation from_images(std::span<const Int> images) {
    std::vector<Point> img;
    img.reserve(images.size());
    for (Int x : images) {
      if (x < 0 || static_cast<std::size_t>(x) >= images.size()) {
        throw ParseError("image out of range");
      }
      img.push_back(static_cast<Point>(x));
    }
    return from_images(std::move(img));
  }

  /// Builds a permutation from disjoint cycles given as point lists.
  static Permutation from_cycles(const std::vector<std::vector<std::size_t>>& cycles,
                                 std::size_t degree) {
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), Point{0});
    std::vector<bool> used(degree, false);
    for (const auto& cyc : cycles) {
      for (std::size_t j = 0; j < cyc.size(); ++j) {
        std::size_t x = cyc[j];
        if (x >= degree) throw ParseError("point " + std::to_string(x) + " >= degree");
        if (used[x]) throw ParseError("point " + std::to_string(x) + " repeated");
        used[x] = true;
        img[x] = static_cast<Point>(cyc[(j + 1) % cyc.size()]);
      }
    }
    return Permutation(std::move(img), Unchecked{});
  }

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](std::size_t i) const noexcept { return images_[i]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return false;
    }
    return true;
  }

  Permutation inverse() const {
    std::vector<Point> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
    return Permutation(std::move(inv), Unchecked{});
  }

  /// p^e for any integer e (negative exponents use the inverse).
  Permutation pow(long long e) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    return std::lexicographical_compare_three_way(a.images_.begin(), a.images_.end(),
                                                  b.images_.begin(), b.images_.end());
  }

 private:
  struct Unchecked {};
  Permutation(std::vector<Point> img, Unchecked) : images_(std::move(img)) {}

  friend Permutation compose(const Permutation& p, const Permutation& q);

  std::vector<Point> images_;
};

/// i -> q[p[i]]: apply p, then q.
inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) {
    throw DegreeMismatch("compose: degrees " + std::to_string(p.degree()) + " and " +
                         std::to_string(q.degree()));
  }
  std::vector<Point> img(p.degree());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = q.images_[p.images_[i]];
  return Permutation(std::move(img), Permutation::Unchecked{});
}

inline Permutation operator*(const Permutation& p, const Permutation& q) { return compose(p, q); }

inline Permutation Permutation::pow(long long e) const {
  Permutation base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1
                               : static_cast<unsigned long long>(e);
  Permutation result = identity(degree());
  while (n) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

/// g^-1 x g, the conjugate of x by g under the right action.
inline Permutation conjugate(const Permutation& x, const Permutation& g) {
  return g.inverse() * x * g;
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Point x : p.images()) {
      h ^= x;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Disjoint cycles including fixed points, each rotated to start at its
/// minimum point, sorted by that point.
inline std::vector<std::vector<Point>> cycles(const Permutation& p) {
  std::vector<std::vector<Point>> out;
  std::vector<bool> seen(p.degree(), false);
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (seen[i]) continue;
    std::vector<Point> cyc;
    for (std::size_t x = i; !seen[x]; x = p[x]) {
      seen[x] = true;
      cyc.push_back(static_cast<Point>(x));
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

/// Sorted cycle lengths, fixed points counted as 1-cycles.
inline std::vector<std::size_t> cycle_type(const Permutation& p) {
  std::vector<std::size_t> lens;
  for (const auto& c : cycles(p)) lens.push_back(c.size());
  std::sort(lens.begin(), lens.end());
  return lens;
}

inline std::uint64_t order(const Permutation& p) {
  std::uint64_t l = 1;
  for (std::size_t len : cycle_type(p)) l = std::lcm(l, static_cast<std::uint64_t>(len));
  return l;
}

inline std::vector<Point> fixed_points(const Permutation& p) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (p[i] == i) out.push_back(static_cast<Point>(i));
  }
  return out;
}

inline bool is_derangement(const Permutation& p) noexcept {
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (p[i] == i) return false;
  }
  return true;
}

/// True when p agrees with q on at least one point.
inline bool agree_somewhere(const Permutation& p, const Permutation& q) noexcept {
  for (std::size_t i = 0; i < p.degree(); ++i) {
    if (p[i] == q[i]) return true;
  }
  return false;
}

/// (m,n)-semi-regular: a product of n cycles of length m.
inline bool is_semi_regular(const Permutation& p, std::size_t m, std::size_t n) {
  if (m == 0 || m * n != p.degree()) {
    throw ShapeMismatch("is_semi_regular: " + std::to_string(m) + "*" + std::to_string(n) +
                        " != degree " + std::to_string(p.degree()));
  }
  auto ct = cycle_type(p);
  return std::all_of(ct.begin(), ct.end(), [m](std::size_t len) { return len == m; });
}

/// Disjoint-cycle notation with 0-based points; fixed points omitted,
/// identity formats as "()".
inline std::string format_cycles(const Permutation& p) {
  std::string out;
  for (const auto& c : cycles(p)) {
    if (c.size() < 2) continue;
    out += '(';
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j) out += ' ';
      out += std::to_string(c[j]);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

/// Parses "(0 1 2)(3 4)". Commas are accepted as separators; "" and "()"
/// give the identity.
inline Permutation parse_cycles(std::string_view text, std::size_t degree) {
  std::vector<std::vector<std::size_t>> cyc;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' ||
                               text[i] == '\r')) {
      ++i;
    }
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' at offset " + std::to_string(i));
    ++i;
    std::vector<std::size_t> current;
    while (true) {
      skip_ws();
      if (i >= text.size()) throw ParseError("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (text[i] < '0' || text[i] > '9') {
        throw ParseError(std::string("unexpected character '") + text[i] + "'");
      }
      std::size_t v = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        v = v * 10 + static_cast<std::size_t>(text[i] - '0');
        if (v > 0xFFFF) throw ParseError("point index too large");
        ++i;
      }
      current.push_back(v);
    }
    if (!current.empty()) cyc.push_back(std::move(current));
    skip_ws();
  }
  return Permutation::from_cycles(cyc, degree);
}

}  // namespace ekr

template <>
struct std::hash<ekr::Permutation> : ekr::PermutationHash {};

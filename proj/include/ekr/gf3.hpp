#pragma once

// Polynomials over GF(3) and the cyclic codes of length p they generate.
// A cyclic code is the ideal <g> of GF(3)[x]/(x^p - 1) for a divisor g of
// x^p - 1; its words are the coefficient vectors of the multiples of g.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "ekr/errors.hpp"

namespace ekr {

/// Coefficients low degree first, no trailing zeros (zero polynomial is empty).
class Poly3 {
 public:
  Poly3() = default;
  explicit Poly3(std::vector<int> c) : c_(std::move(c)) {
    for (auto& x : c_) x = ((x % 3) + 3) % 3;
    trim();
  }
  static Poly3 monomial(std::size_t deg, int coeff = 1) {
    std::vector<int> c(deg + 1, 0);
    c[deg] = coeff;
    return Poly3(std::move(c));
  }

  bool is_zero() const noexcept { return c_.empty(); }
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  int operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  const std::vector<int>& coeffs() const noexcept { return c_; }
  int lead() const { return c_.back(); }

  friend Poly3 operator+(const Poly3& a, const Poly3& b) {
    std::vector<int> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a[i] + b[i]) % 3;
    return Poly3(std::move(c));
  }
  friend Poly3 operator-(const Poly3& a, const Poly3& b) {
    std::vector<int> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a[i] - b[i] + 3) % 3;
    return Poly3(std::move(c));
  }
  friend Poly3 operator*(const Poly3& a, const Poly3& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<int> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = (c[i + j] + a.c_[i] * b.c_[j]) % 3;
    return Poly3(std::move(c));
  }
  Poly3 scaled(int s) const {
    std::vector<int> c = c_;
    for (auto& x : c) x = (x * s) % 3;
    return Poly3(std::move(c));
  }

  friend bool operator==(const Poly3&, const Poly3&) = default;
  friend bool operator<(const Poly3& a, const Poly3& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<int> c_;
};

/// Quotient and remainder; b must be nonzero.
inline std::pair<Poly3, Poly3> divmod(const Poly3& a, const Poly3& b) {
  if (b.is_zero()) throw BadParams("polynomial division by zero");
  std::vector<int> r = a.coeffs();
  long db = b.degree();
  int inv_lead = b.lead();  // 1 and 2 are their own inverses mod 3
  if (a.degree() < db) return {Poly3{}, a};
  std::vector<int> q(static_cast<std::size_t>(a.degree() - db + 1), 0);
  for (long i = a.degree(); i >= db; --i) {
    int coef = (r[static_cast<std::size_t>(i)] * inv_lead) % 3;
    if (!coef) continue;
    q[static_cast<std::size_t>(i - db)] = coef;
    for (long j = 0; j <= db; ++j) {
      auto k = static_cast<std::size_t>(i - db + j);
      r[k] = ((r[k] - coef * b[static_cast<std::size_t>(j)]) % 3 + 3) % 3;
    }
  }
  return {Poly3(std::move(q)), Poly3(std::move(r))};
}

inline Poly3 operator%(const Poly3& a, const Poly3& b) { return divmod(a, b).second; }

inline Poly3 monic(const Poly3& a) { return a.is_zero() ? a : a.scaled(a.lead()); }

inline Poly3 gcd(Poly3 a, Poly3 b) {
  while (!b.is_zero()) {
    Poly3 r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline Poly3 powmod(Poly3 base, std::uint64_t e, const Poly3& mod) {
  Poly3 result({1});
  base = base % mod;
  while (e) {
    if (e & 1) result = (result * base) % mod;
    base = (base * base) % mod;
    e >>= 1;
  }
  return result;
}

/// x^p - 1.
inline Poly3 x_pow_minus_one(std::size_t p) { return Poly3::monomial(p) - Poly3({1}); }

inline bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Multiplicative order of a modulo p (gcd(a,p) = 1).
inline std::size_t mult_order(std::size_t a, std::size_t p) {
  a %= p;
  std::size_t k = 1, x = a;
  while (x != 1) {
    x = x * a % p;
    ++k;
    if (k > p) throw BadParams("element is not a unit");
  }
  return k;
}

/// Monic irreducible factors of x^p - 1 over GF(3), p a prime other than 3,
/// sorted by degree then coefficients. Every factor of Phi_p has degree
/// ord_p(3); they are split apart by Cantor-Zassenhaus.
inline std::vector<Poly3> factor_x_p_minus_1(std::size_t p) {
  if (!is_prime(p) || p == 3) throw BadParams("factor_x_p_minus_1 needs a prime other than 3");
  std::size_t k = mult_order(3, p);
  std::uint64_t q_k = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (q_k > (UINT64_MAX / 3)) throw TooLarge("extension degree too large");
    q_k *= 3;
  }
  std::vector<int> phi(p, 1);
  std::vector<Poly3> done{Poly3({2, 1})};  // x - 1
  std::vector<Poly3> work{Poly3(phi)};
  std::mt19937_64 rng(p);
  std::uniform_int_distribution<int> coef(0, 2);
  while (!work.empty()) {
    Poly3 f = work.back();
    work.pop_back();
    if (static_cast<std::size_t>(f.degree()) == k) {
      done.push_back(monic(f));
      continue;
    }
    while (true) {
      std::vector<int> c(static_cast<std::size_t>(f.degree()));
      for (auto& x : c) x = coef(rng);
      Poly3 a(c);
      if (a.degree() < 1) continue;
      Poly3 h = powmod(a, (q_k - 1) / 2, f) - Poly3({1});
      Poly3 d = gcd(f, h);
      if (d.degree() > 0 && d.degree() < f.degree()) {
        work.push_back(d);
        work.push_back(monic(divmod(f, d).first));
        break;
      }
    }
  }
  std::sort(done.begin(), done.end());
  return done;
}

// ---------------------------------------------------------------------------
// Cyclic codes

using Word = std::vector<int>;  // length p, entries in {0,1,2}

class CyclicCode {
 public:
  CyclicCode(std::size_t p, Poly3 generator) : p_(p), g_(monic(std::move(generator))) {
    if ((x_pow_minus_one(p) % g_).degree() >= 0) throw BadParams("generator does not divide x^p - 1");
  }

  std::size_t length() const noexcept { return p_; }
  const Poly3& generator() const noexcept { return g_; }
  std::size_t dimension() const noexcept { return p_ - static_cast<std::size_t>(g_.degree()); }

  /// Rows x^i g(x), i < dimension.
  std::vector<Word> basis() const {
    std::vector<Word> rows;
    for (std::size_t i = 0; i < dimension(); ++i) {
      Word w(p_, 0);
      for (std::size_t j = 0; j <= static_cast<std::size_t>(g_.degree()); ++j) w[(i + j) % p_] = g_[j];
      rows.push_back(std::move(w));
    }
    return rows;
  }

  bool contains(const Word& w) const {
    if (w.size() != p_) return false;
    return (Poly3(w) % g_).is_zero();
  }

  /// Visits every codeword (including zero) until `f` returns false.
  template <class F>
  void for_each_word(F&& f, std::size_t max_dimension = 16) const {
    std::size_t k = dimension();
    if (k > max_dimension) throw TooLarge("code dimension too large to enumerate");
    auto rows = basis();
    std::vector<int> digits(k, 0);
    Word w(p_, 0);
    if (!f(w)) return;
    // Base-3 counter; each step adds one row to the running word.
    while (true) {
      std::size_t i = 0;
      while (i < k && digits[i] == 2) {
        digits[i] = 0;
        for (std::size_t j = 0; j < p_; ++j) w[j] = (w[j] + rows[i][j]) % 3;  // 2 -> 0 adds one more copy
        ++i;
      }
      if (i == k) return;
      ++digits[i];
      for (std::size_t j = 0; j < p_; ++j) w[j] = (w[j] + rows[i][j]) % 3;
      if (!f(w)) return;
    }
  }

  std::vector<Word> codewords(std::size_t max_dimension = 12) const {
    std::vector<Word> out;
    for_each_word([&](const Word& w) {
      out.push_back(w);
      return true;
    }, max_dimension);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// The dual code, generated by the reciprocal of (x^p - 1)/g.
  CyclicCode dual() const {
    auto h = divmod(x_pow_minus_one(p_), g_).first.coeffs();
    std::reverse(h.begin(), h.end());
    return CyclicCode(p_, Poly3(h));
  }

  /// Every nonzero word has a zero coordinate. Small codes are enumerated;
  /// otherwise the full-weight words are counted from the dual by the
  /// MacWilliams identity, A_p = |D|^-1 sum_{w in D} (-1)^wt(w) 2^(p - wt(w)).
  bool derangement_free(std::size_t max_dimension = 14) const {
    if (dimension() <= max_dimension || p_ - dimension() > max_dimension) {
      bool ok = true;
      for_each_word([&](const Word& w) {
        ok = std::any_of(w.begin(), w.end(), [](int x) { return x == 0; });
        return ok;
      }, max_dimension);
      return ok;
    }
    if (p_ > 100) throw TooLarge("code length too large for the weight count");
    __int128 sum = 0;
    dual().for_each_word([&](const Word& w) {
      auto wt = static_cast<std::size_t>(std::count_if(w.begin(), w.end(), [](int x) { return x != 0; }));
      __int128 term = static_cast<__int128>(1) << (p_ - wt);
      sum += wt % 2 ? -term : term;
      return true;
    }, max_dimension);
    return sum == 0;
  }

  /// Invariant under the coordinate map i -> t i (mod p).
  bool multiplier_invariant(std::size_t t) const {
    std::vector<int> c(p_, 0);
    for (std::size_t i = 0; i <= static_cast<std::size_t>(g_.degree()); ++i) {
      std::size_t j = (i * t) % p_;
      c[j] = (c[j] + g_[i]) % 3;
    }
    return contains(c);
  }

 private:
  std::size_t p_;
  Poly3 g_;
};

/// The code generated (as a shift-invariant space) by the given words: the
/// generator is gcd(x^p - 1, w_1(x), w_2(x), ...).
inline CyclicCode code_from_words(std::size_t p, const std::vector<Word>& words) {
  Poly3 g = x_pow_minus_one(p);
  for (const auto& w : words) {
    if (w.size() != p) throw BadParams("codeword length differs from p");
    for (int x : w)
      if (x < 0 || x > 2) throw BadParams("codeword entries must be 0, 1 or 2");
    g = gcd(g, Poly3(w));
  }
  return CyclicCode(p, g);
}

/// All cyclic codes of length p except {0} and the whole space, by
/// dimension then generator.
inline std::vector<CyclicCode> cyclic_codes(std::size_t p) {
  auto factors = factor_x_p_minus_1(p);
  std::size_t f = factors.size();
  if (f > 20) throw TooLarge("too many irreducible factors");
  std::vector<CyclicCode> out;
  for (std::uint32_t mask = 1; mask + 1 < (1u << f); ++mask) {
    Poly3 g({1});
    for (std::size_t i = 0; i < f; ++i)
      if (mask >> i & 1) g = g * factors[i];
    out.emplace_back(p, g);
  }
  std::sort(out.begin(), out.end(), [](const CyclicCode& a, const CyclicCode& b) {
    if (a.dimension() != b.dimension()) return a.dimension() < b.dimension();
    return a.generator() < b.generator();
  });
  return out;
}

}  // namespace ekr

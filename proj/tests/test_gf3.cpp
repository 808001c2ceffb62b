#include <gtest/gtest.h>

#include <random>

#include "ekr/gf3.hpp"

using namespace ekr;

namespace {

Poly3 random_poly(std::size_t deg, std::mt19937& rng) {
  std::vector<int> c(deg + 1);
  for (auto& x : c) x = static_cast<int>(rng() % 3);
  return Poly3(c);
}

bool brute_derangement_free(const CyclicCode& c) {
  for (const auto& w : c.codewords(16)) {
    if (std::all_of(w.begin(), w.end(), [](int x) { return x == 0; })) continue;
    if (std::none_of(w.begin(), w.end(), [](int x) { return x == 0; })) return false;
  }
  return true;
}

}  // namespace

TEST(Gf3, PolynomialArithmetic) {
  Poly3 x({0, 1}), one({1});
  EXPECT_EQ((x + one) * (x - one), Poly3({2, 0, 1}));  // x^2 - 1
  EXPECT_EQ(Poly3({1, 1}) + Poly3({2, 2}), Poly3());
  EXPECT_TRUE(Poly3({0, 0}).is_zero());
  EXPECT_EQ(monic(Poly3({1, 2})), Poly3({2, 1}));
  EXPECT_EQ(gcd(x_pow_minus_one(4), Poly3({2, 0, 1})), Poly3({2, 0, 1}));
  EXPECT_EQ(powmod(x, 5, x_pow_minus_one(5)), one);
  std::mt19937 rng(4);
  for (int i = 0; i < 200; ++i) {
    auto a = random_poly(rng() % 9, rng);
    auto b = random_poly(1 + rng() % 5, rng);
    if (b.is_zero()) continue;
    auto [q, r] = divmod(a, b);
    EXPECT_EQ(q * b + r, a);
    EXPECT_LT(r.degree(), b.degree());
  }
}

TEST(Gf3, NumberTheory) {
  EXPECT_TRUE(is_prime(13));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(21));
  EXPECT_EQ(mult_order(3, 13), 3u);
  EXPECT_EQ(mult_order(3, 11), 5u);
  EXPECT_EQ(mult_order(3, 7), 6u);
}

TEST(Gf3, FactorizationMultipliesBack) {
  for (std::size_t p : {2, 5, 7, 11, 13, 23, 41}) {
    auto fs = factor_x_p_minus_1(p);
    Poly3 prod({1});
    for (const auto& f : fs) {
      prod = prod * f;
      EXPECT_EQ(f.lead(), 1);
      // Irreducible factors of x^p - 1 are pairwise distinct and have
      // degree 1 or ord_p(3).
      EXPECT_TRUE(f.degree() == 1 || static_cast<std::size_t>(f.degree()) == mult_order(3, p)) << p;
    }
    EXPECT_EQ(prod, x_pow_minus_one(p)) << p;
    EXPECT_EQ(fs.size(), 1 + (p - 1) / mult_order(3, p));
  }
  EXPECT_THROW(factor_x_p_minus_1(9), BadParams);
  EXPECT_THROW(factor_x_p_minus_1(3), BadParams);
}

TEST(Gf3, CyclicCodeBasics) {
  // Sum-zero code of length 5: generated by x - 1.
  CyclicCode c(5, Poly3({2, 1}));
  EXPECT_EQ(c.dimension(), 4u);
  EXPECT_EQ(c.codewords().size(), 81u);
  EXPECT_TRUE(c.contains({1, 2, 0, 0, 0}));
  EXPECT_FALSE(c.contains({1, 0, 0, 0, 0}));
  // (1,1,1,1,2) sums to 0 mod 3 and has no zero entry.
  EXPECT_TRUE(c.contains({1, 1, 1, 1, 2}));
  EXPECT_FALSE(c.derangement_free());
  EXPECT_THROW(CyclicCode(5, Poly3({1, 1})), BadParams);
  EXPECT_EQ(c.dual().dimension(), 1u);
  EXPECT_TRUE(c.multiplier_invariant(2));
}

TEST(Gf3, CodesAreShiftInvariant) {
  for (const auto& c : cyclic_codes(11)) {
    for (const auto& w : c.basis()) {
      Word s(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) s[(i + 1) % w.size()] = w[i];
      EXPECT_TRUE(c.contains(s));
    }
    EXPECT_EQ(code_from_words(11, c.basis()).generator(), c.generator());
  }
}

TEST(Gf3, CodeCounts) {
  // 2^(number of factors) minus the trivial and whole codes.
  EXPECT_EQ(cyclic_codes(11).size(), 6u);
  EXPECT_EQ(cyclic_codes(13).size(), 30u);
  EXPECT_EQ(cyclic_codes(5).size(), 2u);
}

TEST(Gf3, DerangementFreeAgreesWithEnumeration) {
  for (std::size_t p : {5, 7, 11, 13}) {
    for (const auto& c : cyclic_codes(p)) {
      bool brute = brute_derangement_free(c);
      EXPECT_EQ(c.derangement_free(), brute) << p;
      // Force the weight-count path whenever the dual is small enough.
      std::size_t k = c.dimension();
      if (k > 1 && p - k < k) EXPECT_EQ(c.derangement_free(k - 1), brute) << p << " dim " << k;
    }
  }
}

TEST(Gf3, MultiplierInvariance) {
  for (const auto& c : cyclic_codes(13)) {
    for (std::size_t t = 1; t < 13; ++t) {
      // Oracle: map every basis word through i -> t i and test membership.
      bool all = true;
      for (const auto& w : c.basis()) {
        Word m(13, 0);
        for (std::size_t i = 0; i < 13; ++i) m[(i * t) % 13] = w[i];
        all = all && c.contains(m);
      }
      EXPECT_EQ(c.multiplier_invariant(t), all) << "t = " << t;
    }
  }
}

TEST(Gf3, CodeFromWordsValidates) {
  EXPECT_THROW(code_from_words(5, {{1, 2, 0}}), BadParams);
  EXPECT_THROW(code_from_words(5, {{1, 3, 0, 0, 0}}), BadParams);
  EXPECT_EQ(code_from_words(5, {{1, 2, 0, 0, 0}}).dimension(), 4u);
}

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "ekr/gamma.hpp"
#include "ekr/solver.hpp"

using namespace ekr;

namespace {

GammaParams params(std::size_t m, std::size_t n, std::size_t k, std::size_t r) {
  GammaParams p;
  p.m = m;
  p.n_blocks = n;
  p.k = k;
  p.r = r;
  return p;
}

std::vector<std::size_t> random_perm(std::size_t k, std::mt19937& rng) {
  std::vector<std::size_t> v(k);
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

void randomize_sigma(GammaParams& p, std::mt19937& rng) {
  p.sigma.clear();
  for (std::size_t c = 1; c <= p.n_blocks; ++c)
    for (std::size_t c2 = c + 1; c2 <= p.n_blocks; ++c2)
      for (std::size_t b = 1; b <= p.m; ++b)
        for (std::size_t b2 = 1; b2 <= p.m; ++b2) p.sigma[{b, b2, c, c2}] = random_perm(p.k, rng);
}

// Edge count from the definition: same-c pairs with different b, plus
// cross-layer pairs whose parts are not matched. With identity sigma every
// a sees all a2 in other parts.
std::size_t edge_count_oracle(const GammaParams& p) {
  std::size_t same = p.n_blocks * (p.m * (p.m - 1) / 2) * p.r * p.r;
  std::size_t pairs_c = p.n_blocks * (p.n_blocks - 1) / 2;
  std::size_t cross = pairs_c * p.m * p.m * p.r * (p.r - p.r / p.k);
  return same + cross;
}

}  // namespace

TEST(Gamma, OracleGrid) {
  for (std::size_t m : {2, 3})
    for (std::size_t n : {2, 3})
      for (std::size_t k : {1, 2, 3})
        for (std::size_t r : {k, 2 * k, 3 * k}) {
          auto p = params(m, n, k, r);
          auto g = build_gamma(p);
          EXPECT_EQ(g.vertex_count(), m * n * r);
          EXPECT_EQ(g.edge_count(), edge_count_oracle(p));
          EXPECT_TRUE(g.is_regular());
          auto a = max_coclique(g);
          ASSERT_TRUE(a.proven_optimal);
          EXPECT_EQ(a.size, std::max(r, n * r / k)) << m << "," << n << "," << k << "," << r;
          EXPECT_EQ(a.size, gamma_alpha_formula(p));
          if (k == r) {
            EXPECT_EQ(a.size, std::max(k, n));
          }
        }
}

TEST(Gamma, BadParams) {
  EXPECT_THROW(build_gamma(params(3, 2, 2, 3)), BadParams);
  EXPECT_THROW(build_gamma(params(1, 2, 1, 1)), BadParams);
  EXPECT_THROW(build_gamma(params(2, 2, 0, 1)), BadParams);
  auto p = params(2, 2, 2, 2);
  p.sigma[{1, 1, 2, 1}] = {1, 0};
  EXPECT_THROW(build_gamma(p), BadParams);
  p.sigma.clear();
  p.sigma[{1, 1, 1, 2}] = {0, 0};
  EXPECT_THROW(build_gamma(p), BadParams);
  p.sigma.clear();
  p.partition = {0, 0};
  EXPECT_THROW(build_gamma(p), BadParams);
}

TEST(Gamma, FibersAreCocliques) {
  auto p = params(3, 2, 3, 6);
  auto g = build_gamma(p);
  for (std::size_t b = 1; b <= p.m; ++b)
    for (std::size_t c = 1; c <= p.n_blocks; ++c) {
      auto f = fiber(p, b, c);
      EXPECT_EQ(f.vertices.size(), p.r);
      EXPECT_TRUE(g.is_coclique(f.vertices));
    }
  EXPECT_THROW(fiber(p, 4, 1), BadFiber);
}

TEST(Gamma, FiberStructureExamples) {
  auto p = params(3, 2, 3, 6);
  auto g = build_gamma(p);
  EXPECT_EQ(g.vertex_count(), 36u);  // r * m * n
  EXPECT_EQ(fiber_structure(g, p, fiber(p, 1, 1), fiber(p, 2, 1)), FiberStructure::CompleteBipartite);
  EXPECT_EQ(fiber_structure(g, p, fiber(p, 1, 1), fiber(p, 1, 2)), FiberStructure::MatchingRemovedLex);
  EXPECT_THROW(fiber_structure(g, p, fiber(p, 1, 1), fiber(p, 1, 1)), BadFiber);
  Fiber bogus{1, 1, {0, 1, 2, 3, 4, 6}};
  EXPECT_THROW(fiber_structure(g, p, bogus, fiber(p, 1, 2)), BadFiber);
  // The k = 3, r = 3 case is K_{3,3} minus a perfect matching between layers.
  auto q = params(3, 2, 3, 3);
  auto h = build_gamma(q);
  auto f1 = fiber(q, 1, 1), f2 = fiber(q, 1, 2);
  std::size_t edges = 0;
  for (auto u : f1.vertices)
    for (auto v : f2.vertices) edges += h.has_edge(u, v);
  EXPECT_EQ(edges, 6u);
  EXPECT_EQ(fiber_structure(h, q, f1, f2), FiberStructure::MatchingRemovedLex);
}

TEST(Gamma, AllFiberPairsClassified) {
  auto p = params(3, 3, 3, 6);
  auto g = build_gamma(p);
  for (std::size_t b = 1; b <= p.m; ++b)
    for (std::size_t c = 1; c <= p.n_blocks; ++c)
      for (std::size_t b2 = 1; b2 <= p.m; ++b2)
        for (std::size_t c2 = 1; c2 <= p.n_blocks; ++c2) {
          if (b == b2 && c == c2) continue;
          auto s = fiber_structure(g, p, fiber(p, b, c), fiber(p, b2, c2));
          EXPECT_EQ(s, c == c2 ? FiberStructure::CompleteBipartite : FiberStructure::MatchingRemovedLex);
        }
}

TEST(Gamma, LexicographicProduct) {
  auto x = build_gamma(params(3, 2, 3, 3));
  EXPECT_EQ(lexicographic_product(x, empty_graph(1)), x);
  auto k2 = complete_graph(2);
  auto kbar3 = empty_graph(3);
  auto k33 = lexicographic_product(k2, kbar3);
  EXPECT_EQ(k33.edge_count(), 9u);
  EXPECT_EQ(max_coclique(k33).size, 3u);
  auto blown = lexicographic_product(x, empty_graph(2));
  EXPECT_EQ(max_coclique(blown).size, max_coclique(x).size * 2);
}

TEST(Gamma, Isomorphism) {
  Graph c5(5), c5b(5);
  for (std::size_t i = 0; i < 5; ++i) {
    c5.add_edge(i, (i + 1) % 5);
    c5b.add_edge(i, (i + 2) % 5);
  }
  EXPECT_TRUE(isomorphic_small(c5, c5b));
  Graph path(3);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  EXPECT_FALSE(isomorphic_small(complete_graph(3), path));
  auto big = build_gamma(params(3, 2, 3, 6));
  auto small = build_gamma(params(3, 2, 3, 3));
  EXPECT_TRUE(isomorphic_small(big, lexicographic_product(small, empty_graph(2))));
  EXPECT_FALSE(isomorphic_small(big, lexicographic_product(small, complete_graph(2))));
  EXPECT_THROW(isomorphic_small(empty_graph(300), empty_graph(300)), TooLarge);
}

TEST(GammaProperty, SigmaInvariance) {
  std::mt19937 rng(31);
  auto p = params(3, 2, 3, 6);
  for (int i = 0; i < 20; ++i) {
    randomize_sigma(p, rng);
    auto g = build_gamma(p);
    EXPECT_EQ(max_coclique(g).size, 6u);
    EXPECT_EQ(g.edge_count(), edge_count_oracle(p));
  }
}

TEST(GammaProperty, PartitionIndependence) {
  std::mt19937 rng(12);
  auto base = params(2, 2, 2, 4);
  auto g0 = build_gamma(base);
  for (int i = 0; i < 5; ++i) {
    auto p = base;
    p.partition = {0, 0, 1, 1};
    std::shuffle(p.partition.begin(), p.partition.end(), rng);
    auto g = build_gamma(p);
    EXPECT_TRUE(isomorphic_small(g0, g));
    EXPECT_EQ(max_coclique(g).size, gamma_alpha_formula(p));
  }
}

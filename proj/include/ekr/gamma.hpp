#pragma once

// The three-coordinate graphs Gamma^{k,Sigma}_{m,n}(r): vertices (a,b,c)
// with a in [r], b in [m], c in [n] (1-based in the parameters, 0-based in
// vertex indices). [r] is split into k equal parts.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

#include "ekr/errors.hpp"
#include "ekr/graph.hpp"

namespace ekr {

struct GammaParams {
  std::size_t m = 2;        // range of b
  std::size_t n_blocks = 2; // range of c
  std::size_t k = 1;        // number of parts of [r]
  std::size_t r = 1;
  /// sigma[(b, b2, c, c2)] for c < c2, 1-based keys, a permutation of
  /// {0..k-1}. Missing entries are the identity.
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, std::vector<std::size_t>> sigma;
  /// part_of[a-1] in {0..k-1}; empty means contiguous parts.
  std::vector<std::size_t> partition;

  std::size_t vertex_count() const { return m * n_blocks * r; }
  std::size_t index(std::size_t a, std::size_t b, std::size_t c) const {
    return ((c - 1) * m + (b - 1)) * r + (a - 1);
  }
  std::size_t part(std::size_t a) const {
    return partition.empty() ? (a - 1) / (r / k) : partition[a - 1];
  }
};

struct Fiber {
  std::size_t b = 1, c = 1;
  std::vector<std::size_t> vertices;
};

inline void validate(const GammaParams& p) {
  if (p.m < 2 || p.n_blocks < 2) throw BadParams("gamma: m and n must be at least 2");
  if (p.k == 0 || p.r == 0) throw BadParams("gamma: k and r must be positive");
  if (p.r % p.k != 0) throw BadParams("gamma: k must divide r");
  for (const auto& [key, perm] : p.sigma) {
    auto [b, b2, c, c2] = key;
    if (b < 1 || b > p.m || b2 < 1 || b2 > p.m || c < 1 || c > p.n_blocks || c2 < 1 || c2 > p.n_blocks) {
      throw BadParams("gamma: sigma key out of range");
    }
    if (c >= c2) throw BadParams("gamma: sigma keys need c < c2");
    if (perm.size() != p.k) throw BadParams("gamma: sigma value must permute k parts");
    std::vector<bool> seen(p.k, false);
    for (std::size_t x : perm) {
      if (x >= p.k || seen[x]) throw BadParams("gamma: sigma value is not a bijection");
      seen[x] = true;
    }
  }
  if (!p.partition.empty()) {
    if (p.partition.size() != p.r) throw BadParams("gamma: partition must label every a");
    std::vector<std::size_t> sizes(p.k, 0);
    for (std::size_t x : p.partition) {
      if (x >= p.k) throw BadParams("gamma: partition label out of range");
      ++sizes[x];
    }
    for (std::size_t s : sizes) {
      if (s != p.r / p.k) throw BadParams("gamma: partition is not uniform");
    }
  }
}

/// The edge rule between (a,b,c) and (a2,b2,c2) for c < c2.
inline bool gamma_cross_edge(const GammaParams& p, std::size_t a, std::size_t b, std::size_t c, std::size_t a2,
                             std::size_t b2, std::size_t c2) {
  std::size_t i = p.part(a), j = p.part(a2);
  auto it = p.sigma.find({b, b2, c, c2});
  std::size_t si = it == p.sigma.end() ? i : it->second[i];
  return si != j;
}

inline Graph build_gamma(const GammaParams& p) {
  validate(p);
  Graph g(p.vertex_count());
  for (std::size_t c = 1; c <= p.n_blocks; ++c) {
    for (std::size_t b = 1; b <= p.m; ++b) {
      for (std::size_t a = 1; a <= p.r; ++a) {
        std::size_t u = p.index(a, b, c);
        // same layer, different b
        for (std::size_t b2 = b + 1; b2 <= p.m; ++b2)
          for (std::size_t a2 = 1; a2 <= p.r; ++a2) g.add_edge(u, p.index(a2, b2, c));
        // later layers
        for (std::size_t c2 = c + 1; c2 <= p.n_blocks; ++c2)
          for (std::size_t b2 = 1; b2 <= p.m; ++b2)
            for (std::size_t a2 = 1; a2 <= p.r; ++a2)
              if (gamma_cross_edge(p, a, b, c, a2, b2, c2)) g.add_edge(u, p.index(a2, b2, c2));
      }
    }
  }
  g.labels.resize(g.vertex_count());
  for (std::size_t c = 1; c <= p.n_blocks; ++c)
    for (std::size_t b = 1; b <= p.m; ++b)
      for (std::size_t a = 1; a <= p.r; ++a)
        g.labels[p.index(a, b, c)] =
            "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
  return g;
}

/// max{r, n r / k}.
inline std::size_t gamma_alpha_formula(const GammaParams& p) {
  validate(p);
  return std::max(p.r, p.n_blocks * p.r / p.k);
}

inline Fiber fiber(const GammaParams& p, std::size_t b, std::size_t c) {
  if (b < 1 || b > p.m || c < 1 || c > p.n_blocks) throw BadFiber("fiber index out of range");
  Fiber f{b, c, {}};
  for (std::size_t a = 1; a <= p.r; ++a) f.vertices.push_back(p.index(a, b, c));
  return f;
}

/// X[Y]: (u,v) ~ (u2,v2) iff u ~ u2 in X, or u = u2 and v ~ v2 in Y.
inline Graph lexicographic_product(const Graph& x, const Graph& y) {
  std::size_t ny = y.vertex_count();
  Graph g(x.vertex_count() * ny);
  for (std::size_t u = 0; u < x.vertex_count(); ++u) {
    for (std::size_t v = 0; v < ny; ++v) {
      std::size_t s = u * ny + v;
      for (std::size_t v2 = v + 1; v2 < ny; ++v2)
        if (y.has_edge(v, v2)) g.add_edge(s, u * ny + v2);
      for (std::size_t u2 = u + 1; u2 < x.vertex_count(); ++u2)
        if (x.has_edge(u, u2))
          for (std::size_t v2 = 0; v2 < ny; ++v2) g.add_edge(s, u2 * ny + v2);
    }
  }
  return g;
}

enum class FiberStructure { Empty, CompleteBipartite, MatchingRemovedLex, Other };

inline const char* to_string(FiberStructure f) {
  switch (f) {
    case FiberStructure::Empty: return "Empty";
    case FiberStructure::CompleteBipartite: return "CompleteBipartite";
    case FiberStructure::MatchingRemovedLex: return "MatchingRemovedLex";
    case FiberStructure::Other: return "Other";
  }
  return "Other";
}

/// Classifies the bipartite graph between two equal-size cocliques A and B.
/// MatchingRemovedLex means: each side splits into k groups of |A|/k twins
/// (same neighbourhood across), and every group sees all groups on the
/// other side except exactly one partner group.
inline FiberStructure classify_between(const Graph& g, const std::vector<std::size_t>& a,
                                       const std::vector<std::size_t>& b, std::size_t k) {
  if (a.size() != b.size()) return FiberStructure::Other;
  std::size_t r = a.size(), edges = 0;
  for (auto u : a)
    for (auto v : b) edges += g.has_edge(u, v);
  if (edges == 0) return FiberStructure::Empty;
  if (edges == r * r) return FiberStructure::CompleteBipartite;
  if (k < 2 || r % k != 0) return FiberStructure::Other;

  auto non_nbrs = [&](std::size_t u, const std::vector<std::size_t>& other) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < other.size(); ++j)
      if (!g.has_edge(u, other[j])) out.push_back(j);
    return out;
  };
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> groups_a, groups_b;
  for (std::size_t i = 0; i < r; ++i) {
    groups_a[non_nbrs(a[i], b)].push_back(i);
    groups_b[non_nbrs(b[i], a)].push_back(i);
  }
  if (groups_a.size() != k || groups_b.size() != k) return FiberStructure::Other;
  for (const auto* gr : {&groups_a, &groups_b}) {
    const auto& other = gr == &groups_a ? groups_b : groups_a;
    for (const auto& [miss, members] : *gr) {
      if (members.size() != r / k) return FiberStructure::Other;
      bool is_group = std::any_of(other.begin(), other.end(), [&](const auto& kv) { return kv.second == miss; });
      if (!is_group) return FiberStructure::Other;
    }
  }
  return FiberStructure::MatchingRemovedLex;
}

inline FiberStructure fiber_structure(const Graph& g, const GammaParams& p, const Fiber& f1, const Fiber& f2) {
  if (g.vertex_count() != p.vertex_count()) throw BadFiber("graph does not match the parameters");
  for (const Fiber* f : {&f1, &f2}) {
    if (fiber(p, f->b, f->c).vertices != f->vertices) throw BadFiber("fiber is not a fiber of this graph");
    if (!g.is_coclique(f->vertices)) throw BadFiber("fiber is not a coclique");
  }
  if (f1.b == f2.b && f1.c == f2.c) throw BadFiber("the two fibers coincide");
  return classify_between(g, f1.vertices, f2.vertices, p.k);
}

// ---------------------------------------------------------------------------
// Small-graph isomorphism: colour refinement plus individualisation.

namespace detail {

// Joint refinement of two graphs so that colour names are comparable.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> refine_pair(const Graph& x, const Graph& y,
                                                                                 std::vector<std::size_t> cx,
                                                                                 std::vector<std::size_t> cy) {
  std::size_t n = x.vertex_count();
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    auto sig = [&](const Graph& g, const std::vector<std::size_t>& col, std::size_t v) {
      std::vector<std::size_t> s{col[v]};
      std::vector<std::size_t> nb;
      const Bitset& row = g.neighbors(v);
      for (std::size_t u = row.first(); u != Bitset::npos; u = row.next(u + 1)) nb.push_back(col[u]);
      std::sort(nb.begin(), nb.end());
      s.insert(s.end(), nb.begin(), nb.end());
      return s;
    };
    std::vector<std::vector<std::size_t>> sx(n), sy(n);
    for (std::size_t v = 0; v < n; ++v) {
      sx[v] = sig(x, cx, v);
      sy[v] = sig(y, cy, v);
      ids.emplace(sx[v], 0);
      ids.emplace(sy[v], 0);
    }
    std::size_t next = 0;
    for (auto& [s, id] : ids) id = next++;
    std::vector<std::size_t> nx(n), ny(n);
    for (std::size_t v = 0; v < n; ++v) {
      nx[v] = ids[sx[v]];
      ny[v] = ids[sy[v]];
    }
    std::size_t before = std::set<std::size_t>(cx.begin(), cx.end()).size();
    std::size_t after = std::set<std::size_t>(nx.begin(), nx.end()).size();
    cx = std::move(nx);
    cy = std::move(ny);
    if (after == before) return {cx, cy};
  }
}

inline bool same_histogram(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  auto sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sa == sb;
}

inline bool iso_search(const Graph& x, const Graph& y, std::vector<std::size_t> cx, std::vector<std::size_t> cy,
                       std::size_t& budget) {
  std::tie(cx, cy) = refine_pair(x, y, std::move(cx), std::move(cy));
  if (!same_histogram(cx, cy)) return false;
  std::size_t n = x.vertex_count();
  // Discrete: check the induced bijection.
  std::size_t classes = std::set<std::size_t>(cx.begin(), cx.end()).size();
  if (classes == n) {
    std::vector<std::size_t> inv(n);
    for (std::size_t v = 0; v < n; ++v) inv[cy[v]] = v;
    for (auto [u, v] : x.edges())
      if (!y.has_edge(inv[cx[u]], inv[cx[v]])) return false;
    return x.edge_count() == y.edge_count();
  }
  // Individualise a vertex of the smallest non-singleton class.
  std::map<std::size_t, std::size_t> size;
  for (auto c : cx) ++size[c];
  std::size_t target = 0, best = n + 1;
  for (auto [c, s] : size)
    if (s > 1 && s < best) {
      best = s;
      target = c;
    }
  std::size_t fresh = n + 1 + *std::max_element(cx.begin(), cx.end());
  std::size_t vx = 0;
  while (cx[vx] != target) ++vx;
  auto nx = cx;
  nx[vx] = fresh;
  for (std::size_t vy = 0; vy < n; ++vy) {
    if (cy[vy] != target) continue;
    if (budget == 0) throw TooLarge("isomorphism search exceeded its backtracking budget");
    --budget;
    auto ny = cy;
    ny[vy] = fresh;
    if (iso_search(x, y, nx, ny, budget)) return true;
  }
  return false;
}

}  // namespace detail

inline constexpr std::size_t kIsoDefaultCap = 256;

/// Exact isomorphism test for graphs of at most `cap` vertices.
inline bool isomorphic_small(const Graph& x, const Graph& y, std::size_t cap = kIsoDefaultCap) {
  if (x.vertex_count() > cap || y.vertex_count() > cap) throw TooLarge("isomorphic_small: graph exceeds vertex cap");
  if (x.vertex_count() != y.vertex_count() || x.edge_count() != y.edge_count()) return false;
  std::size_t n = x.vertex_count();
  if (n == 0) return true;
  std::size_t budget = 1'000'000;
  return detail::iso_search(x, y, std::vector<std::size_t>(n, 0), std::vector<std::size_t>(n, 0), budget);
}

}  // namespace ekr

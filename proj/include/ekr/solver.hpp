#pragma once

// Exact maximum clique by bitset branch and bound (greedy sequential
// colouring bound, vertices in degeneracy order). Maximum coclique runs the
// same search on the complement without building it.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "ekr/errors.hpp"
#include "ekr/graph.hpp"
#include "ekr/rational.hpp"

namespace ekr {

struct SolveOptions {
  std::optional<std::uint64_t> node_budget;
  std::size_t threads = 1;
  /// Known clique (or coclique, for max_coclique); used as the incumbent.
  std::vector<std::size_t> initial;
  /// A proven upper bound; the search stops as soon as it is met.
  std::optional<std::size_t> upper_bound;
  /// Restrict to solutions containing this vertex. Only sound on
  /// vertex-transitive graphs, where some optimum contains every vertex.
  std::optional<std::size_t> fix_vertex;
};

struct SolveResult {
  std::size_t size = 0;
  std::vector<std::size_t> witness;  // sorted
  std::uint64_t nodes_explored = 0;
  bool proven_optimal = false;
};

namespace detail {

template <bool Complement>
class CliqueSearch {
 public:
  CliqueSearch(const Graph& g, const SolveOptions& opt) : n_(g.vertex_count()), opt_(opt) {
    order_vertices(g);
    adj_.assign(n_, Bitset(n_));
    for (std::size_t i = 0; i < n_; ++i) {
      const Bitset& row = g.neighbors(order_[i]);
      for (std::size_t j = 0; j < n_; ++j) {
        if (i != j && (row.test(order_[j]) != Complement)) adj_[i].set(j);
      }
    }
  }

  SolveResult run() {
    SolveResult res;
    if (n_ == 0) {
      res.proven_optimal = true;
      return res;
    }
    // Incumbent: caller's solution, else any single vertex.
    std::vector<std::size_t> inc = opt_.initial;
    if (inc.empty()) inc = {opt_.fix_vertex.value_or(0)};
    best_size_ = inc.size();
    best_ = inc;

    Bitset root(n_);
    std::vector<std::size_t> current;
    if (opt_.fix_vertex) {
      std::size_t f = position_[*opt_.fix_vertex];
      root = adj_[f];
      current.push_back(f);
    } else {
      root.set_all();
    }

    if (!reached_upper()) {
      if (opt_.threads > 1)
        run_parallel(root, current);
      else
        expand(root, current, nodes_);
    }
    res.size = best_size_;
    {
      std::lock_guard lock(mu_);
      res.witness = best_;
    }
    std::sort(res.witness.begin(), res.witness.end());
    res.nodes_explored = nodes_.load();
    res.proven_optimal = !aborted_.load();
    return res;
  }

 private:
  // Degeneracy order in the searched graph (min-degree removed last in the
  // array), so that colour classes are built from the densest core first.
  void order_vertices(const Graph& g) {
    std::vector<std::size_t> deg(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      std::size_t d = g.degree(v);
      deg[v] = Complement ? n_ - 1 - d : d;
    }
    std::vector<bool> removed(n_, false);
    order_.assign(n_, 0);
    // O(n^2) selection is fine at the sizes the exact solver is used for.
    for (std::size_t k = n_; k-- > 0;) {
      std::size_t pick = n_;
      for (std::size_t v = 0; v < n_; ++v) {
        if (!removed[v] && (pick == n_ || deg[v] < deg[pick])) pick = v;
      }
      removed[pick] = true;
      order_[k] = pick;
      const Bitset& row = g.neighbors(pick);
      for (std::size_t v = 0; v < n_; ++v) {
        if (removed[v] || v == pick) continue;
        if (row.test(v) != Complement) --deg[v];
      }
    }
    position_.assign(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) position_[order_[i]] = i;
  }

  bool reached_upper() const { return opt_.upper_bound && best_size_.load() >= *opt_.upper_bound; }

  bool out_of_budget(std::atomic<std::uint64_t>& nodes) {
    std::uint64_t k = ++nodes;
    if (opt_.node_budget && k > *opt_.node_budget) {
      aborted_ = true;
      return true;
    }
    return aborted_.load(std::memory_order_relaxed);
  }

  void offer(const std::vector<std::size_t>& c) {
    std::lock_guard lock(mu_);
    if (c.size() <= best_size_) return;
    best_.clear();
    for (std::size_t i : c) best_.push_back(order_[i]);
    best_size_ = c.size();
  }

  // Sequential greedy colouring of p. Only vertices whose colour could still
  // lift the clique above the incumbent are listed.
  void colour(const Bitset& p, std::size_t depth_size, std::vector<std::size_t>& verts,
              std::vector<std::size_t>& cols) const {
    verts.clear();
    cols.clear();
    std::size_t best = best_size_.load();
    std::size_t kmin = best >= depth_size ? best - depth_size + 1 : 1;
    Bitset uncoloured = p;
    Bitset q(n_);
    std::size_t k = 0;
    while (uncoloured.any()) {
      ++k;
      q = uncoloured;
      for (std::size_t v = q.first(); v != Bitset::npos; v = q.next(v + 1)) {
        q.andnot(adj_[v]);
        uncoloured.reset(v);
        if (k >= kmin) {
          verts.push_back(v);
          cols.push_back(k);
        }
      }
    }
  }

  void expand(Bitset& p, std::vector<std::size_t>& c, std::atomic<std::uint64_t>& nodes) {
    if (out_of_budget(nodes)) return;
    std::vector<std::size_t> verts, cols;
    colour(p, c.size(), verts, cols);
    for (std::size_t i = verts.size(); i-- > 0;) {
      if (c.size() + cols[i] <= best_size_.load()) return;
      std::size_t v = verts[i];
      c.push_back(v);
      Bitset np = p;
      np &= adj_[v];
      if (np.none()) {
        if (c.size() > best_size_.load()) offer(c);
      } else {
        expand(np, c, nodes);
      }
      c.pop_back();
      p.reset(v);
      if (aborted_.load(std::memory_order_relaxed) || reached_upper()) return;
    }
  }

  // Root branches are handed out in the sequential order; each worker owns
  // its candidate set, the incumbent size is shared.
  void run_parallel(const Bitset& root, const std::vector<std::size_t>& base) {
    std::vector<std::size_t> verts, cols;
    colour(root, base.size(), verts, cols);
    // Branch i may use root vertices that sequential search would still
    // have in P when reaching i: everything not listed after i.
    std::vector<Bitset> branch_sets(verts.size(), root);
    Bitset acc = root;
    for (std::size_t i = verts.size(); i-- > 0;) {
      branch_sets[i] = acc;
      branch_sets[i] &= adj_[verts[i]];
      acc.reset(verts[i]);
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      while (true) {
        std::size_t j = next++;
        if (j >= verts.size()) return;
        std::size_t i = verts.size() - 1 - j;
        if (base.size() + cols[i] <= best_size_.load() || aborted_ || reached_upper()) continue;
        std::vector<std::size_t> c = base;
        c.push_back(verts[i]);
        Bitset p = branch_sets[i];
        if (p.none()) {
          if (c.size() > best_size_.load()) offer(c);
        } else {
          expand(p, c, nodes_);
        }
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < opt_.threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::size_t n_;
  const SolveOptions& opt_;
  std::vector<std::size_t> order_, position_;
  std::vector<Bitset> adj_;
  std::atomic<std::size_t> best_size_{0};
  std::vector<std::size_t> best_;  // original vertex ids
  std::mutex mu_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> aborted_{false};
};

template <bool Complement>
SolveResult solve(const Graph& g, const SolveOptions& opt) {
  if (opt.fix_vertex && *opt.fix_vertex >= g.vertex_count()) throw BadParams("fix_vertex out of range");
  bool ok = Complement ? g.is_coclique(opt.initial) : g.is_clique(opt.initial);
  if (!ok) throw BadWitness("initial solution is not valid");
  CliqueSearch<Complement> s(g, opt);
  auto res = s.run();
  bool valid = Complement ? g.is_coclique(res.witness) : g.is_clique(res.witness);
  if (!valid || res.witness.size() != res.size) {
    throw InternalInvariantViolation("solver produced an invalid witness");
  }
  return res;
}

}  // namespace detail

inline SolveResult max_clique(const Graph& g, const SolveOptions& opt = {}) {
  return detail::solve<false>(g, opt);
}

inline SolveResult max_coclique(const Graph& g, const SolveOptions& opt = {}) {
  return detail::solve<true>(g, opt);
}

// ---------------------------------------------------------------------------
// Bounds

struct CheckOutcome {
  bool bound_holds = false;  // alpha * omega <= |V|
  bool equality = false;
  std::size_t meet_size = 0;  // |S ∩ T|
};

/// Clique-coclique bound on a vertex-transitive graph for a coclique S and
/// a clique T.
inline CheckOutcome clique_coclique_check(const Graph& g, const std::vector<std::size_t>& coclique,
                                          const std::vector<std::size_t>& clique) {
  if (!g.is_coclique(coclique)) throw BadWitness("coclique witness has an edge");
  if (!g.is_clique(clique)) throw BadWitness("clique witness misses an edge");
  if (!g.is_regular()) throw BadWitness("graph is not regular, so not vertex-transitive");
  CheckOutcome out;
  std::size_t prod = coclique.size() * clique.size();
  out.bound_holds = prod <= g.vertex_count();
  out.equality = prod == g.vertex_count();
  std::vector<std::size_t> a = coclique, b = clique;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<std::size_t> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  out.meet_size = both.size();
  return out;
}

inline CheckOutcome clique_coclique_check(const Graph& g, const SolveResult& coclique, const SolveResult& clique) {
  return clique_coclique_check(g, coclique.witness, clique.witness);
}

inline void verify_homomorphism(const Graph& x, const Graph& y, const std::vector<std::size_t>& hom) {
  if (hom.size() != x.vertex_count()) throw NotHomomorphism("map does not cover every vertex of the source");
  for (std::size_t v : hom) {
    if (v >= y.vertex_count()) throw NotHomomorphism("map leaves the target vertex set");
  }
  for (auto [u, v] : x.edges()) {
    if (hom[u] == hom[v]) throw NotHomomorphism("edge collapsed onto one vertex");
    if (!y.has_edge(hom[u], hom[v])) throw NotHomomorphism("edge mapped to a non-edge");
  }
}

/// alpha(x)/|V(x)|, which bounds alpha(y)/|V(y)| when `hom` is a
/// homomorphism x -> y and y is vertex-transitive.
inline Rational no_hom_bound(const Graph& x, const Graph& y, const std::vector<std::size_t>& hom,
                             const SolveOptions& opt = {}) {
  if (!y.is_regular()) throw NotHomomorphism("target graph is not regular, so not vertex-transitive");
  verify_homomorphism(x, y, hom);
  auto a = max_coclique(x, opt);
  if (!a.proven_optimal) throw TooLarge("alpha of the source graph not resolved within budget");
  return make_rational(a.size, x.vertex_count());
}

}  // namespace ekr

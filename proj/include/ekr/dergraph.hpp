#pragma once

// Derangement graphs and intersection density.
//
// rho(G) = alpha(Gamma_G) / |G_w|. Resolution runs cheap certificates first:
// a clique of size |Omega| forces rho = 1; a semi-regular subgroup whose
// orbits form a block system lets rho(G) <= rho(quotient); otherwise the
// exact solver runs, seeded with the best intersecting subgroup found and
// capped by the clique-coclique bound.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ekr/errors.hpp"
#include "ekr/graph.hpp"
#include "ekr/group.hpp"
#include "ekr/perm.hpp"
#include "ekr/rational.hpp"
#include "ekr/solver.hpp"

namespace ekr {

// ---------------------------------------------------------------------------
// Graphs

/// x ~ y iff y x^-1 is in `connection`. Vertices follow G's element order.
inline Graph cayley_graph(const PermutationGroup& g, const std::vector<Permutation>& connection) {
  const auto& els = g.elements();
  std::vector<std::size_t> conn_idx;
  for (const auto& c : connection) {
    if (c.is_identity()) throw BadConnectionSet("connection set contains the identity");
    auto i = g.index_of(c);
    if (!i) throw BadConnectionSet("connection element " + format_cycles(c) + " is not in the group");
    conn_idx.push_back(*i);
  }
  std::sort(conn_idx.begin(), conn_idx.end());
  conn_idx.erase(std::unique(conn_idx.begin(), conn_idx.end()), conn_idx.end());
  for (std::size_t i : conn_idx) {
    if (!std::binary_search(conn_idx.begin(), conn_idx.end(), *g.index_of(els[i].inverse()))) {
      throw BadConnectionSet("connection set is not closed under inverses");
    }
  }
  Graph out(els.size());
  for (std::size_t x = 0; x < els.size(); ++x) {
    for (std::size_t ci : conn_idx) {
      std::size_t y = *g.index_of(els[ci] * els[x]);
      out.row(x).set(y);
      out.row(y).set(x);
    }
  }
  return out;
}

/// Cay(G, Der(G)). Built from the sets S_{w,j} = {g : w^g = j}: the
/// non-neighbours of x are the union over w of S_{w, w^x}.
inline Graph derangement_graph(const PermutationGroup& g) {
  if (!is_transitive(g)) throw NotTransitive("derangement_graph: group is not transitive");
  const auto& els = g.elements();
  std::size_t n = g.degree(), size = els.size();
  std::vector<Bitset> s(n * n, Bitset(size));
  for (std::size_t x = 0; x < size; ++x)
    for (std::size_t w = 0; w < n; ++w) s[w * n + els[x][w]].set(x);
  Graph out(size);
  for (std::size_t x = 0; x < size; ++x) {
    Bitset& row = out.row(x);
    for (std::size_t w = 0; w < n; ++w) row |= s[w * n + els[x][w]];
    row.flip();
  }
  return out;
}

inline std::vector<std::size_t> element_indices(const PermutationGroup& g, const std::vector<Permutation>& f) {
  std::vector<std::size_t> out;
  for (const auto& x : f) {
    auto i = g.index_of(x);
    if (!i) throw NotMember("element " + format_cycles(x) + " is not in the group");
    out.push_back(*i);
  }
  return out;
}

/// Every pair agrees on some point.
inline bool is_intersecting_set(const PermutationGroup& g, const std::vector<Permutation>& f) {
  for (const auto& x : f) {
    if (!g.contains(x)) throw NotMember("element " + format_cycles(x) + " is not in the group");
  }
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      if (!agree_somewhere(f[i], f[j])) return false;
  return true;
}

/// Pairwise disagreeing everywhere, i.e. a clique of the derangement graph.
inline bool is_derangement_clique(const std::vector<Permutation>& f) {
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j)
      if (agree_somewhere(f[i], f[j])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Cliques of size |Omega|

namespace detail {

struct LatinSearch {
  const std::vector<Permutation>& pool;  // derangements
  std::size_t n;
  std::uint64_t budget;
  std::vector<std::size_t> chosen;
  std::size_t best_partial = 0;

  bool compatible(std::size_t a, std::size_t b) const { return !agree_somewhere(pool[a], pool[b]); }

  // domains[j] for j = 1..n-1: pool members sending 0 to j and compatible
  // with every chosen element; `filled` marks slots already taken.
  bool run(std::vector<std::vector<std::size_t>>& domains, std::vector<bool>& filled) {
    best_partial = std::max(best_partial, chosen.size() + 1);
    std::size_t pick = 0, best = SIZE_MAX;
    for (std::size_t j = 1; j < n; ++j) {
      if (!filled[j] && domains[j].size() < best) {
        best = domains[j].size();
        pick = j;
      }
    }
    if (pick == 0) return true;
    if (best == 0) return false;
    filled[pick] = true;
    for (std::size_t cand : domains[pick]) {
      if (budget == 0) break;
      --budget;
      std::vector<std::vector<std::size_t>> next(n);
      bool dead = false;
      for (std::size_t j = 1; j < n && !dead; ++j) {
        if (filled[j]) continue;
        for (std::size_t x : domains[j])
          if (compatible(cand, x)) next[j].push_back(x);
        dead = next[j].empty();
      }
      if (dead) continue;
      chosen.push_back(cand);
      if (run(next, filled)) return true;
      chosen.pop_back();
    }
    filled[pick] = false;
    return false;
  }
};

}  // namespace detail

struct CliqueSearchResult {
  std::optional<std::vector<Permutation>> clique;  // size |Omega|, contains the identity
  std::size_t best_partial = 1;                    // largest clique seen on the way
};

/// Looks for |Omega| elements pairwise disagreeing everywhere, from a pool of
/// candidate elements: first a full-length cycle, then a sharply transitive
/// set through the identity by a Latin-rectangle search with forward checking.
inline CliqueSearchResult clique_size_degree_search(const std::vector<Permutation>& candidates, std::size_t degree,
                                                    std::uint64_t budget = 200'000) {
  CliqueSearchResult res;
  for (const auto& g : candidates) {
    if (g.degree() != degree) throw DegreeMismatch("clique search: candidate of wrong degree");
    auto ct = cycle_type(g);
    if (ct.size() == 1 && ct[0] == degree) {
      std::vector<Permutation> cl;
      for (std::size_t i = 0; i < degree; ++i) cl.push_back(g.pow(static_cast<long long>(i)));
      std::sort(cl.begin(), cl.end());
      res.clique = std::move(cl);
      res.best_partial = degree;
      return res;
    }
  }
  std::vector<Permutation> pool;
  for (const auto& g : candidates)
    if (is_derangement(g)) pool.push_back(g);
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  if (degree == 1) {
    res.clique = std::vector<Permutation>{Permutation::identity(1)};
    return res;
  }
  std::vector<std::vector<std::size_t>> domains(degree);
  for (std::size_t i = 0; i < pool.size(); ++i) domains[pool[i][0]].push_back(i);
  detail::LatinSearch s{pool, degree, budget, {}, 1};
  std::vector<bool> filled(degree, false);
  filled[0] = true;
  bool ok = s.run(domains, filled);
  res.best_partial = std::max<std::size_t>(1, s.best_partial);
  if (ok) {
    std::vector<Permutation> cl{Permutation::identity(degree)};
    for (std::size_t i : s.chosen) cl.push_back(pool[i]);
    std::sort(cl.begin(), cl.end());
    if (!is_derangement_clique(cl)) throw InternalInvariantViolation("clique search returned a non-clique");
    res.clique = std::move(cl);
    res.best_partial = degree;
  }
  return res;
}

inline CliqueSearchResult clique_size_degree_search(const PermutationGroup& g, std::uint64_t budget = 200'000) {
  return clique_size_degree_search(g.elements(), g.degree(), budget);
}

// ---------------------------------------------------------------------------
// Density

enum class Method { ExactSolver, CliqueCoclique, QuotientBound, KernelLowerBound, TwoTransitiveLiterature, Unresolved };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::ExactSolver: return "ExactSolver";
    case Method::CliqueCoclique: return "CliqueCoclique";
    case Method::QuotientBound: return "QuotientBound";
    case Method::KernelLowerBound: return "KernelLowerBound";
    case Method::TwoTransitiveLiterature: return "TwoTransitiveLiterature";
    case Method::Unresolved: return "Unresolved";
  }
  return "Unresolved";
}

struct StrategyConfig {
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  std::size_t exact_cap = 20'000;  // vertices
  bool allow_two_transitive_literature = false;
  /// Skip the certificate tiers and go straight to the exact solver.
  bool force_exact = false;
  std::uint64_t clique_search_budget = 200'000;
  std::uint64_t clique_solver_budget = 20'000;  // nodes, for the omega lower bound
  std::optional<std::uint64_t> solver_node_budget;
  std::size_t threads = 1;
  std::size_t sample_pool = 20'000;  // random elements for groups beyond the cap
  std::uint64_t seed = 1;
  /// Recursion depth for the transitive-subgroup upper bound; 0 disables it.
  std::size_t subgroup_depth = 1;
};

struct DensityReport {
  std::string group_name;
  std::size_t degree = 0;
  std::optional<std::size_t> group_order;       // absent when not enumerated
  std::optional<std::size_t> stabilizer_order;  // absent when not enumerated
  std::optional<std::size_t> alpha_lo, alpha_hi;
  Rational rho_lo{1}, rho_hi{1};
  std::size_t clique_bound = 1;
  Method method = Method::Unresolved;
  bool literature_assumed = false;
  std::string lower_bound_source;  // which intersecting set gave alpha_lo
  std::vector<Permutation> witness_coclique, witness_clique;
  std::vector<std::string> notes;

  bool resolved() const { return rho_lo == rho_hi; }
  const Rational& rho() const { return rho_lo; }
};

/// Intersecting subgroups that come for free: the point stabilizer, and for
/// each block system the kernel, the block stabilizer and kernel * G_0 when
/// these contain no derangement.
struct IntersectingCandidate {
  std::string source;
  std::vector<Permutation> elements;
};

inline std::vector<IntersectingCandidate> intersecting_subgroups(const PermutationGroup& g) {
  std::vector<IntersectingCandidate> out;
  auto stab = point_stabilizer(g, 0);
  out.push_back({"stabilizer", stab.elements()});
  auto add_if_free = [&](std::string source, std::vector<Permutation> els) {
    if (std::none_of(els.begin(), els.end(), [](const Permutation& p) { return is_derangement(p); })) {
      out.push_back({std::move(source), std::move(els)});
    }
  };
  for (const auto& bs : block_systems(g)) {
    const auto& block0 = bs.blocks[bs.block_of[0]];
    std::vector<Permutation> ker, setwise;
    for (const auto& e : g.elements()) {
      bool fixes_block0 = bs.block_of[e[block0.front()]] == bs.block_of[0];
      if (fixes_block0) setwise.push_back(e);
      bool in_ker = true;
      for (std::size_t x = 0; x < g.degree() && in_ker; ++x) in_ker = bs.block_of[e[x]] == bs.block_of[x];
      if (in_ker) ker.push_back(e);
    }
    std::string tag = "blocks of size " + std::to_string(bs.block_size);
    if (ker.size() > 1) {
      add_if_free("kernel (" + tag + ")", ker);
      auto kg = subgroup_generated(g.degree(), [&] {
        auto v = ker;
        v.insert(v.end(), stab.elements().begin(), stab.elements().end());
        return v;
      }());
      if (kg.size() > ker.size() && kg.size() > stab.size()) add_if_free("kernel*stabilizer (" + tag + ")", kg.elements());
    }
    add_if_free("block stabilizer (" + tag + ")", setwise);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.elements.size() > b.elements.size(); });
  return out;
}

/// A semi-regular element whose cycles are exactly the blocks of `bs`.
inline std::optional<Permutation> semi_regular_for_blocks(const PermutationGroup& g, const BlockSystem& bs) {
  for (const auto& e : g.elements()) {
    if (!is_semi_regular(e, bs.block_size, bs.blocks.size())) continue;
    auto cyc = cycles(e);
    bool match = true;
    for (auto& c : cyc) {
      std::sort(c.begin(), c.end());
      if (c != bs.blocks[bs.block_of[c.front()]]) {
        match = false;
        break;
      }
    }
    if (match) return e;
  }
  return std::nullopt;
}

inline DensityReport intersection_density(const PermutationGroup& input, const StrategyConfig& cfg = {});

namespace detail {

inline void set_exact(DensityReport& r, std::size_t alpha) {
  r.alpha_lo = r.alpha_hi = alpha;
  r.rho_lo = r.rho_hi = make_rational(alpha, *r.stabilizer_order);
}

inline DensityReport density_not_enumerated(const PermutationGroup& g, const StrategyConfig& cfg) {
  DensityReport r;
  r.group_name = g.name();
  r.degree = g.degree();
  r.notes.push_back("group exceeds the enumeration cap " + std::to_string(cfg.enumeration_cap) +
                    "; using " + std::to_string(cfg.sample_pool) + " sampled elements");
  std::vector<Permutation> pool = g.generators();
  ProductReplacement pr(g, cfg.seed);
  for (std::size_t i = 0; i < cfg.sample_pool; ++i) pool.push_back(pr.next());
  auto cs = clique_size_degree_search(pool, g.degree(), cfg.clique_search_budget);
  r.clique_bound = cs.best_partial;
  if (cs.clique) {
    r.clique_bound = g.degree();
    r.witness_clique = *cs.clique;
    r.method = Method::CliqueCoclique;
    r.rho_lo = r.rho_hi = 1;
    return r;
  }
  if (cfg.allow_two_transitive_literature && is_two_transitive(g)) {
    r.method = Method::TwoTransitiveLiterature;
    r.literature_assumed = true;
    r.rho_lo = r.rho_hi = 1;
    r.notes.push_back("rho = 1 taken from the literature on 2-transitive groups, not computed");
    return r;
  }
  r.method = Method::Unresolved;
  r.rho_lo = 1;
  r.rho_hi = make_rational(g.degree(), r.clique_bound);
  return r;
}


/// rho(G) <= rho(H) for every transitive H <= G. The subgroups tried replace
/// one generator g by g^q for a prime q dividing its order. Returns the best
/// resulting bound on alpha and a note naming its source.
inline std::optional<std::pair<std::size_t, std::string>> transitive_subgroup_bound(const PermutationGroup& g,
                                                                                     const StrategyConfig& cfg,
                                                                                     std::size_t stab_order,
                                                                                     std::size_t lo,
                                                                                     std::size_t max_tries = 8) {
  StrategyConfig sub = cfg;
  sub.subgroup_depth = cfg.subgroup_depth - 1;
  std::optional<std::pair<std::size_t, std::string>> best;
  std::size_t tries = 0;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size() && tries < max_tries; ++i) {
    std::uint64_t ord = order(gens[i]);
    for (std::uint64_t q = 2; q <= ord && tries < max_tries; ++q) {
      if (ord % q != 0) continue;
      bool prime = true;
      for (std::uint64_t f = 2; f * f <= q; ++f) prime = prime && q % f != 0;
      if (!prime) continue;
      auto hg = gens;
      hg[i] = gens[i].pow(static_cast<long long>(q));
      auto h = subgroup_generated(g.degree(), hg, cfg.enumeration_cap);
      if (h.size() == g.size() || !is_transitive(h)) continue;
      ++tries;
      auto hr = intersection_density(h, sub);
      Rational scaled = hr.rho_hi * Rational(stab_order);
      auto bound = static_cast<std::size_t>(boost::multiprecision::numerator(scaled) /
                                            boost::multiprecision::denominator(scaled));
      if (!best || bound < best->first) {
        std::ostringstream note;
        note << "transitive subgroup of order " << h.size() << " (generator " << i << " raised to " << q
             << ") has rho <= " << hr.rho_hi << " via " << to_string(hr.method);
        best = {bound, note.str()};
      }
      if (best->first <= lo) return best;
    }
  }
  return best;
}

}  // namespace detail

inline DensityReport intersection_density(const PermutationGroup& input, const StrategyConfig& cfg) {
  if (!is_transitive(input)) throw NotTransitive("intersection_density: group '" + input.name() + "' is not transitive");
  PermutationGroup g;
  try {
    g = enumerate(input, cfg.enumeration_cap);
  } catch (const GroupTooLarge&) {
    return detail::density_not_enumerated(input, cfg);
  }

  DensityReport r;
  r.group_name = g.name();
  r.degree = g.degree();
  r.group_order = g.size();
  auto stab = point_stabilizer(g, 0);
  r.stabilizer_order = stab.size();
  r.witness_coclique = stab.elements();
  r.lower_bound_source = "stabilizer";

  if (g.degree() == 1) {
    detail::set_exact(r, 1);
    r.method = Method::CliqueCoclique;
    r.witness_clique = g.elements();
    return r;
  }

  if (!cfg.force_exact) {
    // Tier 1: a clique of size |Omega|.
    auto cs = clique_size_degree_search(g, cfg.clique_search_budget);
    r.clique_bound = cs.best_partial;
    if (cs.clique) {
      r.witness_clique = *cs.clique;
      r.clique_bound = g.degree();
      r.method = Method::CliqueCoclique;
      detail::set_exact(r, stab.size());
      return r;
    }
    // Tier 2: a semi-regular subgroup whose orbits are the blocks.
    for (const auto& bs : block_systems(g)) {
      auto h = semi_regular_for_blocks(g, bs);
      if (!h) continue;
      auto qa = quotient_action(g, bs, cfg.enumeration_cap);
      StrategyConfig sub = cfg;
      auto qr = intersection_density(qa.quotient, sub);
      if (qr.resolved() && qr.rho() == 1) {
        r.method = Method::QuotientBound;
        r.literature_assumed = qr.literature_assumed;
        detail::set_exact(r, stab.size());
        r.notes.push_back("semi-regular " + format_cycles(*h) + " has the " + std::to_string(bs.blocks.size()) +
                          " blocks of size " + std::to_string(bs.block_size) +
                          " as orbits; rho of the quotient is 1 via " + to_string(qr.method));
        return r;
      }
    }
    // Tier 3: opt-in literature shortcut.
    if (cfg.allow_two_transitive_literature && is_two_transitive(g)) {
      r.method = Method::TwoTransitiveLiterature;
      r.literature_assumed = true;
      detail::set_exact(r, stab.size());
      r.notes.push_back("rho = 1 taken from the literature on 2-transitive groups, not computed");
      return r;
    }
  }

  // Lower bound from intersecting subgroups.
  auto cands = intersecting_subgroups(g);
  r.witness_coclique = cands.front().elements;
  r.lower_bound_source = cands.front().source;
  std::size_t lo = r.witness_coclique.size();

  // Under force_exact the tier-1 search still supplies the clique bound,
  // which the solver uses as its stopping point.
  if (cfg.force_exact) {
    auto cs = clique_size_degree_search(g, cfg.clique_search_budget);
    r.clique_bound = cs.clique ? g.degree() : cs.best_partial;
    if (cs.clique) r.witness_clique = *cs.clique;
  }

  std::size_t hi = g.size() / r.clique_bound;
  if (lo < hi && cfg.subgroup_depth > 0) {
    if (auto sb = detail::transitive_subgroup_bound(g, cfg, stab.size(), lo); sb && sb->first < hi) {
      hi = sb->first;
      r.notes.push_back(sb->second);
    }
  }

  bool within_cap = g.size() <= cfg.exact_cap;
  Graph gamma;
  std::size_t id_index = 0;  // the identity is first in element order
  if (within_cap) {
    gamma = derangement_graph(g);
    // Omega lower bound from a budgeted clique search through the identity.
    SolveOptions co;
    co.fix_vertex = id_index;
    co.node_budget = cfg.clique_solver_budget;
    co.upper_bound = g.degree();
    auto cl = max_clique(gamma, co);
    if (cl.size > r.clique_bound) {
      r.clique_bound = cl.size;
      r.witness_clique.clear();
      for (auto i : cl.witness) r.witness_clique.push_back(g.elements()[i]);
    }
  }
  hi = std::min(hi, g.size() / r.clique_bound);

  if (within_cap) {
    SolveOptions so;
    so.fix_vertex = id_index;
    so.initial = element_indices(g, r.witness_coclique);
    so.upper_bound = hi;
    so.node_budget = cfg.solver_node_budget;
    so.threads = cfg.threads;
    auto res = max_coclique(gamma, so);
    r.witness_coclique.clear();
    for (auto i : res.witness) r.witness_coclique.push_back(g.elements()[i]);
    if (res.size > lo) r.lower_bound_source = "exact solver";
    if (res.proven_optimal) {
      r.method = Method::ExactSolver;
      detail::set_exact(r, res.size);
      return r;
    }
    lo = res.size;
    r.notes.push_back("solver node budget exhausted");
  }
  if (lo == hi) {
    r.method = Method::KernelLowerBound;
    detail::set_exact(r, lo);
    r.notes.push_back("intersecting " + r.lower_bound_source + " meets the clique-coclique bound");
    return r;
  }
  r.method = Method::Unresolved;
  r.alpha_lo = lo;
  r.alpha_hi = hi;
  r.rho_lo = make_rational(lo, stab.size());
  r.rho_hi = make_rational(hi, stab.size());
  return r;
}

}  // namespace ekr

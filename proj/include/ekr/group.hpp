#pragma once

// Permutation groups at desk scale: everything that needs elements works on
// a fully enumerated, sorted element list. Orbits, block systems and
// 2-transitivity only need generators.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ekr/errors.hpp"
#include "ekr/perm.hpp"

namespace ekr {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

class PermutationGroup {
 public:
  PermutationGroup() = default;

  PermutationGroup(std::size_t degree, std::vector<Permutation> generators, std::string name = {})
      : degree_(degree), generators_(std::move(generators)), name_(std::move(name)) {
    if (degree_ == 0) throw DegreeMismatch("group degree must be positive");
    if (generators_.empty()) generators_.push_back(Permutation::identity(degree_));
    for (const auto& g : generators_) {
      if (g.degree() != degree_) {
        throw DegreeMismatch("generator of degree " + std::to_string(g.degree()) +
                             " in group of degree " + std::to_string(degree_));
      }
    }
  }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  bool is_enumerated() const noexcept { return elements_ != nullptr; }

  /// Sorted by image array; the identity is always first.
  const std::vector<Permutation>& elements() const {
    if (!elements_) throw NeedsEnumeration("group '" + name_ + "' is not enumerated");
    return *elements_;
  }

  std::optional<std::size_t> order() const {
    if (!elements_) return std::nullopt;
    return elements_->size();
  }

  std::size_t size() const { return elements().size(); }

  std::optional<std::size_t> index_of(const Permutation& p) const {
    const auto& els = elements();
    auto it = std::lower_bound(els.begin(), els.end(), p);
    if (it == els.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - els.begin());
  }

  bool contains(const Permutation& p) const {
    if (p.degree() != degree_) return false;
    return index_of(p).has_value();
  }

  /// Wraps an already closed, sorted element list; picks a small generating set.
  static PermutationGroup from_elements(std::size_t degree, std::vector<Permutation> sorted,
                                        std::string name = {});

 private:
  friend PermutationGroup enumerate(const PermutationGroup& g, std::size_t cap);

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::string name_;
  std::shared_ptr<const std::vector<Permutation>> elements_;
};

namespace detail {

using ElementSet = std::unordered_set<Permutation, PermutationHash>;

// Extends `closed` (a group) to the group generated by it and `gens`.
inline void close_under(ElementSet& closed, const std::vector<Permutation>& gens,
                        std::size_t cap) {
  std::vector<Permutation> frontier(closed.begin(), closed.end());
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& x : frontier) {
      for (const auto& g : gens) {
        Permutation y = x * g;
        if (closed.insert(y).second) {
          if (closed.size() > cap) throw GroupTooLarge(cap);
          next.push_back(std::move(y));
        }
      }
    }
    frontier = std::move(next);
  }
}

// Greedy generating set: walk candidates, keep those not yet generated.
inline std::pair<std::vector<Permutation>, ElementSet> greedy_generate(
    std::size_t degree, const std::vector<Permutation>& candidates, std::size_t cap) {
  ElementSet closed{Permutation::identity(degree)};
  std::vector<Permutation> gens;
  for (const auto& c : candidates) {
    if (closed.count(c)) continue;
    gens.push_back(c);
    close_under(closed, gens, cap);
  }
  return {std::move(gens), std::move(closed)};
}

inline std::vector<Permutation> sorted_elements(ElementSet&& s) {
  std::vector<Permutation> v(std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace detail

/// Breadth-first closure of the generators. Throws GroupTooLarge when more
/// than `cap` elements appear.
inline PermutationGroup enumerate(const PermutationGroup& g, std::size_t cap = kDefaultEnumerationCap) {
  if (g.is_enumerated()) {
    if (g.size() > cap) throw GroupTooLarge(cap);
    return g;
  }
  detail::ElementSet closed{Permutation::identity(g.degree())};
  if (cap < 1) throw GroupTooLarge(cap);
  detail::close_under(closed, g.generators(), cap);
  PermutationGroup out = g;
  out.elements_ =
      std::make_shared<const std::vector<Permutation>>(detail::sorted_elements(std::move(closed)));
  return out;
}

inline PermutationGroup enumerate(std::vector<Permutation> gens, std::size_t cap = kDefaultEnumerationCap,
                                  std::string name = {}) {
  if (gens.empty()) throw DegreeMismatch("enumerate: empty generator list has no degree");
  std::size_t n = gens.front().degree();
  return enumerate(PermutationGroup(n, std::move(gens), std::move(name)), cap);
}

inline PermutationGroup PermutationGroup::from_elements(std::size_t degree,
                                                        std::vector<Permutation> sorted,
                                                        std::string name) {
  auto [gens, closed] = detail::greedy_generate(degree, sorted, sorted.size());
  PermutationGroup out(degree, std::move(gens), std::move(name));
  out.elements_ = std::make_shared<const std::vector<Permutation>>(std::move(sorted));
  return out;
}

/// Subgroup generated by `gens` inside an ambient degree.
inline PermutationGroup subgroup_generated(std::size_t degree, const std::vector<Permutation>& gens,
                                           std::size_t cap = kDefaultEnumerationCap,
                                           std::string name = {}) {
  auto [g, closed] = detail::greedy_generate(degree, gens, cap);
  return PermutationGroup::from_elements(degree, detail::sorted_elements(std::move(closed)),
                                         std::move(name));
}

// ---------------------------------------------------------------------------
// Orbits and stabilizers

inline std::vector<std::vector<Point>> orbits(const PermutationGroup& g) {
  std::size_t n = g.degree();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<Point>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Point> orb{static_cast<Point>(s)};
    seen[s] = true;
    for (std::size_t k = 0; k < orb.size(); ++k) {
      for (const auto& gen : g.generators()) {
        Point y = gen[orb[k]];
        if (!seen[y]) {
          seen[y] = true;
          orb.push_back(y);
        }
      }
    }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

inline bool is_transitive(const PermutationGroup& g) { return orbits(g).size() == 1; }

inline PermutationGroup point_stabilizer(const PermutationGroup& g, std::size_t point) {
  if (point >= g.degree()) throw ShapeMismatch("point outside the group's domain");
  std::vector<Permutation> fix;
  for (const auto& e : g.elements()) {
    if (e[point] == point) fix.push_back(e);
  }
  return PermutationGroup::from_elements(g.degree(), std::move(fix),
                                         g.name() + "_" + std::to_string(point));
}

/// Generators of the stabilizer of `point` by Schreier's lemma; needs only
/// the generators of g. May contain redundant or identity entries.
inline std::vector<Permutation> schreier_generators(const PermutationGroup& g, std::size_t point) {
  std::size_t n = g.degree();
  std::vector<std::optional<Permutation>> transversal(n);
  transversal[point] = Permutation::identity(n);
  std::vector<Point> orb{static_cast<Point>(point)};
  for (std::size_t k = 0; k < orb.size(); ++k) {
    for (const auto& gen : g.generators()) {
      Point y = gen[orb[k]];
      if (!transversal[y]) {
        transversal[y] = *transversal[orb[k]] * gen;
        orb.push_back(y);
      }
    }
  }
  std::unordered_set<Permutation, PermutationHash> out;
  for (Point x : orb) {
    for (const auto& gen : g.generators()) {
      Permutation s = *transversal[x] * gen * transversal[gen[x]]->inverse();
      if (!s.is_identity()) out.insert(std::move(s));
    }
  }
  std::vector<Permutation> v(out.begin(), out.end());
  std::sort(v.begin(), v.end());
  if (v.empty()) v.push_back(Permutation::identity(n));
  return v;
}

inline bool is_two_transitive(const PermutationGroup& g) {
  if (g.degree() < 2 || !is_transitive(g)) return false;
  PermutationGroup stab(g.degree(), schreier_generators(g, 0));
  auto orbs = orbits(stab);
  return orbs.size() == 2;  // {0} and the rest
}

// ---------------------------------------------------------------------------
// Block systems

struct BlockSystem {
  std::vector<std::vector<Point>> blocks;  // each sorted; ordered by least point
  std::size_t block_size = 0;
  std::vector<std::size_t> block_of;

  friend bool operator==(const BlockSystem& a, const BlockSystem& b) { return a.blocks == b.blocks; }
};

namespace detail {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
  std::vector<std::size_t> parent;
};

inline BlockSystem partition_from(UnionFind& uf, std::size_t n) {
  BlockSystem bs;
  bs.block_of.assign(n, SIZE_MAX);
  std::vector<std::size_t> root_to_block(n, SIZE_MAX);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t r = uf.find(x);
    if (root_to_block[r] == SIZE_MAX) {
      root_to_block[r] = bs.blocks.size();
      bs.blocks.emplace_back();
    }
    bs.block_of[x] = root_to_block[r];
    bs.blocks[root_to_block[r]].push_back(static_cast<Point>(x));
  }
  bs.block_size = bs.blocks.front().size();
  for (const auto& b : bs.blocks) {
    if (b.size() != bs.block_size) bs.block_size = 0;  // unequal: caller decides
  }
  return bs;
}

// Finest partition coarser than `uf` that every generator preserves.
inline void close_blocks(UnionFind& uf, std::vector<std::pair<std::size_t, std::size_t>> pending,
                         const std::vector<Permutation>& gens) {
  while (!pending.empty()) {
    auto [x, y] = pending.back();
    pending.pop_back();
    for (const auto& g : gens) {
      std::size_t a = uf.find(g[x]), b = uf.find(g[y]);
      if (a != b) {
        uf.unite(a, b);
        pending.emplace_back(a, b);
      }
    }
  }
}

}  // namespace detail

/// Minimal block system in which `a` and `b` share a block.
inline BlockSystem minimal_block_system(const PermutationGroup& g, std::size_t a, std::size_t b) {
  detail::UnionFind uf(g.degree());
  uf.unite(a, b);
  detail::close_blocks(uf, {{a, b}}, g.generators());
  return detail::partition_from(uf, g.degree());
}

inline bool preserves(const Permutation& p, const BlockSystem& bs) {
  for (const auto& block : bs.blocks) {
    std::size_t target = bs.block_of[p[block.front()]];
    for (Point x : block) {
      if (bs.block_of[p[x]] != target) return false;
    }
  }
  return true;
}

/// All nontrivial block systems of a transitive group, sorted by block size.
/// Empty exactly when the group is primitive.
inline std::vector<BlockSystem> block_systems(const PermutationGroup& g) {
  if (!is_transitive(g)) throw NotTransitive("block_systems: group '" + g.name() + "' is not transitive");
  std::size_t n = g.degree();
  std::vector<BlockSystem> found;
  auto add = [&](BlockSystem bs) {
    if (bs.blocks.size() <= 1 || bs.blocks.size() == n) return false;
    if (std::find(found.begin(), found.end(), bs) != found.end()) return false;
    found.push_back(std::move(bs));
    return true;
  };
  for (std::size_t w = 1; w < n; ++w) add(minimal_block_system(g, 0, w));
  // Close under joins: every block system is a join of minimal ones.
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      detail::UnionFind uf(n);
      for (const auto* bs : {&found[i], &found[j]}) {
        for (const auto& block : bs->blocks) {
          for (Point x : block) uf.unite(block.front(), x);
        }
      }
      add(detail::partition_from(uf, n));
    }
  }
  std::sort(found.begin(), found.end(), [](const BlockSystem& a, const BlockSystem& b) {
    if (a.block_size != b.block_size) return a.block_size < b.block_size;
    return a.blocks < b.blocks;
  });
  return found;
}

// ---------------------------------------------------------------------------
// Quotient action on a block system

struct QuotientAction {
  BlockSystem system;
  PermutationGroup quotient;  // on block indices
  PermutationGroup kernel;    // on the original points

  /// Induced permutation of the block indices.
  Permutation project(const Permutation& g) const {
    std::vector<Point> img(system.blocks.size());
    for (std::size_t b = 0; b < img.size(); ++b) {
      img[b] = static_cast<Point>(system.block_of[g[system.blocks[b].front()]]);
    }
    return Permutation::from_images(std::move(img));
  }
};

inline QuotientAction quotient_action(const PermutationGroup& g, const BlockSystem& bs,
                                      std::size_t cap = kDefaultEnumerationCap) {
  for (const auto& gen : g.generators()) {
    if (!preserves(gen, bs)) {
      throw NotInvariant("generator " + format_cycles(gen) + " does not preserve the block system");
    }
  }
  QuotientAction qa{bs, {}, {}};
  std::vector<Permutation> qgens;
  for (const auto& gen : g.generators()) qgens.push_back(qa.project(gen));
  qa.quotient = enumerate(PermutationGroup(bs.blocks.size(), std::move(qgens), g.name() + "/B"), cap);
  std::vector<Permutation> ker;
  for (const auto& e : g.elements()) {
    bool fixes_all = true;
    for (std::size_t x = 0; x < g.degree() && fixes_all; ++x) {
      fixes_all = bs.block_of[e[x]] == bs.block_of[x];
    }
    if (fixes_all) ker.push_back(e);
  }
  qa.kernel = PermutationGroup::from_elements(g.degree(), std::move(ker), "ker(" + g.name() + ")");
  return qa;
}

// ---------------------------------------------------------------------------
// Normal subgroups

/// Conjugacy class of x under the group generated by `gens` (x must be in it).
inline std::vector<Permutation> conjugacy_class(const PermutationGroup& g, const Permutation& x) {
  std::unordered_set<Permutation, PermutationHash> seen{x};
  std::vector<Permutation> cls{x};
  for (std::size_t k = 0; k < cls.size(); ++k) {
    for (const auto& gen : g.generators()) {
      Permutation y = conjugate(cls[k], gen);
      if (seen.insert(y).second) cls.push_back(std::move(y));
    }
  }
  std::sort(cls.begin(), cls.end());
  return cls;
}

inline PermutationGroup normal_closure(const PermutationGroup& g, const Permutation& seed) {
  if (!g.contains(seed)) throw NotMember("normal_closure: seed " + format_cycles(seed) + " not in group");
  return subgroup_generated(g.degree(), conjugacy_class(g, seed), g.size(), "ncl(" + format_cycles(seed) + ")");
}

inline bool is_normal_in(const PermutationGroup& n, const PermutationGroup& g) {
  for (const auto& x : n.generators()) {
    for (const auto& gen : g.generators()) {
      if (!n.contains(conjugate(x, gen))) return false;
    }
  }
  return true;
}

/// Inclusion-minimal normal closures of single non-identity elements. One
/// representative per conjugacy class suffices.
inline std::vector<PermutationGroup> minimal_normal_subgroups(const PermutationGroup& g) {
  const auto& els = g.elements();
  std::vector<bool> classified(els.size(), false);
  classified[0] = true;  // identity
  std::vector<PermutationGroup> closures;
  for (std::size_t i = 1; i < els.size(); ++i) {
    if (classified[i]) continue;
    for (const auto& c : conjugacy_class(g, els[i])) classified[*g.index_of(c)] = true;
    auto n = normal_closure(g, els[i]);
    bool dup = std::any_of(closures.begin(), closures.end(), [&](const PermutationGroup& h) {
      return h.elements() == n.elements();
    });
    if (!dup) closures.push_back(std::move(n));
  }
  std::vector<PermutationGroup> minimal;
  for (std::size_t i = 0; i < closures.size(); ++i) {
    const auto& a = closures[i].elements();
    bool has_smaller = false;
    for (std::size_t j = 0; j < closures.size() && !has_smaller; ++j) {
      if (i == j) continue;
      const auto& b = closures[j].elements();
      has_smaller = b.size() < a.size() && std::includes(a.begin(), a.end(), b.begin(), b.end());
    }
    if (!has_smaller) minimal.push_back(closures[i]);
  }
  std::sort(minimal.begin(), minimal.end(), [](const PermutationGroup& a, const PermutationGroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements() < b.elements();
  });
  return minimal;
}

/// Every nontrivial normal subgroup is transitive.
inline bool is_quasiprimitive(const PermutationGroup& g) {
  if (!is_transitive(g)) throw NotTransitive("is_quasiprimitive: group is not transitive");
  for (const auto& n : minimal_normal_subgroups(g)) {
    if (!is_transitive(n)) return false;
  }
  return true;
}

inline bool is_derangement_free(const PermutationGroup& k) {
  const auto& els = k.elements();
  return std::none_of(els.begin(), els.end(), [](const Permutation& p) { return is_derangement(p); });
}

inline std::vector<Permutation> derangements(const PermutationGroup& g) {
  std::vector<Permutation> out;
  for (const auto& e : g.elements()) {
    if (is_derangement(e)) out.push_back(e);
  }
  return out;
}

/// First element (in element order) that is a product of degree/m cycles of
/// length m.
inline std::optional<Permutation> find_semi_regular(const PermutationGroup& g, std::size_t m) {
  if (m == 0 || g.degree() % m != 0) {
    throw ShapeMismatch("find_semi_regular: " + std::to_string(m) + " does not divide degree");
  }
  for (const auto& e : g.elements()) {
    if (is_semi_regular(e, m, g.degree() / m)) return e;
  }
  return std::nullopt;
}

inline bool is_abelian(const PermutationGroup& g) {
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (gens[i] * gens[j] != gens[j] * gens[i]) return false;
    }
  }
  return true;
}

inline bool is_elementary_abelian_3(const PermutationGroup& n) {
  const auto& els = n.elements();
  if (!is_abelian(n)) return false;
  return std::all_of(els.begin() + 1, els.end(), [](const Permutation& p) { return order(p) == 3; });
}

// ---------------------------------------------------------------------------
// Random elements (product replacement), for groups too large to enumerate.

class ProductReplacement {
 public:
  ProductReplacement(const PermutationGroup& g, std::uint64_t seed)
      : state_(), accum_(Permutation::identity(g.degree())), rng_(seed) {
    const auto& gens = g.generators();
    std::size_t slots = std::max<std::size_t>(10, gens.size());
    for (std::size_t i = 0; i < slots; ++i) state_.push_back(gens[i % gens.size()]);
    for (int i = 0; i < 60; ++i) next();
  }

  Permutation next() {
    std::uniform_int_distribution<std::size_t> pick(0, state_.size() - 1);
    std::size_t i = pick(rng_), j = pick(rng_);
    while (j == i) j = pick(rng_);
    const Permutation& other = (rng_() & 1) ? state_[j] : state_[j].inverse();
    state_[i] = (rng_() & 1) ? state_[i] * other : other * state_[i];
    accum_ = accum_ * state_[i];
    return accum_;
  }

 private:
  std::vector<Permutation> state_;
  Permutation accum_;
  std::mt19937_64 rng_;
};

}  // namespace ekr

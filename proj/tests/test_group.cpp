#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "ekr/construct.hpp"
#include "ekr/group.hpp"
#include "ekr/io.hpp"

using namespace ekr;

namespace {

PermutationGroup gen(std::size_t n, std::initializer_list<const char*> cycles, std::string name = {}) {
  std::vector<Permutation> g;
  for (const char* c : cycles) g.push_back(parse_cycles(c, n));
  return enumerate(std::move(g), kDefaultEnumerationCap, std::move(name));
}

// Naive closure: multiply every pair until nothing new appears.
std::set<Permutation> naive_closure(const std::vector<Permutation>& gens) {
  std::set<Permutation> s(gens.begin(), gens.end());
  s.insert(Permutation::identity(gens.front().degree()));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Permutation> cur(s.begin(), s.end());
    for (const auto& a : cur)
      for (const auto& b : cur)
        if (s.insert(a * b).second) grew = true;
  }
  return s;
}

// All set partitions of {0..n-1} into equal blocks of size 1 < k < n that
// every generator maps to itself.
std::set<std::vector<std::vector<Point>>> invariant_partitions(const PermutationGroup& g) {
  std::size_t n = g.degree();
  std::set<std::vector<std::vector<Point>>> out;
  std::vector<std::size_t> label(n, 0);
  // Restricted growth strings enumerate all partitions once.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == n) {
      std::vector<std::vector<Point>> blocks(used);
      for (std::size_t x = 0; x < n; ++x) blocks[label[x]].push_back(static_cast<Point>(x));
      std::size_t k = blocks[0].size();
      if (k == 1 || k == n) return;
      for (const auto& b : blocks)
        if (b.size() != k) return;
      for (const auto& p : g.generators()) {
        for (const auto& b : blocks) {
          std::size_t target = label[p[b[0]]];
          for (Point x : b)
            if (label[p[x]] != target) return;
        }
      }
      out.insert(blocks);
      return;
    }
    for (std::size_t l = 0; l <= used; ++l) {
      label[i] = l;
      rec(i + 1, std::max(used, l + 1));
    }
  };
  rec(0, 0);
  return out;
}

GabInstance p13_instance() {
  for (const auto& s : admissible_specs(13, 400)) return build_gab(s);
  throw std::runtime_error("no p = 13 instance");
}

}  // namespace

TEST(Group, Enumerate) {
  auto c5 = gen(5, {"(0 1 2 3 4)"});
  EXPECT_EQ(c5.size(), 5u);
  auto agl = gen(5, {"(0 1 2 3 4)", "(1 2 4 3)"});
  EXPECT_EQ(agl.size(), 20u);
  auto naive = naive_closure(agl.generators());
  EXPECT_EQ(std::vector<Permutation>(naive.begin(), naive.end()), agl.elements());
  EXPECT_TRUE(agl.elements().front().is_identity());
  EXPECT_THROW(enumerate({parse_cycles("(0 1)", 2)}, 1), GroupTooLarge);
}

TEST(Group, NeedsEnumeration) {
  PermutationGroup g(3, {parse_cycles("(0 1 2)", 3)});
  EXPECT_FALSE(g.is_enumerated());
  EXPECT_FALSE(g.order().has_value());
  EXPECT_THROW(g.elements(), NeedsEnumeration);
  EXPECT_THROW(point_stabilizer(g, 0), NeedsEnumeration);
}

TEST(Group, Orbits) {
  auto c5 = gen(5, {"(0 1 2 3 4)"});
  EXPECT_EQ(orbits(c5).size(), 1u);
  EXPECT_TRUE(is_transitive(c5));
  PermutationGroup g(6, {parse_cycles("(0 1 2)", 6)});
  auto o = orbits(g);
  EXPECT_EQ(o.size(), 4u);
  EXPECT_EQ(o[0], (std::vector<Point>{0, 1, 2}));
  EXPECT_FALSE(is_transitive(g));
}

TEST(Group, KernelOrbitsAreTheBlocks) {
  auto inst = p13_instance();
  auto o = orbits(inst.kernel);
  ASSERT_EQ(o.size(), 13u);
  for (std::size_t i = 0; i < 13; ++i) EXPECT_EQ(o[i], inst.blocks.blocks[i]);
}

TEST(Group, PointStabilizer) {
  EXPECT_EQ(point_stabilizer(gen(7, {"(0 1 2 3 4 5 6)"}), 0).size(), 1u);
  EXPECT_EQ(point_stabilizer(gen(5, {"(0 1 2 3 4)", "(1 2 4 3)"}), 0).size(), 4u);
  auto s3 = gen(3, {"(0 1 2)", "(0 1)"});
  auto st = point_stabilizer(s3, 2);
  EXPECT_EQ(st.elements(), (std::vector<Permutation>{Permutation::identity(3), parse_cycles("(0 1)", 3)}));
}

TEST(Group, BlockSystemsAgainstBruteForce) {
  auto c6 = gen(6, {"(0 1 2 3 4 5)"});
  auto bs = block_systems(c6);
  ASSERT_EQ(bs.size(), 2u);
  EXPECT_EQ(bs[0].block_size, 2u);
  EXPECT_EQ(bs[1].block_size, 3u);
  for (auto* g : {&c6}) {
    std::set<std::vector<std::vector<Point>>> ours;
    for (const auto& b : block_systems(*g)) ours.insert(b.blocks);
    EXPECT_EQ(ours, invariant_partitions(*g));
  }
  EXPECT_TRUE(block_systems(gen(5, {"(0 1 2 3 4)", "(1 2 4 3)"})).empty());
  EXPECT_THROW(block_systems(PermutationGroup(4, {parse_cycles("(0 1)", 4)})), NotTransitive);
}

TEST(Group, BlockSystemsOfSmallCatalogsMatchBruteForce) {
  for (const char* f : {"/transitive5.json", "/transitive6.json", "/transitive7.json"}) {
    for (const auto& g : load_catalog(std::string(EKR_DATA_DIR) + f)) {
      std::set<std::vector<std::vector<Point>>> ours;
      for (const auto& b : block_systems(g)) {
        ours.insert(b.blocks);
        for (const auto& p : g.generators()) EXPECT_TRUE(preserves(p, b));
      }
      EXPECT_EQ(ours, invariant_partitions(g)) << g.name();
    }
  }
}

TEST(Group, QuotientAction) {
  auto c6 = gen(6, {"(0 1 2 3 4 5)"});
  auto bs = block_systems(c6)[0];  // three blocks of size 2
  auto qa = quotient_action(c6, bs);
  EXPECT_EQ(qa.quotient.size(), 3u);
  EXPECT_EQ(qa.kernel.size(), 2u);
  auto inst = p13_instance();
  auto q = quotient_action(inst.group, inst.blocks);
  EXPECT_EQ(q.quotient.size(), 13u * inst.d());
  EXPECT_EQ(q.kernel.size() * q.quotient.size(), inst.group.size());
  for (const auto& k : q.kernel.elements()) EXPECT_TRUE(fixed_blocks(k, 13).size() == 13);
  // Trivial kernel: the regular action on the blocks of a wreath-free setup.
  auto c5 = gen(5, {"(0 1 2 3 4)"});
  BlockSystem singletons;
  for (Point x = 0; x < 5; ++x) singletons.blocks.push_back({x});
  singletons.block_size = 1;
  singletons.block_of = {0, 1, 2, 3, 4};
  auto q5 = quotient_action(c5, singletons);
  EXPECT_EQ(q5.quotient.size(), 5u);
  EXPECT_EQ(q5.kernel.size(), 1u);
  BlockSystem bad{{{0, 1}, {2, 3}, {4, 5}}, 2, {0, 0, 1, 1, 2, 2}};
  EXPECT_THROW(quotient_action(gen(6, {"(0 2 1 3 4 5)"}), bad), NotInvariant);
}

TEST(Group, NormalSubgroups) {
  auto s3 = gen(3, {"(0 1 2)", "(0 1)"});
  EXPECT_EQ(normal_closure(s3, parse_cycles("(0 1 2)", 3)).size(), 3u);
  EXPECT_THROW(normal_closure(gen(3, {"(0 1 2)"}), parse_cycles("(0 1)", 3)), NotMember);
  auto c6 = gen(6, {"(0 1 2 3 4 5)"});
  auto mins = minimal_normal_subgroups(c6);
  ASSERT_EQ(mins.size(), 2u);
  EXPECT_EQ(mins[0].size(), 2u);
  EXPECT_EQ(mins[1].size(), 3u);
  for (const auto& m : mins) EXPECT_TRUE(is_normal_in(m, c6));
}

TEST(Group, Quasiprimitive) {
  EXPECT_TRUE(is_quasiprimitive(gen(5, {"(0 1 2)", "(0 1 2 3 4)"})));
  EXPECT_FALSE(is_quasiprimitive(gen(6, {"(0 1 2 3 4 5)"})));
  auto inst = p13_instance();
  EXPECT_FALSE(is_quasiprimitive(inst.group));
  EXPECT_GT(inst.kernel.size(), 1u);
}

TEST(Group, DerangementFreeAndElementaryAbelian) {
  auto triv = enumerate({Permutation::identity(4)});
  EXPECT_TRUE(is_derangement_free(triv));
  EXPECT_FALSE(is_derangement_free(gen(4, {"(0 1)(2 3)"})));
  EXPECT_TRUE(is_derangement_free(p13_instance().kernel));
  EXPECT_TRUE(is_elementary_abelian_3(triv));
  EXPECT_TRUE(is_elementary_abelian_3(gen(6, {"(0 1 2)", "(3 4 5)"})));
  EXPECT_FALSE(is_elementary_abelian_3(gen(6, {"(0 1 2 3 4 5)"})));
}

TEST(Group, FindSemiRegular) {
  auto c15 = gen(15, {"(0 1 2 3 4 5 6 7 8 9 10 11 12 13 14)"});
  auto x = find_semi_regular(c15, 5);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(cycle_type(*x), (std::vector<std::size_t>{5, 5, 5}));
  EXPECT_TRUE(c15.contains(*x));
  auto s4 = gen(4, {"(0 1 2 3)", "(0 1)"});
  EXPECT_TRUE(find_semi_regular(s4, 4).has_value());
  EXPECT_THROW(find_semi_regular(s4, 3), ShapeMismatch);
  auto inst = p13_instance();
  EXPECT_TRUE(find_semi_regular(inst.group, 13).has_value());
}

TEST(GroupProperty, CatalogInvariants) {
  for (const char* f : {"/transitive5.json", "/transitive6.json", "/transitive7.json", "/transitive10.json"}) {
    for (const auto& raw : load_catalog(std::string(EKR_DATA_DIR) + f)) {
      if (raw.name() == "T10_44" || raw.name() == "T10_45") continue;  // A10, S10: above the cap
      auto g = enumerate(raw);
      std::size_t n = g.degree();
      // Orbit-stabilizer at every point.
      for (std::size_t w = 0; w < n; ++w) EXPECT_EQ(point_stabilizer(g, w).size() * n, g.size()) << g.name();
      // Jordan: a transitive group of degree >= 2 has a derangement.
      EXPECT_FALSE(derangements(g).empty()) << g.name();
      for (const auto& bs : block_systems(g)) {
        for (const auto& p : g.generators()) EXPECT_TRUE(preserves(p, bs));
        if (g.size() <= 2000) {
          auto qa = quotient_action(g, bs);
          EXPECT_EQ(qa.kernel.size() * qa.quotient.size(), g.size());
        }
      }
    }
  }
}

TEST(GroupProperty, MinimalNormalSubgroupsAreNormalAndIncomparable) {
  for (const auto& raw : load_catalog(std::string(EKR_DATA_DIR) + "/transitive6.json")) {
    auto g = enumerate(raw);
    auto mins = minimal_normal_subgroups(g);
    for (std::size_t i = 0; i < mins.size(); ++i) {
      for (const auto& x : mins[i].elements())
        for (const auto& y : g.elements()) EXPECT_TRUE(mins[i].contains(conjugate(x, y)));
      for (std::size_t j = 0; j < mins.size(); ++j) {
        if (i == j) continue;
        const auto& a = mins[i].elements();
        const auto& b = mins[j].elements();
        EXPECT_FALSE(std::includes(a.begin(), a.end(), b.begin(), b.end()));
      }
    }
  }
}

TEST(GroupProperty, ConstructedInstancesHaveOneBlockSystem) {
  for (const auto& s : admissible_specs(13, 3000)) {
    auto inst = build_gab(s);
    auto bs = block_systems(inst.group);
    ASSERT_EQ(bs.size(), 1u);
    EXPECT_EQ(bs[0].block_size, 3u);
    EXPECT_EQ(bs[0].blocks.size(), 13u);
    EXPECT_GT(inst.kernel.size(), 1u);
  }
}

TEST(Group, ProductReplacementStaysInGroup) {
  auto g = gen(6, {"(0 1 2 3 4 5)", "(0 1)"});
  ProductReplacement pr(g, 42);
  std::set<Permutation> seen;
  for (int i = 0; i < 2000; ++i) {
    auto x = pr.next();
    EXPECT_TRUE(g.contains(x));
    seen.insert(x);
  }
  EXPECT_GT(seen.size(), 600u);  // S6 has 720 elements
}

TEST(Group, TwoTransitive) {
  EXPECT_TRUE(is_two_transitive(gen(5, {"(0 1 2 3 4)", "(1 2 4 3)"})));
  EXPECT_FALSE(is_two_transitive(gen(5, {"(0 1 2 3 4)"})));
  EXPECT_FALSE(is_two_transitive(gen(6, {"(0 1 2 3 4 5)", "(1 5)(2 4)"})));
}

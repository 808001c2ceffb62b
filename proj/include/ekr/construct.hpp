#pragma once

// The imprimitive groups G(a,b) of degree 3p: a kernel K acting inside the
// p blocks {3i, 3i+1, 3i+2}, a semi-regular a advancing every block by one,
// and b permuting the blocks by i -> t i (mod p).
//
// Products are left to right (p*q applies p first). The paper's Frobenius
// relation beta alpha beta^-1 = alpha^t and its conjugation lemma are read as
// function composition, so they appear here as beta^-1 * alpha * beta and with
// b^v a^u in place of a^u b^v. The fixed-block congruence uses the right
// action and needs no translation.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "ekr/errors.hpp"
#include "ekr/gf3.hpp"
#include "ekr/group.hpp"
#include "ekr/perm.hpp"
#include "ekr/rational.hpp"

namespace ekr {

inline std::size_t powmod(std::size_t base, std::size_t e, std::size_t m) {
  std::size_t r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = r * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return r;
}

inline std::size_t least_primitive_root(std::size_t p) {
  if (!is_prime(p)) throw BadParams("least_primitive_root: " + std::to_string(p) + " is not prime");
  if (p == 2) return 1;
  for (std::size_t g = 2; g < p; ++g)
    if (mult_order(g, p) == p - 1) return g;
  throw InternalInvariantViolation("no primitive root found");
}

struct FrobeniusQuotient {
  Permutation alpha;  // i -> i+1
  Permutation beta;   // i -> t i
  std::size_t t = 1;
};

/// <alpha> x| <beta> on p block indices, with t the canonical twist of order d.
inline FrobeniusQuotient frobenius_quotient(std::size_t p, std::size_t d) {
  if (!is_prime(p) || p < 3) throw BadParams("frobenius_quotient: p must be an odd prime");
  if (d == 0 || (p - 1) % d != 0) throw BadDivisor(std::to_string(d) + " does not divide p-1 = " + std::to_string(p - 1));
  std::size_t t = powmod(least_primitive_root(p), (p - 1) / d, p);
  std::vector<Point> a(p), b(p);
  for (std::size_t i = 0; i < p; ++i) {
    a[i] = static_cast<Point>((i + 1) % p);
    b[i] = static_cast<Point>(i * t % p);
  }
  FrobeniusQuotient q{Permutation::from_images(std::move(a)), Permutation::from_images(std::move(b)), t};
  if (q.beta.inverse() * q.alpha * q.beta != q.alpha.pow(static_cast<long long>(t)))
    throw InternalInvariantViolation("frobenius_quotient: twist relation fails");
  return q;
}

// ---------------------------------------------------------------------------
// Kernel candidates

struct KernelCandidate {
  std::size_t p = 0;
  CyclicCode code;
  std::size_t dimension = 0;
  bool derangement_free = false;
  std::vector<std::size_t> b_invariant_for_t;  // every t in [1, p-1] fixing the code
  bool with_involution = false;                // K = code x| <r -> 1-r on every block>

  std::vector<Word> codewords() const { return code.codewords(); }
  std::size_t kernel_order() const {
    std::size_t n = 1;
    for (std::size_t i = 0; i < dimension; ++i) n *= 3;
    return with_involution ? 2 * n : n;
  }
};

inline KernelCandidate make_candidate(std::size_t p, const CyclicCode& c) {
  KernelCandidate k{p, c, c.dimension(), false, {}, false};
  k.derangement_free = c.derangement_free();
  for (std::size_t t = 1; t < p; ++t)
    if (c.multiplier_invariant(t)) k.b_invariant_for_t.push_back(t);
  return k;
}

/// Derangement-free cyclic codes fixed by the multiplier t, by dimension.
/// Without `require_involution_free` every code is listed a second time with
/// the all-blocks reflection adjoined.
inline std::vector<KernelCandidate> kernel_search(std::size_t p, std::size_t t, bool require_involution_free = true) {
  if (!is_prime(p) || p == 3) throw BadParams("kernel_search: p must be a prime other than 3");
  std::vector<KernelCandidate> out;
  for (const auto& c : cyclic_codes(p)) {
    if (!c.multiplier_invariant(t % p)) continue;
    auto k = make_candidate(p, c);
    if (!k.derangement_free) continue;
    out.push_back(k);
    if (!require_involution_free) {
      k.with_involution = true;
      out.push_back(std::move(k));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.dimension < b.dimension; });
  return out;
}

// ---------------------------------------------------------------------------
// Specification and construction

enum class BAction { Pointwise, Transposition };

inline const char* to_string(BAction b) { return b == BAction::Pointwise ? "pointwise" : "transposition"; }

struct GabSpec {
  std::size_t p = 0;
  std::size_t d = 1;
  std::optional<std::size_t> t;  // canonical twist when absent
  std::vector<Word> codeword_gens;
  bool kernel_reflection = false;
  BAction b_on_B1 = BAction::Pointwise;
};

/// A transposition-type b with d odd has b^d = the reflection, which then
/// lies in the kernel.
inline bool kernel_has_involution(const GabSpec& s) {
  return s.kernel_reflection || (s.b_on_B1 == BAction::Transposition && s.d % 2 == 1);
}

inline Rational expected_density(const GabSpec& s) {
  Rational one(1);
  std::size_t num = (s.b_on_B1 == BAction::Transposition && s.d % 2 == 0 && !kernel_has_involution(s)) ? 6 : 3;
  Rational r = make_rational(num, s.d);
  return r > one ? r : one;
}

/// Encodes p, d, the code (generator coefficients, highest first) and the
/// action of b.
inline std::string gab_name(const GabSpec& s, const CyclicCode& code) {
  std::string g;
  for (auto it = code.generator().coeffs().rbegin(); it != code.generator().coeffs().rend(); ++it)
    g += static_cast<char>('0' + *it);
  std::string n = "G(a,b)_p" + std::to_string(s.p) + "_d" + std::to_string(s.d) + "_dim" +
                  std::to_string(code.dimension()) + "_g" + g + "_" + to_string(s.b_on_B1);
  if (s.kernel_reflection) n += "_refl";
  return n;
}

struct GabInstance {
  GabSpec spec;
  std::size_t t = 1;
  CyclicCode code{5, Poly3({2, 1})};
  PermutationGroup group;
  PermutationGroup kernel;
  Permutation a, b;
  FrobeniusQuotient quotient;
  BlockSystem blocks;
  bool kernel_has_involution = false;
  std::vector<std::string> laws;  // verified, in order

  std::size_t p() const { return spec.p; }
  std::size_t d() const { return spec.d; }
  /// a^u b^v with exponents reduced.
  Permutation element(long long u, long long v) const { return a.pow(u) * b.pow(v); }
};

namespace detail {

inline Permutation rotation_by(const Word& w) {
  std::vector<Point> img(3 * w.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t r = 0; r < 3; ++r) img[3 * i + r] = static_cast<Point>(3 * i + (r + static_cast<std::size_t>(w[i])) % 3);
  return Permutation::from_images(std::move(img));
}

/// r -> 1 - r (mod 3) on every block: swaps rails 0 and 1, fixes rail 2.
inline Permutation all_blocks_reflection(std::size_t p) {
  std::vector<Point> img(3 * p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t r = 0; r < 3; ++r) img[3 * i + r] = static_cast<Point>(3 * i + (4 - r) % 3);
  return Permutation::from_images(std::move(img));
}

inline void law(GabInstance& inst, bool ok, const std::string& name, const std::string& detail = {}) {
  if (!ok) throw ConstructionInvalid(name, detail);
  inst.laws.push_back(name);
}

/// Minimal normal subgroups of g that lie in k: the inclusion-minimal normal
/// closures of nontrivial elements of k.
inline std::vector<PermutationGroup> minimal_normal_in(const PermutationGroup& g, const PermutationGroup& k) {
  std::vector<PermutationGroup> closures;
  std::unordered_set<Permutation, PermutationHash> seen;
  for (const auto& x : k.elements()) {
    if (x.is_identity() || seen.count(x)) continue;
    auto cls = conjugacy_class(g, x);
    seen.insert(cls.begin(), cls.end());
    auto n = subgroup_generated(g.degree(), cls, g.size());
    if (std::none_of(closures.begin(), closures.end(), [&](const auto& h) { return h.elements() == n.elements(); }))
      closures.push_back(std::move(n));
  }
  std::vector<PermutationGroup> out;
  for (const auto& a : closures) {
    bool smaller = std::any_of(closures.begin(), closures.end(), [&](const auto& b) {
      return b.size() < a.size() &&
             std::includes(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end());
    });
    if (!smaller) out.push_back(a);
  }
  return out;
}

}  // namespace detail

/// Builds G(a,b) and checks the structural laws after the fact. A failed law
/// raises ConstructionInvalid naming it.
inline GabInstance build_gab(const GabSpec& spec, std::size_t cap = kDefaultEnumerationCap) {
  std::size_t p = spec.p;
  if (!is_prime(p) || p < 5) throw BadParams("build_gab: p must be a prime >= 5");
  GabInstance inst;
  inst.spec = spec;
  inst.quotient = frobenius_quotient(p, spec.d);
  inst.t = inst.quotient.t;
  if (spec.t) {
    std::size_t t = *spec.t % p;
    if (t == 0 || mult_order(t, p) != spec.d)
      throw BadParams("twist " + std::to_string(*spec.t) + " does not have order d = " + std::to_string(spec.d));
    inst.t = t;
    std::vector<Point> img(p);
    for (std::size_t i = 0; i < p; ++i) img[i] = static_cast<Point>(i * t % p);
    inst.quotient.beta = Permutation::from_images(std::move(img));
    inst.quotient.t = t;
  }
  if (spec.codeword_gens.empty()) throw BadParams("build_gab: kernel needs at least one codeword");
  inst.code = code_from_words(p, spec.codeword_gens);
  inst.kernel_has_involution = kernel_has_involution(spec);

  std::size_t kernel_order = 1;
  for (std::size_t i = 0; i < inst.code.dimension(); ++i) kernel_order *= 3;
  if (inst.kernel_has_involution) kernel_order *= 2;
  if (kernel_order * p * spec.d > cap) throw TooLarge("G(a,b) would have more than " + std::to_string(cap) + " elements");

  std::size_t n = 3 * p;
  std::vector<Point> ai(n), bi(n);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t r = 0; r < 3; ++r) {
      ai[3 * i + r] = static_cast<Point>(3 * ((i + 1) % p) + r);
      std::size_t rail = spec.b_on_B1 == BAction::Pointwise ? r : (4 - r) % 3;
      bi[3 * i + r] = static_cast<Point>(3 * (i * inst.t % p) + rail);
    }
  }
  inst.a = Permutation::from_images(std::move(ai));
  inst.b = Permutation::from_images(std::move(bi));

  std::vector<Permutation> kgens;
  for (const auto& w : spec.codeword_gens) kgens.push_back(detail::rotation_by(w));
  if (spec.kernel_reflection) kgens.push_back(detail::all_blocks_reflection(p));
  std::vector<Permutation> gens = kgens;
  gens.push_back(inst.a);
  gens.push_back(inst.b);
  inst.group = enumerate(std::move(gens), cap, gab_name(spec, inst.code));

  // The triples must be the only invariant partition.
  auto systems = block_systems(inst.group);
  detail::law(inst, systems.size() == 1 && systems[0].block_size == 3,
              "the blocks {3i,3i+1,3i+2} form the only invariant partition",
              std::to_string(systems.size()) + " nontrivial block systems found");
  inst.blocks = systems[0];
  for (std::size_t x = 0; x < n; ++x) {
    if (inst.blocks.block_of[x] != x / 3)
      throw ConstructionInvalid("the blocks {3i,3i+1,3i+2} form the only invariant partition", "unexpected blocks");
  }

  auto qa = quotient_action(inst.group, inst.blocks, cap);
  inst.kernel = qa.kernel;
  inst.kernel.set_name("K");
  detail::law(inst,
              qa.quotient.size() == p * spec.d && qa.project(inst.a) == inst.quotient.alpha &&
                  qa.project(inst.b) == inst.quotient.beta,
              "quotient is <alpha> x| <beta> of order pd",
              "quotient order " + std::to_string(qa.quotient.size()));
  detail::law(inst, inst.group.size() == inst.kernel.size() * p * spec.d, "|G| = |K| p d",
              std::to_string(inst.group.size()) + " vs " + std::to_string(inst.kernel.size()) + "*" +
                  std::to_string(p * spec.d));
  std::vector<Permutation> expected_k;
  for (const auto& w : inst.code.basis()) expected_k.push_back(detail::rotation_by(w));
  if (inst.kernel_has_involution) expected_k.push_back(detail::all_blocks_reflection(p));
  auto generated_k = subgroup_generated(n, expected_k, cap);
  detail::law(inst, generated_k.elements() == inst.kernel.elements(), "kernel is the supplied code",
              "kernel has order " + std::to_string(inst.kernel.size()) + ", supplied words give " +
                  std::to_string(generated_k.size()));

  // <K,a> is the preimage of <alpha>: the elements acting on blocks as translations.
  auto is_translation = [&](const Permutation& x) {
    auto q = qa.project(x);
    std::size_t c = q[0];
    for (std::size_t i = 0; i < p; ++i)
      if (q[i] != (i + c) % p) return false;
    return true;
  };
  std::uint64_t ob = order(inst.b);
  bool meet_ok = ob % spec.d == 0 && inst.kernel.contains(inst.b.pow(static_cast<long long>(spec.d)));
  for (std::uint64_t j = 0; j < ob && meet_ok; ++j) meet_ok = is_translation(inst.b.pow(static_cast<long long>(j))) == (j % spec.d == 0);
  detail::law(inst, meet_ok, "<K,a> meets <b> in <b^d>");

  const auto& kels = inst.kernel.elements();
  detail::law(inst, std::all_of(kels.begin(), kels.end(), [](const Permutation& k) { return 6 % order(k) == 0; }),
              "every kernel element has order dividing 6");
  detail::law(inst, inst.kernel.size() > 1 && is_derangement_free(inst.kernel), "kernel is nontrivial and derangement-free");
  auto mins = detail::minimal_normal_in(inst.group, inst.kernel);
  detail::law(inst, std::all_of(mins.begin(), mins.end(), [](const auto& m) { return is_elementary_abelian_3(m); }),
              "minimal normal subgroups inside K are elementary abelian 3-groups");
  return inst;
}

/// Specs for every admissible configuration at prime p with |G| <= max_order:
/// each divisor d of p-1, each derangement-free code fixed by the canonical
/// twist, with b pointwise, b a transposition, and the reflection adjoined.
inline std::vector<GabSpec> admissible_specs(std::size_t p, std::size_t max_order) {
  std::vector<GabSpec> out;
  auto codes = cyclic_codes(p);
  for (std::size_t d = 1; d < p; ++d) {
    if ((p - 1) % d) continue;
    std::size_t t = frobenius_quotient(p, d).t;
    for (const auto& c : codes) {
      if (!c.multiplier_invariant(t) || !c.derangement_free()) continue;
      std::size_t k = 1;
      for (std::size_t i = 0; i < c.dimension(); ++i) k *= 3;
      auto gens = std::vector<Word>{c.basis().front()};
      for (auto [action, refl] : {std::pair{BAction::Pointwise, false}, std::pair{BAction::Transposition, false},
                                  std::pair{BAction::Pointwise, true}}) {
        GabSpec s{p, d, std::nullopt, gens, refl, action};
        std::size_t order = k * p * d * (kernel_has_involution(s) ? 2 : 1);
        if (order <= max_order) out.push_back(std::move(s));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fixed blocks and conjugates

/// The block fixed by a^u b^v, 0-based. Solves (t^v - 1) i = (1 - u) t^v - 1
/// (mod p) for the 1-based index i.
inline std::size_t fixed_block_index(long long u, long long v, std::size_t t, std::size_t p) {
  auto mod = [p](long long x) { return static_cast<std::size_t>(((x % static_cast<long long>(p)) + static_cast<long long>(p)) % static_cast<long long>(p)); };
  // t has order dividing p-1, so v is reduced mod p-1.
  auto vv = static_cast<std::size_t>(((v % static_cast<long long>(p - 1)) + static_cast<long long>(p - 1)) % static_cast<long long>(p - 1));
  std::size_t tv = powmod(t, vv, p);
  if (tv == 1) throw NoUniqueBlock("t^v = 1 (mod p): a^u b^v acts on the blocks as a translation");
  std::size_t lhs = (tv + p - 1) % p;
  std::size_t rhs = (mod(1 - u) * tv % p + p - 1) % p;
  std::size_t i = rhs * powmod(lhs, p - 2, p) % p;  // Fermat inverse
  if (i == 0) i = p;
  return i - 1;
}

/// Blocks mapped to themselves by x.
inline std::vector<std::size_t> fixed_blocks(const Permutation& x, std::size_t p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p; ++i)
    if (x[3 * i] / 3 == i) out.push_back(i);
  return out;
}

/// The n with (1 - t^v) n = u (mod p); a^n (b^v a^u) a^-n then lies in K b^v.
inline std::size_t conjugating_exponent(long long u, long long v, std::size_t t, std::size_t p) {
  auto vv = static_cast<std::size_t>(((v % static_cast<long long>(p - 1)) + static_cast<long long>(p - 1)) % static_cast<long long>(p - 1));
  std::size_t tv = powmod(t, vv, p);
  if (tv == 1) throw NoUniqueBlock("t^v = 1 (mod p): no conjugating power of a");
  std::size_t c = (1 + p - tv) % p;
  std::size_t uu = static_cast<std::size_t>(((u % static_cast<long long>(p)) + static_cast<long long>(p)) % static_cast<long long>(p));
  return uu * powmod(c, p - 2, p) % p;
}

// ---------------------------------------------------------------------------
// Kernels with involutions

/// Right transversal of E = <elements of order 3> in K made of the identity
/// and involutions. An order-6 representative k is replaced by k^3, which
/// lies in the same coset.
inline std::vector<Permutation> involution_transversal(const PermutationGroup& k) {
  const auto& els = k.elements();
  std::vector<Permutation> threes;
  for (const auto& x : els)
    if (order(x) == 3) threes.push_back(x);
  auto e = subgroup_generated(k.degree(), threes, k.size(), "E");
  std::vector<bool> covered(els.size(), false);
  std::vector<Permutation> out;
  for (std::size_t i = 0; i < els.size(); ++i) {
    if (covered[i]) continue;
    Permutation rep = els[i];
    auto o = order(rep);
    if (o == 6) rep = rep.pow(3);
    else if (o != 1 && o != 2)
      throw InternalInvariantViolation("involution_transversal: element of order " + std::to_string(o) + " outside E");
    if (!e.contains(rep * els[i].inverse()))
      throw InternalInvariantViolation("involution_transversal: replacement left the coset");
    for (const auto& x : e.elements()) covered[*k.index_of(x * rep)] = true;
    out.push_back(std::move(rep));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sylow subgroups of prime-degree groups

struct SylowCheck {
  bool is_cyclic_P = false;
  bool self_normalizing = false;
  bool H_equals_P = false;
  std::size_t normalizer_order = 0;
  bool biconditional() const { return self_normalizing == H_equals_P; }
};

inline SylowCheck sylow_self_normalizing_check(const PermutationGroup& h) {
  std::size_t p = h.degree();
  if (!is_prime(p)) throw BadParams("sylow_self_normalizing_check: degree is not prime");
  if (!is_transitive(h)) throw NotTransitive("sylow_self_normalizing_check: group is not transitive");
  const auto& els = h.elements();
  auto it = std::find_if(els.begin(), els.end(), [p](const Permutation& x) { return order(x) == p; });
  if (it == els.end()) throw InternalInvariantViolation("transitive group of prime degree without an element of order p");
  // p^2 does not divide p!, so <x> for x of order p is a Sylow subgroup.
  auto sylow = subgroup_generated(p, {*it}, h.size(), "P");
  SylowCheck out;
  out.is_cyclic_P = sylow.size() == p;
  std::size_t nh = 0;
  for (const auto& x : els)
    if (sylow.contains(conjugate(*it, x))) ++nh;
  out.normalizer_order = nh;
  out.self_normalizing = nh == sylow.size();
  out.H_equals_P = h.size() == sylow.size();
  return out;
}

}  // namespace ekr

#pragma once

// JSON files: groups, catalogs, Sigma tables, G(a,b) specs and density
// reports.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ekr/construct.hpp"
#include "ekr/dergraph.hpp"
#include "ekr/errors.hpp"
#include "ekr/gamma.hpp"
#include "ekr/group.hpp"
#include "ekr/rational.hpp"

namespace ekr {

using Json = nlohmann::ordered_json;

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) throw IoError("cannot write " + path);
}

// ---------------------------------------------------------------------------
// Groups

inline PermutationGroup group_from_json(const Json& j) {
  try {
    auto degree = j.at("degree").get<long long>();
    if (degree < 1 || degree > 65535) throw ParseError("degree out of range");
    std::vector<Permutation> gens;
    for (const auto& g : j.at("generators")) {
      auto images = g.get<std::vector<long long>>();
      if (images.size() != static_cast<std::size_t>(degree))
        throw DegreeMismatch("generator has " + std::to_string(images.size()) + " images, degree is " + std::to_string(degree));
      gens.push_back(Permutation::from_images(std::span<const long long>(images)));
    }
    return PermutationGroup(static_cast<std::size_t>(degree), std::move(gens), j.value("name", std::string{}));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("group file: ") + e.what());
  }
}

inline Json group_to_json(const PermutationGroup& g) {
  Json gens = Json::array();
  for (const auto& p : g.generators()) gens.push_back(std::vector<std::size_t>(p.images().begin(), p.images().end()));
  return Json{{"name", g.name()}, {"degree", g.degree()}, {"generators", gens}};
}

inline PermutationGroup load_group(const std::string& path) { return group_from_json(read_json_file(path)); }

inline std::vector<PermutationGroup> catalog_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("catalog must be a JSON array");
  std::vector<PermutationGroup> out;
  for (const auto& e : j) out.push_back(group_from_json(e));
  return out;
}

inline std::vector<PermutationGroup> load_catalog(const std::string& path) {
  return catalog_from_json(read_json_file(path));
}

// ---------------------------------------------------------------------------
// Sigma tables (1-based indices, 0-based part permutations)

inline void apply_sigma_json(GammaParams& p, const Json& j) {
  if (!j.is_array()) throw ParseError("sigma file must be a JSON array");
  try {
    for (const auto& e : j) {
      auto key = std::tuple{e.at("b").get<std::size_t>(), e.at("b2").get<std::size_t>(), e.at("c").get<std::size_t>(),
                            e.at("c2").get<std::size_t>()};
      p.sigma[key] = e.at("perm").get<std::vector<std::size_t>>();
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("sigma file: ") + e.what());
  }
}

inline Json sigma_to_json(const GammaParams& p) {
  Json out = Json::array();
  for (const auto& [key, perm] : p.sigma) {
    auto [b, b2, c, c2] = key;
    out.push_back(Json{{"b", b}, {"b2", b2}, {"c", c}, {"c2", c2}, {"perm", perm}});
  }
  return out;
}

/// "m,n,k,r[,sigma-file]" as used on the command line. The optional fifth
/// field is returned through `sigma_file`.
inline GammaParams parse_gamma_params(const std::string& text, std::string* sigma_file = nullptr) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) items.push_back(item);
  if (items.size() == 5 && sigma_file && !items[4].empty()) {
    *sigma_file = items[4];
    items.pop_back();
  }
  if (items.size() != 4) throw ParseError("gamma parameters are m,n,k,r[,sigma-file]");
  std::vector<std::size_t> v;
  for (const auto& it : items) {
    try {
      std::size_t used = 0;
      long long x = std::stoll(it, &used);
      if (used != it.size() || x < 0) throw ParseError("");
      v.push_back(static_cast<std::size_t>(x));
    } catch (const std::exception&) {
      throw ParseError("gamma parameters must be non-negative integers: '" + text + "'");
    }
  }
  GammaParams p;
  p.m = v[0];
  p.n_blocks = v[1];
  p.k = v[2];
  p.r = v[3];
  return p;
}

// ---------------------------------------------------------------------------
// G(a,b) specs

inline GabSpec gab_spec_from_json(const Json& j) {
  try {
    GabSpec s;
    s.p = j.at("p").get<std::size_t>();
    s.d = j.at("d").get<std::size_t>();
    if (j.contains("t")) s.t = j.at("t").get<std::size_t>();
    auto action = j.at("b_on_B1").get<std::string>();
    if (action == "pointwise")
      s.b_on_B1 = BAction::Pointwise;
    else if (action == "transposition")
      s.b_on_B1 = BAction::Transposition;
    else
      throw ParseError("b_on_B1 must be \"pointwise\" or \"transposition\"");
    const auto& k = j.at("kernel");
    s.codeword_gens = k.at("codeword_gens").get<std::vector<Word>>();
    s.kernel_reflection = k.value("reflection", false);
    return s;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("G(a,b) spec: ") + e.what());
  }
}

inline Json gab_spec_to_json(const GabSpec& s) {
  Json k{{"codeword_gens", s.codeword_gens}};
  if (s.kernel_reflection) k["reflection"] = true;
  Json j{{"p", s.p}, {"d", s.d}};
  if (s.t) j["t"] = *s.t;
  j["b_on_B1"] = to_string(s.b_on_B1);
  j["kernel"] = k;
  return j;
}

// ---------------------------------------------------------------------------
// Reports

inline Json rational_json(const Rational& r) {
  return Json{{"num", numerator_of(r).convert_to<long long>()}, {"den", denominator_of(r).convert_to<long long>()}};
}

inline Json report_to_json(const DensityReport& r) {
  Json j;
  j["name"] = r.group_name;
  j["degree"] = r.degree;
  j["order"] = r.group_order ? Json(*r.group_order) : Json(nullptr);
  j["stabilizer"] = r.stabilizer_order ? Json(*r.stabilizer_order) : Json(nullptr);
  if (r.resolved() && r.alpha_lo)
    j["alpha"] = *r.alpha_lo;
  else
    j["alpha"] = Json{{"lo", r.alpha_lo ? Json(*r.alpha_lo) : Json(nullptr)},
                      {"hi", r.alpha_hi ? Json(*r.alpha_hi) : Json(nullptr)}};
  if (r.resolved())
    j["rho"] = rational_json(r.rho());
  else
    j["rho"] = Json{{"lo", rational_json(r.rho_lo)}, {"hi", rational_json(r.rho_hi)}};
  j["method"] = to_string(r.method);
  j["literature_assumed"] = r.literature_assumed;
  j["clique_bound"] = r.clique_bound;
  j["lower_bound_source"] = r.lower_bound_source;
  j["witness_sizes"] = Json{{"coclique", r.witness_coclique.size()}, {"clique", r.witness_clique.size()}};
  j["notes"] = r.notes;
  return j;
}

inline std::string report_text(const DensityReport& r) {
  std::ostringstream os;
  os << r.group_name << "  degree " << r.degree;
  if (r.group_order) os << "  order " << *r.group_order << "  stabilizer " << *r.stabilizer_order;
  os << '\n';
  if (r.resolved())
    os << "  rho = " << to_string(r.rho());
  else
    os << "  rho in [" << to_string(r.rho_lo) << ", " << to_string(r.rho_hi) << "]";
  os << "  via " << to_string(r.method);
  if (r.literature_assumed) os << " (literature-assumed)";
  os << '\n';
  if (r.alpha_lo) {
    os << "  alpha ";
    if (r.resolved())
      os << *r.alpha_lo;
    else
      os << "in [" << *r.alpha_lo << ", " << *r.alpha_hi << "]";
    os << "  clique bound " << r.clique_bound << "  lower bound from " << r.lower_bound_source << '\n';
  }
  for (const auto& n : r.notes) os << "  note: " << n << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Catalog classification tags

struct GroupTags {
  bool primitive = false;
  std::optional<bool> quasiprimitive;  // needs enumeration
  std::vector<std::size_t> block_sizes;
};

inline GroupTags classify(const PermutationGroup& g) {
  GroupTags t;
  for (const auto& bs : block_systems(g)) t.block_sizes.push_back(bs.block_size);
  t.primitive = t.block_sizes.empty();
  if (t.primitive)
    t.quasiprimitive = true;
  else if (g.is_enumerated())
    t.quasiprimitive = is_quasiprimitive(g);
  return t;
}

inline Json tags_to_json(const GroupTags& t) {
  return Json{{"primitive", t.primitive},
              {"quasiprimitive", t.quasiprimitive ? Json(*t.quasiprimitive) : Json(nullptr)},
              {"block_systems", t.block_sizes}};
}

}  // namespace ekr

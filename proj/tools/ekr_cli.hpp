#pragma once

// Command-line front end. run_cli writes to the given streams so tests can
// call it in-process.
//
// Exit codes: 0 success, 1 bad input, 2 unresolved density or a failed
// catalog entry, 3 a G(a,b) law failed, 4 a density check disagreed.

#include <chrono>
#include <filesystem>
#include <future>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ekr/construct.hpp"
#include "ekr/dergraph.hpp"
#include "ekr/gamma.hpp"
#include "ekr/io.hpp"
#include "ekr/solver.hpp"

namespace ekr::cli {

struct Common {
  bool json = false;
  bool deterministic = false;
  std::size_t exact_cap = 20000;
  bool literature = false;
  std::size_t threads = 1;

  StrategyConfig config() const {
    StrategyConfig c;
    c.exact_cap = exact_cap;
    c.allow_two_transitive_literature = literature;
    c.threads = threads;
    return c;
  }
};

inline void stamp(Json& j, const Common& c) {
  if (c.deterministic) return;
  auto now = std::chrono::system_clock::now().time_since_epoch();
  j["generated_at"] = std::chrono::duration_cast<std::chrono::seconds>(now).count();
}

inline std::string file_stem_for(const std::string& name) {
  std::string s;
  for (char ch : name) s += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-') ? ch : '_';
  return s.empty() ? "group" : s;
}

inline int cmd_density(const std::string& path, const Common& c, std::ostream& out) {
  auto g = load_group(path);
  auto r = intersection_density(g, c.config());
  if (c.json) {
    Json j = report_to_json(r);
    stamp(j, c);
    out << j.dump(2) << '\n';
  } else {
    out << report_text(r);
  }
  return r.resolved() ? 0 : 2;
}

struct GammaArgs {
  std::string params;
  std::string sigma;
  std::string format;
  std::string out;
  bool alpha = false;
};

inline int cmd_gamma(const GammaArgs& a, const Common& c, std::ostream& out) {
  std::string sigma_file = a.sigma;
  auto p = parse_gamma_params(a.params, &sigma_file);
  if (!a.sigma.empty() && sigma_file != a.sigma) throw ParseError("sigma file given twice");
  if (!sigma_file.empty()) apply_sigma_json(p, read_json_file(sigma_file));
  auto g = build_gamma(p);
  if (!a.format.empty()) {
    auto fmt = a.format == "dimacs" ? GraphFormat::Dimacs : GraphFormat::Dot;
    if (a.out.empty())
      export_graph(g, fmt, out);
    else
      write_text_file(a.out, export_graph(g, fmt));
  }
  if (a.alpha) {
    SolveOptions opt;
    opt.threads = c.threads;
    auto res = max_coclique(g, opt);
    std::size_t formula = gamma_alpha_formula(p);
    bool match = res.proven_optimal && res.size == formula;
    if (c.json) {
      Json j{{"params", a.params}, {"vertices", g.vertex_count()}, {"alpha_solver", res.size},
             {"alpha_formula", formula}, {"verdict", match ? "MATCH" : "MISMATCH"}};
      stamp(j, c);
      out << j.dump(2) << '\n';
    } else {
      out << "alpha: solver " << res.size << ", formula " << formula << ", " << (match ? "MATCH" : "MISMATCH") << '\n';
    }
    return match ? 0 : 4;
  }
  if (a.format.empty() && !c.json)
    out << "Gamma(" << a.params << "): " << g.vertex_count() << " vertices, " << g.edge_count() << " edges\n";
  return 0;
}

struct ConstructArgs {
  std::string spec;
  std::string out_dir;
  bool verify_density = false;
};

inline int cmd_construct(const ConstructArgs& a, const Common& c, std::ostream& out) {
  auto spec = gab_spec_from_json(read_json_file(a.spec));
  std::ostringstream log;
  GabInstance inst;
  try {
    inst = build_gab(spec);
  } catch (const ConstructionInvalid& e) {
    out << "construction failed: " << e.law << '\n' << "  " << e.what() << '\n';
    return 3;
  }
  log << inst.group.name() << "\n  p " << inst.p() << "  d " << inst.d() << "  t " << inst.t << "  |K| "
      << inst.kernel.size() << "  |G| " << inst.group.size() << "\n";
  for (const auto& l : inst.laws) log << "  verified: " << l << '\n';
  Rational expected = expected_density(spec);
  log << "  expected rho " << to_string(expected) << '\n';
  int rc = 0;
  Json j{{"name", inst.group.name()}, {"p", inst.p()}, {"d", inst.d()}, {"t", inst.t},
         {"kernel_order", inst.kernel.size()}, {"order", inst.group.size()},
         {"kernel_has_involution", inst.kernel_has_involution}, {"laws", inst.laws},
         {"expected_rho", rational_json(expected)}};
  if (a.verify_density) {
    StrategyConfig cfg = c.config();
    cfg.force_exact = true;
    auto r = intersection_density(inst.group, cfg);
    j["report"] = report_to_json(r);
    if (!r.resolved()) {
      log << "  rho unresolved in [" << to_string(r.rho_lo) << ", " << to_string(r.rho_hi) << "]\n";
      rc = 2;
    } else {
      bool ok = r.rho() == expected;
      log << "  rho = " << to_string(r.rho()) << " via " << to_string(r.method) << ", expected " << to_string(expected)
          << ": " << (ok ? "MATCH" : "MISMATCH") << '\n';
      rc = ok ? 0 : 4;
    }
  }
  if (!a.out_dir.empty()) {
    std::filesystem::create_directories(a.out_dir);
    auto stem = (std::filesystem::path(a.out_dir) / file_stem_for(inst.group.name())).string();
    write_text_file(stem + ".json", group_to_json(inst.group).dump(1) + "\n");
    write_text_file(stem + ".log", log.str());
    log << "  wrote " << stem << ".json\n";
  }
  if (c.json) {
    stamp(j, c);
    out << j.dump(2) << '\n';
  } else {
    out << log.str();
  }
  return rc;
}

struct CatalogEntry {
  std::string name;
  std::optional<DensityReport> report;
  std::optional<GroupTags> tags;
  std::string error;
};

inline CatalogEntry catalog_entry(const PermutationGroup& g, const StrategyConfig& cfg) {
  CatalogEntry e{g.name(), std::nullopt, std::nullopt, {}};
  try {
    e.report = intersection_density(g, cfg);
    auto enumerated = g;
    if (e.report->group_order) enumerated = enumerate(g, cfg.enumeration_cap);
    e.tags = classify(enumerated);
  } catch (const std::exception& ex) {
    e.error = ex.what();
  }
  return e;
}

struct CatalogArgs {
  std::string file;
  bool summary = false;
  std::size_t jobs = 1;
};

inline int cmd_catalog(const CatalogArgs& a, const Common& c, std::ostream& out) {
  auto groups = load_catalog(a.file);
  auto cfg = c.config();
  std::vector<CatalogEntry> entries(groups.size());
  std::size_t jobs = std::max<std::size_t>(1, a.jobs);
  for (std::size_t start = 0; start < groups.size(); start += jobs) {
    std::vector<std::future<CatalogEntry>> batch;
    for (std::size_t i = start; i < std::min(groups.size(), start + jobs); ++i)
      batch.push_back(std::async(std::launch::async, catalog_entry, std::cref(groups[i]), std::cref(cfg)));
    for (std::size_t i = 0; i < batch.size(); ++i) entries[start + i] = batch[i].get();
  }

  std::set<Rational> values;
  std::map<std::string, std::size_t> per_method;
  std::vector<std::string> unresolved, failed;
  Json list = Json::array();
  for (const auto& e : entries) {
    Json je{{"name", e.name}};
    if (!e.report) {
      failed.push_back(e.name);
      je["error"] = e.error;
    } else {
      je["report"] = report_to_json(*e.report);
      if (e.tags) je["tags"] = tags_to_json(*e.tags);
      ++per_method[to_string(e.report->method)];
      if (e.report->resolved())
        values.insert(e.report->rho());
      else
        unresolved.push_back(e.name);
    }
    list.push_back(std::move(je));
  }
  Json set = Json::array();
  for (const auto& v : values) set.push_back(rational_json(v));

  if (c.json) {
    Json j{{"catalog", a.file}, {"entries", list}, {"densities", set}, {"methods", per_method},
           {"unresolved", unresolved}, {"failed", failed}};
    stamp(j, c);
    out << j.dump(2) << '\n';
  } else {
    if (!a.summary) {
      for (const auto& e : entries) {
        if (e.report)
          out << report_text(*e.report);
        else
          out << e.name << "\n  error: " << e.error << '\n';
      }
    }
    out << "densities: {";
    bool first = true;
    for (const auto& v : values) {
      out << (first ? "" : ", ") << to_string(v);
      first = false;
    }
    out << "}\n";
    for (const auto& [m, n] : per_method) out << "  " << m << ": " << n << '\n';
    if (!unresolved.empty()) {
      out << "unresolved (" << unresolved.size() << "):";
      for (const auto& n : unresolved) out << ' ' << n;
      out << '\n';
    }
    if (!failed.empty()) {
      out << "failed (" << failed.size() << "):";
      for (const auto& n : failed) out << ' ' << n;
      out << '\n';
    }
  }
  return failed.empty() ? 0 : 2;
}

struct SolveArgs {
  std::string file;
  bool clique = false;
  std::optional<std::uint64_t> budget;
};

inline int cmd_solve(const SolveArgs& a, const Common& c, std::ostream& out) {
  std::ifstream in(a.file);
  if (!in) throw IoError("cannot open " + a.file);
  auto g = parse_dimacs(in);
  SolveOptions opt;
  opt.node_budget = a.budget;
  opt.threads = c.threads;
  auto res = a.clique ? max_clique(g, opt) : max_coclique(g, opt);
  std::vector<std::size_t> one_based;
  for (auto v : res.witness) one_based.push_back(v + 1);
  if (c.json) {
    Json j{{"problem", a.clique ? "clique" : "coclique"}, {"size", res.size}, {"optimal", res.proven_optimal},
           {"nodes", res.nodes_explored}, {"witness", one_based}};
    stamp(j, c);
    out << j.dump(2) << '\n';
  } else {
    out << (a.clique ? "omega " : "alpha ") << res.size << (res.proven_optimal ? "" : " (budget exhausted, lower bound)")
        << "\nwitness";
    for (auto v : one_based) out << ' ' << v;
    out << '\n';
  }
  return res.proven_optimal ? 0 : 2;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Intersection density of transitive permutation groups", "ekr"};
  app.fallthrough();
  app.require_subcommand(1);
  Common c;
  app.add_flag("--json", c.json, "Print JSON instead of text");
  app.add_flag("--deterministic", c.deterministic, "Omit the timestamp from JSON output");
  app.add_option("--threads", c.threads, "Solver threads")->check(CLI::PositiveNumber);

  auto* den = app.add_subcommand("density", "Intersection density of one group file");
  std::string group_file;
  den->add_option("group-file", group_file)->required();
  den->add_option("--exact-cap", c.exact_cap, "Largest group order handed to the exact solver");
  den->add_flag("--allow-2transitive-literature", c.literature, "Take rho = 1 for 2-transitive groups from the literature");
  den->add_flag("--json", c.json);

  auto* gam = app.add_subcommand("gamma", "Build a Gamma graph from m,n,k,r");
  GammaArgs ga;
  gam->add_option("params", ga.params, "m,n,k,r[,sigma-file]")->required();
  gam->add_option("--sigma", ga.sigma, "Sigma table (JSON)");
  gam->add_option("--export", ga.format, "Graph format")->check(CLI::IsMember({"dimacs", "dot"}));
  gam->add_option("--out", ga.out, "Write the exported graph here instead of stdout");
  gam->add_flag("--alpha", ga.alpha, "Compare the solver's alpha with the closed form");
  gam->add_flag("--json", c.json);

  auto* con = app.add_subcommand("construct", "Build and verify a G(a,b) group");
  ConstructArgs ca;
  con->add_option("spec-file", ca.spec)->required();
  con->add_flag("--verify-density", ca.verify_density, "Solve for rho and compare with the prediction");
  con->add_option("--out", ca.out_dir, "Directory for the group file and log");
  con->add_option("--exact-cap", c.exact_cap);
  con->add_flag("--json", c.json);

  auto* cat = app.add_subcommand("catalog", "Densities of every group in a catalog");
  CatalogArgs ka;
  cat->add_option("catalog-file", ka.file)->required();
  cat->add_flag("--summary", ka.summary, "Only print the density set and counts");
  cat->add_option("--jobs", ka.jobs, "Entries computed concurrently")->check(CLI::PositiveNumber);
  cat->add_option("--exact-cap", c.exact_cap);
  cat->add_flag("--allow-2transitive-literature", c.literature);
  cat->add_flag("--json", c.json);

  auto* sol = app.add_subcommand("solve", "Maximum coclique (or clique) of a DIMACS graph");
  SolveArgs sa;
  sol->add_option("dimacs-file", sa.file)->required();
  sol->add_flag("--clique", sa.clique, "Maximum clique instead of coclique");
  sol->add_option("--budget", sa.budget, "Node budget");
  sol->add_flag("--json", c.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "ekr: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*den) return cmd_density(group_file, c, out);
    if (*gam) return cmd_gamma(ga, c, out);
    if (*con) return cmd_construct(ca, c, out);
    if (*cat) return cmd_catalog(ka, c, out);
    if (*sol) return cmd_solve(sa, c, out);
  } catch (const std::exception& e) {
    err << "ekr: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace ekr::cli

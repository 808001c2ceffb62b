#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ekr_cli.hpp"

using namespace ekr;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ekr");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& f) { return std::string(EKR_DATA_DIR) + "/" + f; }

std::filesystem::path temp_dir(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("ekr_test_cli_" + name);
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

std::string write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p.string();
}

std::string read(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, HelpAndBadUsage) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"nonsense"}).code, 1);
  EXPECT_EQ(run({"gamma"}).code, 1);
}

TEST(Cli, GammaAlphaMatches) {
  auto r = run({"gamma", "3,2,3,6", "--alpha"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "alpha: solver 6, formula 6, MATCH\n");
  auto j = run({"--json", "--deterministic", "gamma", "2,3,1,2", "--alpha"});
  EXPECT_EQ(j.code, 0);
  auto parsed = Json::parse(j.out);
  EXPECT_EQ(parsed["verdict"], "MATCH");
  EXPECT_FALSE(parsed.contains("generated_at"));
}

TEST(Cli, GammaExport) {
  auto r = run({"gamma", "2,2,1,1", "--export", "dimacs"});
  EXPECT_EQ(r.code, 0);
  auto g = parse_dimacs(r.out);
  EXPECT_EQ(g.vertex_count(), 4u);
  auto dot = run({"gamma", "2,2,1,1", "--export", "dot"});
  EXPECT_EQ(dot.out.rfind("graph G {", 0), 0u);
  EXPECT_EQ(run({"gamma", "2,2,1,1", "--export", "png"}).code, 1);
  auto dir = temp_dir("export");
  EXPECT_EQ(run({"gamma", "2,2,1,1", "--export", "dimacs", "--out", (dir / "g.dimacs").string()}).code, 0);
  EXPECT_EQ(parse_dimacs(read(dir / "g.dimacs")).vertex_count(), 4u);
}

TEST(Cli, GammaBadParams) {
  auto r = run({"gamma", "3,2,2,3"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(run({"gamma", "3,2,x"}).code, 1);
}

TEST(Cli, GammaSigmaFile) {
  auto dir = temp_dir("sigma");
  auto f = write(dir / "sigma.json", R"([{"b": 1, "b2": 2, "c": 1, "c2": 2, "perm": [1, 2, 0]}])");
  EXPECT_EQ(run({"gamma", "3,2,3,6," + f, "--alpha"}).code, 0);
  EXPECT_EQ(run({"gamma", "3,2,3,6", "--sigma", f, "--alpha"}).code, 0);
  auto bad = write(dir / "bad.json", R"([{"b": 1, "b2": 2, "c": 2, "c2": 1, "perm": [1, 2, 0]}])");
  EXPECT_EQ(run({"gamma", "3,2,3,6," + bad}).code, 1);
}

TEST(Cli, Density) {
  auto dir = temp_dir("density");
  auto f = write(dir / "c5.json", R"({"name": "C5", "degree": 5, "generators": [[1, 2, 3, 4, 0]]})");
  auto r = run({"density", f});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("rho = 1"), std::string::npos);
  auto j = run({"density", f, "--json", "--deterministic"});
  EXPECT_EQ(Json::parse(j.out)["rho"]["num"], 1);
  EXPECT_EQ(run({"density", (dir / "missing.json").string()}).code, 1);
  auto bad = write(dir / "bad.json", R"({"degree": 3, "generators": [[0, 0, 1]]})");
  EXPECT_EQ(run({"density", bad}).code, 1);
}

TEST(Cli, ConstructVerifiesDensity) {
  auto dir = temp_dir("construct");
  auto r = run({"construct", data("specs/p13_d1_pointwise_dim3.json"), "--verify-density", "--out", dir.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("rho = 3"), std::string::npos) << r.out;
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    ++files;
    if (e.path().extension() == ".json") {
      auto g = enumerate(load_group(e.path().string()));
      EXPECT_EQ(g.degree(), 39u);
      EXPECT_EQ(g.size(), 351u);
    }
  }
  EXPECT_EQ(files, 2u);
}

TEST(Cli, ConstructErrors) {
  auto dir = temp_dir("construct_bad");
  auto f = write(dir / "spec.json", R"({"p": 13, "d": 1})");
  EXPECT_EQ(run({"construct", f}).code, 1);
  EXPECT_EQ(run({"construct", data("specs/p5_sum_zero_invalid.json"), "--out", dir.string()}).code, 3);
}

TEST(Cli, Catalog) {
  auto dir = temp_dir("catalog");
  auto empty = write(dir / "empty.json", "[]");
  auto r = run({"catalog", empty, "--summary"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("densities: {}"), std::string::npos) << r.out;
  auto five = run({"catalog", data("transitive5.json"), "--summary", "--jobs", "2"});
  EXPECT_EQ(five.code, 0);
  EXPECT_NE(five.out.find("densities: {1}"), std::string::npos) << five.out;
}

TEST(Cli, Solve) {
  auto dir = temp_dir("solve");
  auto f = write(dir / "c5.dimacs", "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n");
  auto r = run({"--json", "--deterministic", "solve", f});
  EXPECT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["size"], 2);
  auto c = run({"solve", f, "--clique", "--json", "--deterministic"});
  EXPECT_EQ(Json::parse(c.out)["size"], 2);
  auto bad = write(dir / "bad.dimacs", "p edge 2 1\ne 1 9\n");
  EXPECT_EQ(run({"solve", bad}).code, 1);
}

TEST(Cli, DeterministicOutputIsStable) {
  std::vector<std::string> args{"--json", "--deterministic", "catalog", data("transitive6.json")};
  auto a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto threaded = run({"--json", "--deterministic", "--threads", "3", "catalog", data("transitive6.json"), "--jobs", "4"});
  EXPECT_EQ(threaded.out, a.out);
}

TEST(Cli, BinaryExitCodes) {
  std::string bin = EKR_BIN;
  EXPECT_EQ(std::system((bin + " gamma 3,2,3,6 --alpha > /dev/null").c_str()), 0);
  int rc = std::system((bin + " gamma 3,2,2,3 > /dev/null 2>&1").c_str());
  EXPECT_EQ(WEXITSTATUS(rc), 1);
}

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "indmorse/cli/commands.hpp"

using namespace indmorse;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("indmorse_cli_" + name);
}

}  // namespace

TEST(Cli, Ranges) {
  EXPECT_EQ(cli::parse_range("7")->hi, 7);
  EXPECT_EQ(cli::parse_range("3..12")->lo, 3);
  EXPECT_EQ(cli::parse_range("3..12")->hi, 12);
  EXPECT_FALSE(cli::parse_range("5..3"));
  EXPECT_FALSE(cli::parse_range("x"));
  EXPECT_FALSE(cli::parse_range("3.."));
}

TEST(Cli, Gen) {
  const auto path = scratch("sg21.txt");
  auto r = run({"gen", "--family", "sg", "-n", "2", "-k", "1", "--out", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "gen sg(n=2,k=1) vertices=5 edges=5\n");
  EXPECT_EQ(slurp(path).rfind("graph sg n=2,k=1 5 5\n", 0), 0U);
  r = run({"gen", "--family", "E", "-n", "3"});
  EXPECT_EQ(r.err, "gen e(n=3) vertices=16 edges=36\n");
  r = run({"gen", "--family", "el", "-r", "0"});
  EXPECT_EQ(r.err, "gen el(r=0) vertices=2 edges=1\n");
  std::filesystem::remove(path);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"gen", "--family", "nope", "-n", "3"}).code, 2);
  EXPECT_EQ(run({"gen", "--family", "cycle"}).code, 2);
  EXPECT_EQ(run({"gen", "--family", "cycle", "-n", "2"}).code, 2);
  EXPECT_EQ(run({"gen", "--family", "cycle", "-n", "5", "-k", "1"}).code, 2);
  EXPECT_EQ(run({"gen", "--family", "cycle", "-n", "3..5"}).code, 2);
  EXPECT_EQ(run({"verify", "--family", "kg", "-n", "2", "-k", "1"}).code, 2);
  EXPECT_EQ(run({"verify", "--family", "cycle", "-n", "5", "--budget-faces", "0"}).code, 2);
  EXPECT_EQ(run({"morse", "--family", "sg2", "-k", "4", "--emit-script"}).code, 2);
  const auto bad = scratch("bad.txt");
  std::ofstream(bad) << "graph c n=3 3 3\nv 0 1\nv 1 2\nv 2 3\ne 0 1\ne 1 x\n";
  const auto r = run({"export", "--input", bad.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 6"), std::string::npos) << r.err;
  std::filesystem::remove(bad);
}

TEST(Cli, Verify) {
  auto r = run({"verify", "--family", "sg2", "--k", "2..5"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("sg(n=2,k=5)"), std::string::npos);
  EXPECT_EQ(run({"verify", "--family", "cycle", "--n", "3..12"}).code, 0);
  EXPECT_EQ(run({"verify", "--family", "sg", "-n", "2", "-k", "3"}).code, 0);
  r = run({"verify", "--family", "e", "-n", "5", "--channels", "morse", "--budget-faces", "100"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("budget_exhausted="), std::string::npos);
  const auto a = run({"verify", "--family", "e", "-n", "3..5", "--format", "json"});
  const auto b = run({"verify", "--family", "e", "-n", "3..5", "--format", "json"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out).size(), 3U);
}

TEST(Cli, MorseAndHomology) {
  const auto path = scratch("e5.script");
  auto r = run({"morse", "--family", "e", "-n", "5", "--emit-script", "--out", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("critical_leaves=3"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("critical=dim3:3"), std::string::npos);
  const auto script = slurp(path);
  EXPECT_EQ(script.rfind("at . split 1", 0), 0U);
  EXPECT_EQ(script_to_string(e_graph(5), script_from_string(script, e_graph(5))), script);
  std::filesystem::remove(path);

  r = run({"homology", "--family", "sg2", "-k", "4"});
  EXPECT_NE(r.out.find("dim=2 betti=3"), std::string::npos);
  EXPECT_EQ(r.out.find("dim=1 betti=1"), std::string::npos);
  r = run({"homology", "--family", "sg", "-n", "2", "-k", "2", "--kind", "nbhd", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["groups"][3]["betti"], 1);  // dim 2

  r = run({"morse", "--family", "cycle", "-n", "9", "--emit-matching"});
  EXPECT_NE(r.out.find("critical=dim2:2"), std::string::npos);
  EXPECT_NE(r.out.find("\ncritical\n"), std::string::npos);
}

TEST(Cli, ExportRoundTrips) {
  for (std::vector<std::string> fam : {std::vector<std::string>{"--family", "e", "-n", "4"},
                                       {"--family", "sg", "-n", "2", "-k", "3"},
                                       {"--family", "el", "-r", "3"},
                                       {"--family", "dc", "-n", "3"}}) {
    const auto g1 = scratch("g1.txt");
    const auto g2 = scratch("g2.txt");
    auto args = std::vector<std::string>{"export"};
    args.insert(args.end(), fam.begin(), fam.end());
    args.insert(args.end(), {"--out", g1.string()});
    ASSERT_EQ(run(args).code, 0);
    ASSERT_EQ(run({"export", "--input", g1.string(), "--out", g2.string()}).code, 0);
    EXPECT_EQ(slurp(g1), slurp(g2));

    const auto c1 = run({"export", "--input", g1.string(), "--what", "complex"});
    const auto cfile = scratch("c.txt");
    std::ofstream(cfile) << c1.out;
    const auto c2 = run({"complex", "--input", cfile.string(), "--out", g2.string()});
    EXPECT_EQ(c2.code, 0);
    EXPECT_EQ(slurp(g2), c1.out);

    const auto s1 = run({"export", "--input", g1.string(), "--what", "matching"});
    const auto s2 = run({"export", "--input", g1.string(), "--what", "matching"});
    EXPECT_EQ(s1.code, 0);
    EXPECT_EQ(s1.out, s2.out);
    for (const auto& p : {g1, g2, cfile}) std::filesystem::remove(p);
  }
}

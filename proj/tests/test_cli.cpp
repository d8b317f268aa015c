#include "grig/cli.hpp"
#include "grig/grig_core.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

using grig::GrigElement;
using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
  json parsed() const { return json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = grig::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string &name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string &path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

} // namespace

TEST(Cli, ConjugateGenerators) {
  CliRun r = run({"conj", "a", "a"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = r.parsed();
  EXPECT_TRUE(j["conjugate"].get<bool>());
  EXPECT_EQ(j["witness_cosets"],
            json::array({"z0", "z3", "z4", "z7"}));
  EXPECT_EQ(j["level"], 0);
  EXPECT_EQ(j["depth_used"], 6);
}

TEST(Cli, NotConjugateExitsOne) {
  CliRun r = run({"conj", "b", "c"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.parsed()["conjugate"].get<bool>());
  EXPECT_TRUE(r.parsed()["witness_cosets"].empty());
}

TEST(Cli, Reduce) {
  CliRun r = run({"reduce", "bcbc"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.parsed(), "");
  EXPECT_EQ(run({"reduce", "(ab)^2"}).parsed(), "abab");
}

TEST(Cli, ArithmeticVerbs) {
  EXPECT_EQ(run({"mul", "ab", "ba"}).parsed(), "");
  EXPECT_EQ(run({"inv", "ad"}).parsed(), "da");
  EXPECT_EQ(run({"section", "b", "11"}).parsed(), "d");
  EXPECT_EQ(run({"act", "a", "01"}).parsed(), "11");
  EXPECT_EQ(run({"order", "ab"}).parsed(), 16);
  EXPECT_EQ(run({"coset", "ab"}).parsed(), "z15");
  EXPECT_EQ(run({"km-coset", "d", "--level", "1"}).parsed(), "(z0,z8)");
}

TEST(Cli, PrintedWordsRoundTrip) {
  const std::vector<std::vector<std::string>> calls = {
      {"reduce", "abcbdacad"}, {"mul", "abc", "dacab"},
      {"inv", "abcadab"},      {"section", "abcadabacab", "0"},
      {"section", "abcadabacab", "1"}};
  for (const auto &args : calls) {
    CliRun r = run(args);
    ASSERT_EQ(r.code, 0);
    std::string word = r.parsed().get<std::string>();
    GrigElement printed = GrigElement::parse(word);
    EXPECT_EQ(printed.str(), word);
  }
  GrigElement g = GrigElement::parse("abc"), h = GrigElement::parse("dacab");
  EXPECT_TRUE(grig::equal(
      GrigElement::parse(run({"mul", "abc", "dacab"}).parsed().get<std::string>()),
      g * h));
}

TEST(Cli, SubgroupConjugacy) {
  CliRun r = run({"conj-sub", "b", "aba", "--subgroup-gens", "b,c,d,aba,aca,ada",
               "--km-level", "0"});
  EXPECT_EQ(r.code, 1) << r.err;
  CliRun whole = run({"conj-sub", "b", "aba", "--subgroup-gens", "a,b,c,d"});
  EXPECT_EQ(whole.code, 0) << whole.err;
  EXPECT_EQ(run({"conj-sub", "b", "b", "--subgroup-gens", ","}).code, 2);
}

TEST(Cli, QFinAndStabilize) {
  CliRun q = run({"qfin", "a", "a", "--depth", "4"});
  ASSERT_EQ(q.code, 0);
  EXPECT_EQ(q.parsed()["cosets"], json::array({"z0", "z3", "z4", "z7"}));
  CliRun s = run({"stabilize", "d", "d", "--max-depth", "8"});
  ASSERT_EQ(s.code, 0);
  EXPECT_LE(s.parsed()["depth"].get<int>(), 6);
  EXPECT_EQ(s.parsed()["by_depth"].size(), 6u);
  EXPECT_EQ(run({"qfin", "a", "a", "--depth", "2"}).code, 2);
}

TEST(Cli, SplittingTreeDot) {
  CliRun dot = run({"splitting-tree", "b", "b", "--depth", "5", "--dot"});
  ASSERT_EQ(dot.code, 0);
  EXPECT_EQ(dot.out.rfind("digraph", 0), 0u);
  std::string path = temp_path("grig_cli_tree.dot");
  CliRun file = run({"splitting-tree", "b", "b", "--depth", "5", "--out", path});
  ASSERT_EQ(file.code, 0);
  EXPECT_EQ(slurp(path), dot.out);
  EXPECT_EQ(file.parsed()["result"], json::array({"z0", "z1", "z8", "z9"}));
  std::filesystem::remove(path);
}

TEST(Cli, Quotient) {
  CliRun r = run({"quotient", "enumerate", "--depth", "3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.parsed()["order"], 128);
  EXPECT_EQ(run({"quotient", "enumerate", "--depth", "7"}).code, 3);
  setenv("GRIG_MAX_DEPTH", "2", 1);
  EXPECT_EQ(run({"quotient", "enumerate", "--depth", "3"}).code, 3);
  unsetenv("GRIG_MAX_DEPTH");
}

TEST(Cli, VerifySuites) {
  CliRun lift = run({"verify", "lift-table"});
  EXPECT_EQ(lift.code, 0);
  EXPECT_EQ(lift.parsed()["summary"], "32/32 entries verified");
  std::string path = temp_path("grig_cli_schreier.dot");
  CliRun schreier = run({"verify", "schreier", "--out", path});
  EXPECT_EQ(schreier.code, 0);
  EXPECT_NE(slurp(path).find("digraph"), std::string::npos);
  std::filesystem::remove(path);
  CliRun wreath = run({"verify", "wreath", "--groups", "C2:C2,C2:C3", "--threads", "2"});
  EXPECT_EQ(wreath.code, 0) << wreath.out;
  EXPECT_EQ(run({"verify", "wreath", "--groups", "C2"}).code, 2);
  EXPECT_EQ(run({"verify", "wreath", "--groups", "Q8:C2"}).code, 2);
}

TEST(Cli, VerifyAll) {
  CliRun r = run({"verify", "all", "--threads", "4"});
  EXPECT_EQ(r.code, 0) << r.out;
  json j = r.parsed();
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["suites"].size(), 5u);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"conj", "a"}).code, 2);
  EXPECT_EQ(run({"conj", "a", "a", "--bogus"}).code, 2);
  EXPECT_EQ(run({"conj", "x", "a"}).code, 2);
  EXPECT_EQ(run({"section", "a", "2"}).code, 2);
  EXPECT_EQ(run({"verify", "everything"}).code, 2);
  EXPECT_EQ(run({"--threads", "0", "reduce", "a"}).code, 2);
  EXPECT_EQ(run({"km-coset", "a", "--level", "9"}).code, 3);
}

TEST(Cli, PrettyAndHelp) {
  CliRun pretty = run({"--pretty", "conj", "a", "a"});
  EXPECT_NE(pretty.out.find("\n  "), std::string::npos);
  EXPECT_EQ(pretty.parsed(), run({"conj", "a", "a"}).parsed());
  CliRun help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("conj"), std::string::npos);
}

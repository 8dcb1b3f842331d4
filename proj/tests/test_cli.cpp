#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "app.hpp"

using namespace cpalab;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = app::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("cpalab_cli_" + name)).string();
}

}  // namespace

TEST(Cli, AnalyzeL6) {
  const std::string path = temp_path("l6.json");
  ASSERT_EQ(run({"algebra", "build", "ln", "--n", "6", "--out", path}).code, 0);
  const Outcome r = run({"--json", "algebra", "analyze", path});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["lower_central_dims"], Json::parse("[6,4,3,2,1,0]"));
  EXPECT_TRUE(r.json()["filiform"].get<bool>());
  const Outcome human = run({"algebra", "analyze", path});
  EXPECT_NE(human.out.find("filiform: true"), std::string::npos);
}

TEST(Cli, CheckExample9WithImplications) {
  const std::string a = temp_path("example9.json"), p = temp_path("example9p.json");
  ASSERT_EQ(run({"cpa", "export", "--example", "example9", "--algebra-out", a, "--product-out", p}).code, 0);
  const Outcome r = run({"cpa", "check", "--algebra", a, "--product", p, "--implications", "--json"});
  EXPECT_EQ(r.code, 0);
  const Json j = r.json();
  EXPECT_TRUE(j["check"]["pass"].get<bool>());
  EXPECT_FALSE(j["associative"]["associator"]["pass"].get<bool>());
  bool found = false;
  for (const auto& v : j["associative"]["associator"]["violations"])
    if (v["witness"] == Json::parse("[2,1,1]")) {
      found = true;
      EXPECT_EQ(v["residual"], Json::parse(R"(["0","0","0","0","0","0","0","1","0"])"));
    }
  EXPECT_TRUE(found);
}

TEST(Cli, VerifyFamily) {
  EXPECT_EQ(run({"cpa", "verify-family", "--family", "wn", "--n", "7"}).code, 0);
  EXPECT_EQ(run({"cpa", "verify-family", "--family", "nope", "--n", "7"}).code, 64);
}

TEST(Cli, SolveAndProve) {
  const std::string b = temp_path("n3_branches.json");
  const Outcome s = run({"cpa", "solve", "--catalog", "nn", "--n", "3", "--out", b, "--json"});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(s.json()["unresolved"], 0);
  EXPECT_EQ(run({"cpa", "prove", "--branches", b, "--left", "g", "--right", "derived"}).code, 0);
  EXPECT_EQ(run({"cpa", "prove", "--branches", b, "--left", "g", "--right", "g"}).code, 1);
  EXPECT_EQ(run({"cpa", "prove", "--branches", b, "--left", "g", "--right", "g", "--target", "center"}).code, 1);
}

TEST(Cli, UnresolvedExitCode) {
  const std::string b = temp_path("n3_partial.json");
  EXPECT_EQ(run({"cpa", "solve", "--catalog", "nn", "--n", "3", "--max-splits", "0", "--out", b}).code, 2);
  EXPECT_EQ(run({"cpa", "prove", "--branches", b, "--left", "g", "--right", "derived"}).code, 2);
}

TEST(Cli, QuotientPreprocessNeedsNn) {
  EXPECT_EQ(run({"cpa", "solve", "--catalog", "ln", "--n", "5", "--quotient-preprocess"}).code, 64);
  EXPECT_EQ(run({"cpa", "solve", "--catalog", "nn", "--n", "3", "--quotient-preprocess"}).code, 0);
}

TEST(Cli, FiliformAssumption) {
  const Outcome r = run({"--json", "cpa", "solve", "--catalog", "filiform6", "--param", "a1=0", "--param", "a2=0", "--param",
                     "a3=1", "--assume", "filiform-adapted"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["branches"].size(), 1u);
  EXPECT_EQ(run({"cpa", "solve", "--catalog", "nn", "--n", "4", "--assume", "filiform-adapted"}).code, 1);
}

TEST(Cli, Derivations) {
  const Outcome r = run({"--json", "der", "basis", "--catalog", "ln", "--n", "6"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["dim"], 11);
  const Outcome n = run({"--json", "--seed", "3", "der", "nilpotent", "--catalog", "nn", "--n", "5"});
  EXPECT_EQ(n.code, 0);
  EXPECT_TRUE(n.json().contains("decomposition"));
}

TEST(Cli, UsageAndIoErrors) {
  EXPECT_EQ(run({}).code, 64);
  EXPECT_EQ(run({"frobnicate"}).code, 64);
  EXPECT_EQ(run({"cpa", "solve"}).code, 64);
  EXPECT_EQ(run({"algebra", "analyze", temp_path("does_not_exist.json")}).code, 66);
  EXPECT_EQ(run({"cpa", "prove", "--branches", temp_path("does_not_exist.json")}).code, 66);
  EXPECT_EQ(run({"scenario", "run", "nope"}).code, 64);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, Scenarios) {
  const Outcome list = run({"--json", "scenario", "list"});
  EXPECT_EQ(list.code, 0);
  EXPECT_GE(list.json()["scenarios"].size(), 3u);
  const std::string log = temp_path("empty_log.json");
  EXPECT_EQ(run({"scenario", "run", "empty", "--log", log}).code, 0);
  EXPECT_TRUE(std::filesystem::exists(log));
  const Outcome a = run({"--json", "scenario", "run", "prop-3.10-L5"});
  const Outcome b = run({"--json", "scenario", "run", "prop-3.10-L5"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

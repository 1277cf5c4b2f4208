#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = facto::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / ("facto_cli_" + name);
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST(Cli, VerifyGadgetCleanReport) {
  auto r = run({"verify", "--rule", "sss-to-f-sym", "--trials", "100", "--seed", "7", "--max-n", "4", "--max-m", "3",
                "--max-k", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["disagreement_count"], 0);
  EXPECT_EQ(j["agreements"], 100);
  EXPECT_EQ(j["trials"], 100);
}

TEST(Cli, VerifyIsDeterministicWithoutTime) {
  std::vector<std::string> a{"verify", "--rule", "distinctify", "--trials", "20", "--seed", "3", "--no-time"};
  auto r1 = run(a), r2 = run(a);
  EXPECT_EQ(r1.code, 0);
  EXPECT_EQ(r1.out, r2.out);
  EXPECT_FALSE(json::parse(r1.out).contains("wall_ms"));
}

TEST(Cli, ReduceRejectsOutOfDomain) {
  auto f = write_temp("exact.json",
                      R"({"problem":"SSS","exact":true,"monoid":{"kind":"integers"},"target":"1","generators":["1"],"k":1})");
  auto r = run({"reduce", "--rule", "exact-from-le", f});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("domain error"), std::string::npos);
}

TEST(Cli, ReduceOutputIsAnInstance) {
  auto f = write_temp("le.json",
                      R"({"problem":"SSS","exact":false,"monoid":{"kind":"integers"},"target":"1","generators":["1"],"k":2})");
  auto r = run({"--indent", "-1", "reduce", "--rule", "exact-from-le", f});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["rule"], "exact-from-le");
  EXPECT_EQ(j["h_of_k"], 2);
  EXPECT_EQ(j["out"]["generators"].size(), 3u);
  auto g = write_temp("out.json", j["out"].dump());
  auto s = run({"solve", g});
  EXPECT_EQ(s.code, 0);
  EXPECT_TRUE(json::parse(s.out)["answer"].get<bool>());
}

TEST(Cli, SolvePlantedPositive) {
  auto g = run({"gen", "--monoid", "symmetric", "--kind", "SSS", "--k", "2", "--m", "3", "--bias", "1", "--seed", "1",
                "--max-n", "4"});
  ASSERT_EQ(g.code, 0) << g.err;
  auto f = write_temp("planted.json", g.out);
  auto s = run({"solve", f});
  ASSERT_EQ(s.code, 0) << s.err;
  auto j = json::parse(s.out);
  EXPECT_TRUE(j["answer"].get<bool>());
  EXPECT_TRUE(j.contains("witness"));
  EXPECT_TRUE(j["stats"].contains("nodes"));
}

TEST(Cli, GenIsDeterministic) {
  std::vector<std::string> a{"gen", "--monoid", "finite_abelian", "--kind", "KS", "--seed", "9"};
  EXPECT_EQ(run(a).out, run(a).out);
  auto c = run({"gen", "--change", "bounded", "--approx", "--seed", "4"});
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(json::parse(c.out)["problem"], "CHANGE");
  auto r = run({"gen", "--rule", "cor18", "--seed", "4"});
  EXPECT_EQ(r.code, 0);
}

TEST(Cli, ModelCheck) {
  auto f = write_temp("mc.json",
                      R"j({"structure":{"size":2,"functions":{"f":{"arity":1,"table":[[0,1],[1,1]]}}},"sentence":"(exists x (forall y (= (f y) x)))"})j");
  auto r = run({"mc", f});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_TRUE(j["result"].get<bool>());
  EXPECT_EQ(j["fragment"], "Sigma_{2,1}^func");
  auto t = write_temp("mc_t.json",
                      R"({"problem":"F","monoid":{"kind":"transformation","n":2},"target":[2,1],"generators":[[2,1]],"k":1})");
  auto e = run({"mc", t});
  ASSERT_EQ(e.code, 0) << e.err;
  auto je = json::parse(e.out);
  EXPECT_TRUE(je["result"].get<bool>());
  EXPECT_EQ(je["length"], 10);
  EXPECT_EQ(je["fragment"], "Sigma_{2,1}^func");
}

TEST(Cli, ErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"verify", "--rule", "nope"}).code, 2);
  EXPECT_EQ(run({"solve", "/nonexistent/file.json"}).code, 2);
  auto bad = write_temp("bad.json", R"({"problem":"SSS","monoid":{"kind":"integers"},"target":"1",)");
  auto r = run({"solve", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("parse error"), std::string::npos);
  auto invalid = write_temp("invalid.json", R"({"problem":"SSS","monoid":{"kind":"integers"},"target":"1","generators":[],"k":-2})");
  EXPECT_EQ(run({"solve", invalid}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, StateCapFlag) {
  auto g = run({"gen", "--monoid", "symmetric", "--kind", "F", "--k", "5", "--m", "4", "--seed", "2", "--max-n", "6"});
  auto f = write_temp("cap.json", g.out);
  auto r = run({"solve", "--state-cap", "2", f});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("resource limit"), std::string::npos);
}

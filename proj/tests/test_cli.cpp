#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qbasis/cli.hpp"

using namespace qbasis;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "qbasis");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "--example", "ex7"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "--n", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "--seq", "nonsense", "--example", "ex1"}).code, kExitUsage);
  EXPECT_EQ(run({"apply", "--op", "Hxy", "--vec", "x:3"}).code, kExitUsage);  // needs --seq
  EXPECT_EQ(run({"apply", "--op", "T", "--vec", "x:3", "--example", "ex1"}).code, kExitUsage);
  EXPECT_EQ(run({"apply", "--op", "Hxy", "--seq", "inv_n", "--vec", "x:0", "--example", "ex1"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "--help"}).code, kExitOk);
}

TEST(Cli, ApplyEigenrelation) {
  const CliRun r = run({"apply", "--op", "Hxy", "--seq", "const:2", "--vec", "x:3", "--example", "ex1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const auto& values = j["steps"][0]["result"]["values"];
  ASSERT_EQ(values.size(), 3u);
  EXPECT_DOUBLE_EQ(values[0][0].get<double>(), 2.0);
  EXPECT_DOUBLE_EQ(values[1][0].get<double>(), 1.0);
  EXPECT_NEAR(values[2][0].get<double>(), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(j["steps"][0]["tail"]["classification"], "CONVERGED");
}

TEST(Cli, ApplyTOnGroundState) {
  const CliRun r = run({"apply", "--op", "T", "--vec", "e:0", "--example", "ex3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const auto& res = j["steps"][0]["result"];
  EXPECT_EQ(res["rate"], 0.75);
  ASSERT_EQ(res["poly"].size(), 1u);
  EXPECT_NEAR(res["poly"][0][0].get<double>(), std::pow(std::numbers::pi, -0.25), 1e-15);
}

TEST(Cli, TinvDomainSurfacesAsError) {
  EXPECT_EQ(run({"apply", "--op", "Tinv", "--vec", "y:0", "--example", "ex3", "--times", "2"}).code, kExitOk);
  const CliRun r = run({"apply", "--op", "Tinv", "--vec", "y:0", "--example", "ex3", "--times", "3"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("rate"), std::string::npos);
  const CliRun x = run({"apply", "--op", "Tinv", "--vec", "x:0", "--example", "ex3"});
  EXPECT_EQ(x.code, kExitUsage);
  const CliRun deep = run({"apply", "--op", "Sy", "--vec", "e:0", "--example", "ex3", "--n", "100"});
  EXPECT_EQ(deep.code, kExitUsage);
  EXPECT_NE(deep.err.find("maximum"), std::string::npos);
}

TEST(Cli, ApplyInlineVectorAndText) {
  const CliRun r = run({"apply", "--op", "Sx", "--seq", "geom:0.5", "--vec", "0,1", "--example", "ex2", "--n", "10",
                     "--format", "text"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("tail"), std::string::npos);
}

TEST(Cli, VerifyProbeFindingIsNotFailure) {
  const CliRun r = run({"verify", "--example", "ex1", "--seq", "inv_n", "--op", "Hyx", "--n", "20", "--cases", "5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  bool seen = false;
  for (const auto& rep : j["reports"]) {
    if (rep["check_id"] == "ex1.dense.Hyx.inv_n") {
      seen = true;
      EXPECT_EQ(rep["findings"]["tail"], "GROWING");
    }
  }
  EXPECT_TRUE(seen);
}

TEST(Cli, VerifyWritesFilesAndReportsIoErrors) {
  const auto dir = std::filesystem::temp_directory_path() / "qbasis_cli_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "ex2.csv").string();
  const CliRun r = run({"verify", "--example", "ex2", "--n", "20", "--cases", "5", "--format", "csv", "--out", path});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header.rfind("check_id,verdict", 0), 0u);
  const CliRun bad = run({"verify", "--example", "ex2", "--n", "20", "--out", "/nonexistent-dir/x.json"});
  EXPECT_EQ(bad.code, kExitIo);
}

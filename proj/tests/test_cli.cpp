#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ckn/cli.hpp"

namespace ckn::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "ckn_lab");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, HelpExitsZero) {
  const Outcome r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("symmetry-scan"), std::string::npos);
  EXPECT_NE(r.out.find("Exit codes"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kUsageError);
  EXPECT_EQ(run({"frobnicate"}).code, kUsageError);
  EXPECT_EQ(run({"verify", "--bogus"}).code, kUsageError);
  EXPECT_EQ(run({"verify", "--alpha", "-1"}).code, kUsageError);
  EXPECT_EQ(run({"verify", "--p", "3"}).code, kUsageError);
  EXPECT_EQ(run({"verify", "--format", "csv"}).code, kUsageError);
  EXPECT_EQ(run({"sweep-alpha", "--family", "nope"}).code, kUsageError);
  EXPECT_EQ(run({"symmetry-scan", "--n", "4"}).code, kUsageError);
  const Outcome r = run({"symmetry-scan", "--k-max", "64"});
  EXPECT_EQ(r.code, kUsageError);
  EXPECT_NE(r.err.find("--ang-theta"), std::string::npos);
}

TEST(Cli, EigCheckPassesAndDetectsInjectedFault) {
  const Outcome ok = run({"eig-check"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  const auto j = nlohmann::json::parse(ok.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_LT(j["max_eigen_residual"].get<double>(), 1e-10);

  const Outcome bad = run({"eig-check", "--inject-fault"});
  EXPECT_EQ(bad.code, kVerificationFailure);
  EXPECT_FALSE(nlohmann::json::parse(bad.out)["failures"].empty());
}

TEST(Cli, EigCheckAtAlphaZeroIsExact) {
  const Outcome r = run({"eig-check", "--alpha", "0"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["alpha_mode"], "fixed");
  EXPECT_LT(j["max_eigen_residual"].get<double>(), 1e-15);
}

TEST(Cli, SymmetryScanCsvLayout) {
  const Outcome r = run({"symmetry-scan", "--format", "csv", "--k-max", "4", "--ang-theta", "16",
                     "--ang-phi", "16"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) {
    ASSERT_FALSE(line.empty());
    EXPECT_EQ(line.back(), '\r');
    rows.push_back(line.substr(0, line.size() - 1));
  }
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], "k,F,one_minus_F,k2_one_minus_F");
  EXPECT_EQ(rows[1].rfind("1,", 0), 0u);
  EXPECT_EQ(rows[3].rfind("4,", 0), 0u);
  EXPECT_EQ(rows[4].rfind("extrapolated,", 0), 0u);
  EXPECT_EQ(rows[4].back(), ',');
}

TEST(Cli, SymmetryScanAtAlphaZeroIsFlat) {
  const Outcome r = run({"symmetry-scan", "--alpha", "0", "--k-max", "4", "--ang-theta", "16",
                         "--ang-phi", "16"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  for (const auto& row : j["rows"]) EXPECT_NEAR(row["F"].get<double>(), 1.0, 1e-14);
}

TEST(Cli, SweepAlphaSharesOneEstimate) {
  const Outcome r = run({"sweep-alpha", "--alphas", "-0.5,0,1", "--family", "gaussian"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["rows"].size(), 3u);
  EXPECT_NEAR(j["rows"][0]["gap_ratio"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(j["rows"][2]["gap_ratio"].get<double>(), std::pow(2.0, 0.72), 1e-12);
  EXPECT_DOUBLE_EQ(j["rows"][1]["sharp_constant"].get<double>(), j["M_hat"]["value"].get<double>());
}

TEST(Cli, EstimateMWithTrace) {
  const Outcome r = run({"estimate-m", "--t", "1", "--family", "sobolev-extremal", "--trace"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["estimate"]["converged"].get<bool>());
  EXPECT_FALSE(j["estimate"]["trace"].empty());
  EXPECT_NEAR(j["estimate"]["value"].get<double>(), 0.4272605428, 1e-6);
}

TEST(Cli, NonConvergenceExitCode) {
  // Force an early stop through a config file.
  const auto path = std::filesystem::temp_directory_path() / "ckn_cli_test.cfg";
  {
    std::ofstream cfg(path);
    cfg << "family=gaussian\nr-max=-3\n";
  }
  EXPECT_EQ(run({"estimate-m", "--config", path.string()}).code, kUsageError);
  {
    std::ofstream cfg(path);
    cfg << "family=gaussian\nseed=5\n";
  }
  const Outcome r = run({"estimate-m", "--config", path.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["seed"], 5);
  // Flags beat the config file.
  EXPECT_EQ(nlohmann::json::parse(run({"estimate-m", "--config", path.string(), "--seed", "9"}).out)["seed"], 9);
  std::filesystem::remove(path);
}

TEST(Cli, OutWritesFileAndIsDeterministic) {
  const auto path = std::filesystem::temp_directory_path() / "ckn_cli_out.json";
  const std::vector<std::string> args = {"sweep-alpha", "--family", "gaussian", "--out", path.string()};
  const Outcome first = run(args);
  ASSERT_EQ(first.code, 0);
  EXPECT_TRUE(first.out.empty());
  std::ifstream in(path);
  const std::string a((std::istreambuf_iterator<char>(in)), {});
  ASSERT_EQ(run(args).code, 0);
  std::ifstream in2(path);
  const std::string b((std::istreambuf_iterator<char>(in2)), {});
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, b);
  std::filesystem::remove(path);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-2.5e-20), "-2.5e-20");
  EXPECT_EQ(format_double(std::nan("")), "nan");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

}  // namespace
}  // namespace ckn::cli

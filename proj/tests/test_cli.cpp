#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "algocap_cli.hpp"

using namespace algocap;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(ALGOCAP_SAMPLES_DIR) + "/" + name; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(CliCoherentInfo, KnownValues) {
  auto r = run({"coherent-info", "--channel", "zoo:identity:2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(Json::parse(r.out)["coherent_information"].get<double>(), 1.0, 1e-12);

  r = run({"coherent-info", "--channel", "zoo:dephasing:0.5", "--state", "mm"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(Json::parse(r.out)["coherent_information"].get<double>(), 0.0, 1e-12);

  r = run({"coherent-info", "--channel", "zoo:erasure:0.25"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_NEAR(j["coherent_information"].get<double>(), 0.5, 1e-9);
  EXPECT_EQ(j["units"], "bits");
  EXPECT_TRUE(j.contains("output_entropy"));
  EXPECT_TRUE(j.contains("exchange_entropy"));
}

TEST(CliCoherentInfo, StateForms) {
  auto r = run({"coherent-info", "--channel", "zoo:amplitude_damping:0.3", "--state", "pure:1"});
  ASSERT_EQ(r.code, 0) << r.err;
  // Output is diag(0.3, 0.7), environment diag(0.7, 0.3): equal entropies.
  EXPECT_NEAR(Json::parse(r.out)["coherent_information"].get<double>(), 0.0, 1e-12);

  r = run({"coherent-info", "--channel", "zoo:dephasing:0.1", "--state", "diag:0.5,0.5", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, 10), "key,value\n");

  r = run({"coherent-info", "--channel", "zoo:dephasing:0.1", "--state", "diag:0.5,0.6"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--state"), std::string::npos);
}

TEST(CliCoherentInfo, WithReferenceReportsSurrogateAndSlack) {
  const auto r = run({"coherent-info", "--channel", "zoo:dephasing:0.3", "--enum", "default:2", "--n", "2",
                      "--member", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["reference"], "default(d=2,grid=2)/level=2");
  EXPECT_EQ(j["global_index"], 6);
  const double slack = j["sandwich_slack_bits"].get<double>();
  EXPECT_NEAR(slack, -std::log2(delta_weight(6)), 1e-12);
  EXPECT_LE(std::abs(j["algorithmic_coherent_information"].get<double>() - j["coherent_information"].get<double>()),
            slack + 1e-9);

  EXPECT_EQ(run({"coherent-info", "--channel", "zoo:dephasing:0.3", "--enum", "default:2", "--member", "9"}).code, 2);
  EXPECT_EQ(run({"coherent-info", "--channel", "zoo:dephasing:0.3", "--member", "2"}).code, 2);
}

TEST(CliCapacity, IdentityBracketsContainOne) {
  const auto r = run({"capacity", "--channel", "zoo:identity:2", "--n-max", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["units"], "bits");
  ASSERT_EQ(j["levels"].size(), 2u);
  for (const auto& l : j["levels"]) {
    EXPECT_LE(l["bracket"][0].get<double>(), 1.0);
    EXPECT_GE(l["bracket"][1].get<double>(), 1.0);
  }
}

TEST(CliCapacity, OracleFlag) {
  const auto r = run({"capacity", "--channel", "zoo:dephasing:0.3", "--oracle", "--n-max", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(Json::parse(r.out)["oracle_single_letter"].get<double>(), 0.118709, 1e-6);
}

TEST(CliCapacity, MalformedChannelNamesField) {
  const auto r = run({"capacity", "--channel", sample("malformed_channel.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("channel.kraus[0].data"), std::string::npos) << r.err;
}

TEST(CliCapacity, ChannelAndEnumerationFiles) {
  auto r = run({"capacity", "--channel", sample("dephasing_kraus.json"), "--enum", sample("qubit_enumeration.json"),
                "--mode", "both"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["channel"], "dephasing-from-file");
  EXPECT_EQ(j["reference"], "qubit-pair");
  EXPECT_EQ(j["mode"], "both");

  r = run({"capacity", "--channel", sample("identity_choi.json"), "--n-max", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"capacity", "--channel", sample("erasure_zoo.json"), "--n-max", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = Json::parse(r.out);
  EXPECT_LE(j["levels"][0]["bracket"][0].get<double>(), 0.5);
  EXPECT_GE(j["levels"][0]["bracket"][1].get<double>(), 0.5);
}

TEST(CliCapacity, WritesJsonAndCsv) {
  const auto dir = std::filesystem::temp_directory_path() / "algocap_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "report.json";
  const auto r = run({"capacity", "--channel", "zoo:dephasing:0.2", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto j = Json::parse(slurp(path));
  EXPECT_EQ(j["levels"].size(), 2u);
  const auto csv = slurp(dir / "report.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,q_n,bracket_lo,bracket_hi");
  std::filesystem::remove_all(dir);
}

TEST(CliCapacity, CsvToStdout) {
  const auto r = run({"capacity", "--channel", "zoo:dephasing:0.2", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,q_n,bracket_lo,bracket_hi");
}

TEST(CliCapacity, DeterministicOutput) {
  const std::vector<std::string> args{"capacity", "--channel", "zoo:amplitude_damping:0.3", "--n-max", "2",
                                      "--mode", "both", "--oracle"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(CliCapacity, BudgetTruncationWarns) {
  ::setenv("ALGOCAP_BUDGET_DIM", "4", 1);
  const auto r = run({"capacity", "--channel", "zoo:dephasing:0.1", "--n-max", "3"});
  ::unsetenv("ALGOCAP_BUDGET_DIM");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  const auto j = Json::parse(r.out);
  EXPECT_TRUE(j["truncated"].get<bool>());
  EXPECT_EQ(j["levels"].size(), 2u);
}

TEST(CliErrors, ConfigErrorsExitTwo) {
  EXPECT_EQ(run({"capacity", "--channel", "zoo:teleport:0.1"}).code, 2);
  EXPECT_EQ(run({"capacity", "--channel", "zoo:dephasing:1.5"}).code, 2);
  EXPECT_EQ(run({"capacity", "--channel", "zoo:dephasing"}).code, 2);
  EXPECT_EQ(run({"capacity", "--channel", "/nonexistent/channel.json"}).code, 2);
  EXPECT_EQ(run({"capacity", "--channel", "zoo:dephasing:0.1", "--mode", "fast"}).code, 2);
  EXPECT_EQ(run({"capacity", "--channel", "zoo:dephasing:0.1", "--n-max", "0"}).code, 2);
  EXPECT_EQ(run({"capacity", "--channel", "zoo:identity:3", "--enum", sample("qubit_enumeration.json")}).code, 2);
  EXPECT_EQ(run({"capacity"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"verify", "--scope", "nothing"}).code, 2);
  ::setenv("ALGOCAP_BUDGET_DIM", "lots", 1);
  const auto r = run({"capacity", "--channel", "zoo:dephasing:0.1"});
  ::unsetenv("ALGOCAP_BUDGET_DIM");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("ALGOCAP_BUDGET_DIM"), std::string::npos);
}

TEST(CliErrors, HelpExitsZero) {
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliChannelInfo, Reports) {
  auto r = run({"channel-info", "--channel", "zoo:dephasing:0.3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["choi_rank"], 2);
  EXPECT_EQ(j["dim_env"], 2);
  EXPECT_GE(j["choi_min_eigenvalue"].get<double>(), -1e-12);
  r = run({"channel-info", "--channel", "zoo:erasure:0.1", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("dim_out,3"), std::string::npos);
}

TEST(CliVerify, DefaultScopePasses) {
  const auto r = run({"verify"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["failed"], 0);
  EXPECT_EQ(j["seed"], 0);
  EXPECT_EQ(j["checks"].size(), registered_invariants().size());
}

TEST(CliVerify, SeedIsReproducible) {
  EXPECT_EQ(run({"verify", "--seed", "42", "--scope", "linalg"}).out,
            run({"verify", "--seed", "42", "--scope", "linalg"}).out);
}

TEST(CliVerify, ScopeFilter) {
  const auto r = run({"verify", "--scope", "entropy"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const auto& c : Json::parse(r.out)["checks"]) EXPECT_EQ(c["scope"], "entropy");
}

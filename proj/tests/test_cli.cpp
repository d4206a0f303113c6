#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mmwsim/cli.hpp"

namespace mmwsim {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "mmwsim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("mmwsim_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    ::unsetenv("MMWSIM_SEED");
  }
  void TearDown() override {
    fs::remove_all(dir_);
    ::unsetenv("MMWSIM_SEED");
  }
  fs::path write_config(const std::string& text) {
    const auto p = dir_ / "run.yaml";
    std::ofstream(p) << text;
    return p;
  }
  fs::path dir_;
};

constexpr const char* kSmallRun = "horizon_slots: 2000\ndrops: 3\n";

TEST_F(CliTest, SimulateIsReproducible) {
  const auto cfg = write_config(kSmallRun).string();
  const auto a = dir_ / "a";
  const auto b = dir_ / "b";
  ASSERT_EQ(run({"simulate", "--config", cfg, "--seed", "7", "--out", a.string(), "--threads", "1"}).code, 0);
  ASSERT_EQ(run({"simulate", "--config", cfg, "--seed", "7", "--out", b.string(), "--threads", "3"}).code, 0);
  for (const char* f : {"summary.csv", "ecdf_pf_lb0.2_tb1000.csv", "config.yaml"}) {
    ASSERT_TRUE(fs::exists(a / f)) << f;
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  EXPECT_TRUE(fs::exists(a / "manifest.json"));
  EXPECT_NE(slurp(a / "manifest.json").find("\"master_seed\": 7"), std::string::npos);
}

TEST_F(CliTest, SweepWritesOneEcdfPerPoint) {
  const auto cfg = write_config(kSmallRun).string();
  const auto out = dir_ / "sweep";
  const auto r = run({"sweep", "--config", cfg, "--out", out.string(), "--lambdas", "1.0", "--windows", "50",
                      "--policies", "pf", "maxmin", "bapf"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(out / "ecdf_pf_lb1_tb1000.csv"));
  EXPECT_TRUE(fs::exists(out / "ecdf_maxmin_lb1_tb1000.csv"));
  EXPECT_TRUE(fs::exists(out / "ecdf_bapf_lb1_tb1000_nt50.csv"));
  EXPECT_TRUE(fs::exists(out / "manifest.json"));
  std::ifstream summary(out / "summary.csv");
  std::string line;
  int lines = 0;
  while (std::getline(summary, line)) ++lines;
  EXPECT_EQ(lines, 4);
}

TEST_F(CliTest, JsonFormat) {
  const auto cfg = write_config(kSmallRun).string();
  const auto out = dir_ / "json";
  ASSERT_EQ(run({"simulate", "--config", cfg, "--out", out.string(), "--format", "json"}).code, 0);
  EXPECT_TRUE(fs::exists(out / "results.json"));
  EXPECT_FALSE(fs::exists(out / "summary.csv"));
}

TEST_F(CliTest, SeedFallsBackToEnvironment) {
  const auto cfg = write_config(kSmallRun).string();
  ::setenv("MMWSIM_SEED", "99", 1);
  ASSERT_EQ(run({"simulate", "--config", cfg, "--out", (dir_ / "env").string()}).code, 0);
  EXPECT_NE(slurp(dir_ / "env" / "config.yaml").find("master_seed: 99"), std::string::npos);
  ASSERT_EQ(run({"simulate", "--config", cfg, "--seed", "5", "--out", (dir_ / "flag").string()}).code, 0);
  EXPECT_NE(slurp(dir_ / "flag" / "config.yaml").find("master_seed: 5"), std::string::npos);
  ::setenv("MMWSIM_SEED", "abc", 1);
  EXPECT_EQ(run({"simulate", "--config", cfg, "--out", (dir_ / "bad").string()}).code, 1);
}

TEST_F(CliTest, TraceExportsOneFilePerUe) {
  const auto cfg = write_config("horizon_slots: 100\nn_ues: 3\n").string();
  const auto out = dir_ / "trace";
  ASSERT_EQ(run({"trace", "--config", cfg, "--out", out.string()}).code, 0);
  for (int u = 0; u < 3; ++u) EXPECT_TRUE(fs::exists(out / ("trace_ue" + std::to_string(u) + ".csv")));
}

TEST_F(CliTest, ValidatePasses) {
  const auto r = run({"validate", "--threads", "2"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST_F(CliTest, BadInputsFail) {
  EXPECT_NE(run({}).code, 0);
  EXPECT_NE(run({"simulate", "--policy", "rr", "--out", dir_.string()}).code, 0);
  const auto r = run({"simulate", "--config", (dir_ / "missing.yaml").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("mmwsim: error:"), std::string::npos);
  EXPECT_NE(run({"simulate", "--format", "xml"}).code, 0);
  const auto bad = write_config("blockage:\n  bogus: 1\n").string();
  const auto b = run({"simulate", "--config", bad});
  EXPECT_EQ(b.code, 1);
  EXPECT_NE(b.err.find("line 2"), std::string::npos) << b.err;
}

}  // namespace
}  // namespace mmwsim

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wpd/experiment.hpp"

namespace fs = std::filesystem;
using namespace wpd;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("wpdsim_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write(const fs::path& dir, const std::string& name, const std::string& text) {
  auto p = dir / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> rows(const fs::path& p) {
  std::vector<std::vector<std::string>> out;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    out.push_back(cells);
  }
  return out;
}

int run_cli(const std::string& args) {
#ifdef WPDSIM_CLI
  const std::string cmd = std::string(WPDSIM_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
#else
  (void)args;
  return -1;
#endif
}

}  // namespace

TEST(Cli, DeterministicTablesMatchClosedForm) {
  auto dir = scratch("tables");
  auto cfg = write(dir, "t.json",
                   R"({"experiment":"tables","channel":{"type":"rayleigh","levels":1,"mean":1.0},"T":10,"m":2,)"
                   R"("lambda":1,"beacon_power_dbm":30,"eta":1,"slot_ms":1000})");
  auto out = run_experiment(load_config(cfg), dir / "out");
  ASSERT_EQ(out.exit_code, kExitOk) << out.message;
  auto r = rows(dir / "out" / "tables.csv");
  ASSERT_EQ(r.size(), 11u);
  EXPECT_EQ(r[0], (std::vector<std::string>{"t", "Q", "gamma_J"}));
  EXPECT_EQ(r[1][2], "");
  for (int t = 1; t < 10; ++t) {
    EXPECT_NEAR(std::stod(r[static_cast<std::size_t>(t) + 1][2]), 10 - t, 1e-9);
    EXPECT_NEAR(std::stod(r[static_cast<std::size_t>(t) + 1][1]), std::sqrt(10 - t), 1e-12);
  }
}

TEST(Cli, ValidateWritesEmptyViolationFile) {
  auto dir = scratch("validate");
  auto cfg = write(dir, "v.json", R"({"experiment":"validate","validate_instances":5})");
  auto out = run_experiment(load_config(cfg), dir);
  EXPECT_EQ(out.exit_code, kExitOk) << out.message;
  EXPECT_EQ(slurp(dir / "validate.csv"), "check,instance,detail\n");
}

TEST(Cli, BanditWritesFourLabelledSeries) {
  auto dir = scratch("bandit");
  auto cfg = write(dir, "b.json",
                   R"({"experiment":"bandit-regret","channel":{"type":"rayleigh","levels":30},"T":15,)"
                   R"("lambda":1e-14,"eta":0.02,"bandit_steps":50,"replications":20,"oracle_plays":2000,)"
                   R"("arms":[{"L_bits":1000,"Z":500,"E_uJ":1},{"L_bits":2500,"Z":700,"E_uJ":3},)"
                   R"({"L_bits":3000,"Z":750,"E_uJ":4}]})");
  auto out = run_experiment(load_config(cfg), dir);
  ASSERT_EQ(out.exit_code, kExitOk) << out.message;
  auto r = rows(dir / "bandit-regret.csv");
  EXPECT_EQ(r[0], (std::vector<std::string>{"step", "algorithm", "mean_regret", "stderr"}));
  std::set<std::string> labels;
  for (std::size_t i = 1; i < r.size(); ++i) labels.insert(r[i][1]);
  EXPECT_EQ(labels, (std::set<std::string>{"ts", "eps_greedy(0)", "eps_greedy(0.05)", "eps_greedy(0.1)"}));
  EXPECT_EQ(r.size(), 1u + 4u * 50u);
  auto arms = rows(dir / "bandit-arms.csv");
  EXPECT_EQ(arms[0], (std::vector<std::string>{"k", "L_k", "Z_k", "E_k_uJ", "theta_hat", "pulls"}));
  EXPECT_EQ(arms[3][3], "4");
}

TEST(Cli, ExitCodes) {
#ifndef WPDSIM_CLI
  GTEST_SKIP() << "CLI not built";
#endif
  auto dir = scratch("exit");
  auto good = write(dir, "good.json", R"({"experiment":"tables","T":6})");
  auto bad = write(dir, "bad.json", R"({"experiment":"tables","lambda":-1})");
  EXPECT_EQ(run_cli("--config " + good.string() + " --out " + (dir / "a").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "a" / "tables.csv"));
  EXPECT_EQ(run_cli("--config " + bad.string() + " --out " + (dir / "b").string()), 1);
  EXPECT_FALSE(fs::exists(dir / "b" / "tables.csv"));
  EXPECT_EQ(run_cli("--config " + (dir / "missing.json").string()), 1);
  EXPECT_EQ(run_cli("--out x"), 1);
  write(dir, "blocker", "not a directory");
  EXPECT_EQ(run_cli("--config " + good.string() + " --out " + (dir / "blocker").string()), 2);
}

TEST(Cli, SeedOverrideAndByteIdenticalReruns) {
#ifndef WPDSIM_CLI
  GTEST_SKIP() << "CLI not built";
#endif
  auto dir = scratch("det");
  auto cfg = write(dir, "c.json",
                   R"({"experiment":"throughput-vs-T","T_sweep":[8,12],"trials":3000,"baseline_scan_trials":300,)"
                   R"("seed":4})");
  ASSERT_EQ(run_cli("--config " + cfg.string() + " --out " + (dir / "a").string() + " --threads 1"), 0);
  ASSERT_EQ(run_cli("--config " + cfg.string() + " --out " + (dir / "b").string() + " --threads 3"), 0);
  ASSERT_EQ(run_cli("--config " + cfg.string() + " --out " + (dir / "c").string() + " --seed 5"), 0);
  const auto a = slurp(dir / "a" / "throughput-vs-T.csv");
  EXPECT_EQ(a, slurp(dir / "b" / "throughput-vs-T.csv"));
  EXPECT_NE(a, slurp(dir / "c" / "throughput-vs-T.csv"));
  EXPECT_EQ(rows(dir / "a" / "throughput-vs-T.csv").size(), 1u + 2u * 4u);
}

TEST(Cli, ShippedConfigsParse) {
  for (const auto& entry : fs::directory_iterator(WPDSIM_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    EXPECT_NO_THROW(load_config(entry.path())) << entry.path();
  }
}

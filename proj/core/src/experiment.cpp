#include "wpd/experiment.hpp"

#include <fstream>
#include <stdexcept>
#include <system_error>

#include "wpd/bandit.hpp"
#include "wpd/config.hpp"
#include "wpd/csv.hpp"
#include "wpd/online.hpp"
#include "wpd/parallel.hpp"
#include "wpd/sim.hpp"
#include "wpd/validation.hpp"

namespace wpd {

namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kOracleSalt = 0x6f7261636c65ULL;

struct Output {
  std::string name;
  CsvTable table;
};

SimOptions sim_options(const ExperimentConfig& c) {
  return SimOptions{c.trials, c.seed, resolve_threads(c.threads), c.baseline_scan_trials};
}

const MonteCarloSummary& pick(const PolicyComparison& cmp, PolicyKind kind) {
  switch (kind) {
    case PolicyKind::offline: return cmp.offline;
    case PolicyKind::online: return cmp.online;
    case PolicyKind::uniform: return cmp.uniform;
    case PolicyKind::power_halving: return cmp.power_halving;
  }
  throw std::logic_error("unknown policy");
}

std::vector<std::string> throughput_header(bool with_rate) {
  std::vector<std::string> h = {"policy", "T", "N", "trials", "mean_bits", "stderr", "mean_t0", "mean_harvest_J"};
  if (with_rate) {
    h.emplace_back("mean_rate_bps");
    h.emplace_back("stderr_rate_bps");
  }
  return h;
}

void add_throughput_rows(CsvTable& table, const ExperimentConfig& c, const PolicyComparison& cmp, int horizon,
                         std::size_t levels, bool with_rate) {
  const double frame_seconds = horizon * c.slot_ms * 1e-3;
  for (const auto& name : c.policies) {
    const auto kind = parse_policy(name);
    if (!kind) throw std::logic_error("policy survived validation: " + name);
    const auto& s = pick(cmp, *kind);
    std::vector<CsvCell> row = {CsvCell(name),      CsvCell(horizon),     CsvCell(levels),
                                CsvCell(s.trials),  CsvCell(s.mean),      CsvCell(s.std_error),
                                CsvCell(s.mean_t0), CsvCell(s.mean_harvest)};
    if (with_rate) {
      row.emplace_back(s.mean / frame_seconds);
      row.emplace_back(s.std_error / frame_seconds);
    }
    table.add_row(row);
  }
}

Output rate_energy(const ExperimentConfig& c) {
  std::vector<int> grid = c.t0_grid;
  if (grid.empty())
    for (int t0 = 2; t0 <= c.horizon; ++t0) grid.push_back(t0);
  const auto curve = rate_energy_curve(build_channel(c.channel), c.frame(), grid, sim_options(c));
  CsvTable table({"t0", "mean_energy_J", "mean_bits", "stderr_bits"});
  for (const auto& p : curve) table.add_row({p.t0, p.mean_energy, p.mean_bits, p.std_error});
  return {c.experiment, std::move(table)};
}

Output throughput_vs_n(const ExperimentConfig& c) {
  CsvTable table(throughput_header(false));
  for (std::size_t n : c.n_sweep) {
    ChannelConfig cc = c.channel;
    cc.levels = n;
    const auto channel = build_channel(cc);
    const auto cmp = compare_policies(channel, c.frame(), sim_options(c));
    add_throughput_rows(table, c, cmp, c.horizon, channel.size(), false);
  }
  return {c.experiment, std::move(table)};
}

Output throughput_vs_t(const ExperimentConfig& c, bool with_rate) {
  CsvTable table(throughput_header(with_rate));
  const auto channel = build_channel(c.channel);
  for (int horizon : c.t_sweep) {
    const auto cmp = compare_policies(channel, c.frame(horizon), sim_options(c));
    add_throughput_rows(table, c, cmp, horizon, channel.size(), with_rate);
  }
  return {c.experiment, std::move(table)};
}

Output tables(const ExperimentConfig& c) {
  const OnlineTables t(build_channel(c.channel), c.horizon, c.rate_params(), c.harvest_params());
  CsvTable table({"t", "Q", "gamma_J"});
  for (int s = 0; s < c.horizon; ++s) {
    if (s == 0)
      table.add_row({s, t.q(s), ""});
    else
      table.add_row({s, t.q(s), t.gamma(s)});
  }
  return {c.experiment, std::move(table)};
}

std::vector<Output> bandit_regret(const ExperimentConfig& c) {
  const unsigned threads = resolve_threads(c.threads);
  OnlineTables tables(build_channel(c.channel), c.horizon, c.rate_params(), c.harvest_params());
  const SensingEnvironment env(std::move(tables), c.arms);
  const auto oracle = estimate_arm_oracle(env, c.oracle_plays, derive_seed(c.seed, kOracleSalt), threads);

  std::vector<BanditAlgorithm> algorithms;
  if (c.include_ts) algorithms.push_back(BanditAlgorithm::thompson());
  for (double eps : c.epsilons) algorithms.push_back(BanditAlgorithm::greedy(eps));

  CsvTable series({"step", "algorithm", "mean_regret", "stderr"});
  for (const auto& alg : algorithms) {
    const auto r = run_regret_experiment(alg, env, oracle, c.bandit_steps, c.replications, c.seed, threads);
    for (std::size_t s = 0; s < r.mean_regret.size(); ++s)
      series.add_row({s + 1, r.algorithm, r.mean_regret[s], r.std_error[s]});
  }

  CsvTable arms({"k", "L_k", "Z_k", "E_k_uJ", "theta_hat", "pulls"});
  for (std::size_t k = 0; k < c.arms.size(); ++k)
    arms.add_row({k + 1, c.arms[k].bits, c.arms[k].utility, c.arms[k].energy_cost * 1e6, oracle.theta[k],
                  oracle.plays[k]});
  std::vector<Output> out;
  out.push_back({c.experiment, std::move(series)});
  out.push_back({"bandit-arms", std::move(arms)});
  return out;
}

Output validate(const ExperimentConfig& c, bool& clean) {
  const auto violations = run_validation_suite(c.seed, c.validate_instances);
  CsvTable table({"check", "instance", "detail"});
  for (const auto& v : violations) table.add_row({v.check, v.instance, v.detail});
  clean = violations.empty();
  return {c.experiment, std::move(table)};
}

void remove_quietly(const fs::path& p) {
  std::error_code ec;
  fs::remove(p, ec);
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& config, const fs::path& out_dir) {
  RunOutcome outcome;
  std::vector<fs::path> staged;
  std::vector<fs::path> final_paths;
  try {
    std::vector<Output> outputs;
    bool clean = true;
    const auto& e = config.experiment;
    if (e == "rate-energy")
      outputs.push_back(rate_energy(config));
    else if (e == "throughput-vs-N")
      outputs.push_back(throughput_vs_n(config));
    else if (e == "throughput-vs-T")
      outputs.push_back(throughput_vs_t(config, false));
    else if (e == "rate-vs-T")
      outputs.push_back(throughput_vs_t(config, true));
    else if (e == "bandit-regret")
      outputs = bandit_regret(config);
    else if (e == "tables")
      outputs.push_back(tables(config));
    else if (e == "validate")
      outputs.push_back(validate(config, clean));
    else
      throw ConfigError("experiment", "unknown experiment '" + e + "'");

    fs::create_directories(out_dir);
    for (const auto& o : outputs) {
      const fs::path target = out_dir / (o.name + ".csv");
      fs::path tmp = target;
      tmp += ".tmp";
      staged.push_back(tmp);
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f) throw std::runtime_error("cannot write " + tmp.string());
      f << o.table.str();
      f.close();
      if (!f) throw std::runtime_error("failed writing " + tmp.string());
      final_paths.push_back(target);
    }
    for (std::size_t i = 0; i < staged.size(); ++i) fs::rename(staged[i], final_paths[i]);
    outcome.files = final_paths;
    if (!clean) {
      outcome.exit_code = kExitRuntimeFailure;
      outcome.message = "validation found violations; see " + final_paths.front().string();
    }
  } catch (const ConfigError& err) {
    for (const auto& p : staged) remove_quietly(p);
    outcome.exit_code = kExitConfigError;
    outcome.message = std::string("config error: ") + err.what();
  } catch (const std::exception& err) {
    for (const auto& p : staged) remove_quietly(p);
    for (const auto& p : final_paths) remove_quietly(p);
    outcome.exit_code = kExitRuntimeFailure;
    outcome.message = err.what();
  }
  return outcome;
}

RunOutcome run_from_file(const fs::path& config_path, const fs::path& out_dir,
                         std::optional<std::uint64_t> seed_override, std::optional<unsigned> threads_override) {
  ExperimentConfig config;
  try {
    config = load_config(config_path);
  } catch (const ConfigError& err) {
    return {kExitConfigError, {}, std::string("config error: ") + err.what()};
  } catch (const std::exception& err) {
    return {kExitConfigError, {}, err.what()};
  }
  if (seed_override) config.seed = *seed_override;
  if (threads_override) config.threads = *threads_override;
  return run_experiment(config, out_dir);
}

}  // namespace wpd

#include "wpd/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace wpd {

using nlohmann::json;

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& prefix) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.count(it.key())) throw ConfigError(prefix + it.key(), "unknown key");
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
  return v;
}

std::int64_t integer(const json& j, const std::string& field) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (std::floor(v) == v && std::abs(v) < 9e15) return static_cast<std::int64_t>(v);
  }
  throw ConfigError(field, "expected an integer");
}

std::size_t count(const json& j, const std::string& field, std::size_t min_value) {
  const auto v = integer(j, field);
  if (v < static_cast<std::int64_t>(min_value))
    throw ConfigError(field, "must be at least " + std::to_string(min_value));
  return static_cast<std::size_t>(v);
}

template <class F>
void for_each_item(const json& j, const std::string& field, F&& f) {
  if (!j.is_array()) throw ConfigError(field, "expected an array");
  for (std::size_t i = 0; i < j.size(); ++i) f(j[i], field + "[" + std::to_string(i) + "]");
}

ChannelConfig channel_from_json(const json& j, const std::string& prefix) {
  if (!j.is_object()) throw ConfigError(prefix.empty() ? "channel" : prefix, "expected an object");
  const std::string p = prefix.empty() ? "" : prefix + ".";
  if (!j.contains("type")) throw ConfigError(p + "type", "missing");
  if (!j["type"].is_string()) throw ConfigError(p + "type", "expected a string");
  const auto type = j["type"].get<std::string>();
  ChannelConfig c;
  if (type == "rayleigh") {
    reject_unknown(j, {"type", "levels", "mean"}, p);
    c.type = ChannelConfig::Type::rayleigh;
    if (j.contains("levels")) c.levels = count(j["levels"], p + "levels", 1);
    if (j.contains("mean")) c.mean = number(j["mean"], p + "mean");
    if (!(c.mean > 0.0)) throw ConfigError(p + "mean", "must be positive");
  } else if (type == "gilbert-elliot") {
    reject_unknown(j, {"type", "p_good", "g_good", "g_bad"}, p);
    c.type = ChannelConfig::Type::gilbert_elliot;
    if (j.contains("p_good")) c.p_good = number(j["p_good"], p + "p_good");
    if (j.contains("g_good")) c.g_good = number(j["g_good"], p + "g_good");
    if (j.contains("g_bad")) c.g_bad = number(j["g_bad"], p + "g_bad");
    if (!(c.p_good > 0.0 && c.p_good < 1.0)) throw ConfigError(p + "p_good", "must lie in (0, 1)");
    if (c.g_good < 0.0) throw ConfigError(p + "g_good", "must be non-negative");
    if (c.g_bad < 0.0) throw ConfigError(p + "g_bad", "must be non-negative");
  } else {
    throw ConfigError(p + "type", "expected \"rayleigh\" or \"gilbert-elliot\", got \"" + type + "\"");
  }
  return c;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
  }
}

bool needs(std::string_view experiment, std::initializer_list<std::string_view> names) {
  return std::find(names.begin(), names.end(), experiment) != names.end();
}

}  // namespace

ChannelModel build_channel(const ChannelConfig& config) {
  if (config.type == ChannelConfig::Type::rayleigh) return discretize_rayleigh(config.levels, config.mean);
  return gilbert_elliot(config.p_good, config.g_good, config.g_bad);
}

ChannelConfig parse_channel_config(std::string_view json_text) { return channel_from_json(parse_json(json_text), ""); }

HarvestParams ExperimentConfig::harvest_params() const {
  return HarvestParams(dbm_to_watts(beacon_power_dbm), eta, slot_ms * 1e-3);
}

FrameConfig ExperimentConfig::frame(int horizon_override) const {
  return FrameConfig{horizon_override != 0 ? horizon_override : horizon, rate_params(), harvest_params()};
}

ExperimentConfig parse_config(std::string_view json_text) {
  const json root = parse_json(json_text);
  if (!root.is_object()) throw ConfigError("<document>", "expected a JSON object");
  reject_unknown(root,
                 {"experiment", "channel", "T", "m", "lambda", "beacon_power_dbm", "eta", "slot_ms", "bandwidth_hz",
                  "noise_dbm_per_hz", "trials", "seed", "threads", "baseline_scan_trials", "t0_grid", "N_sweep",
                  "T_sweep", "policies", "arms", "bandit_steps", "replications", "epsilons", "include_ts",
                  "oracle_plays", "validate_instances"},
                 "");

  ExperimentConfig c;
  if (!root.contains("experiment")) throw ConfigError("experiment", "missing");
  if (!root["experiment"].is_string()) throw ConfigError("experiment", "expected a string");
  c.experiment = root["experiment"].get<std::string>();
  if (std::find(std::begin(kExperiments), std::end(kExperiments), c.experiment) == std::end(kExperiments))
    throw ConfigError("experiment", "unknown experiment \"" + c.experiment + "\"");

  if (root.contains("channel")) c.channel = channel_from_json(root["channel"], "channel");
  if (root.contains("T")) c.horizon = static_cast<int>(count(root["T"], "T", 2));
  if (root.contains("m")) c.m = number(root["m"], "m");
  if (root.contains("lambda")) c.lambda = number(root["lambda"], "lambda");
  if (root.contains("beacon_power_dbm")) c.beacon_power_dbm = number(root["beacon_power_dbm"], "beacon_power_dbm");
  if (root.contains("eta")) c.eta = number(root["eta"], "eta");
  if (root.contains("slot_ms")) c.slot_ms = number(root["slot_ms"], "slot_ms");
  if (root.contains("bandwidth_hz")) c.bandwidth_hz = number(root["bandwidth_hz"], "bandwidth_hz");
  if (root.contains("noise_dbm_per_hz")) c.noise_dbm_per_hz = number(root["noise_dbm_per_hz"], "noise_dbm_per_hz");
  if (root.contains("trials")) c.trials = count(root["trials"], "trials", 1);
  if (root.contains("seed")) {
    const auto& s = root["seed"];
    if (s.is_number_unsigned())
      c.seed = s.get<std::uint64_t>();
    else
      c.seed = static_cast<std::uint64_t>(count(s, "seed", 0));
  }
  if (root.contains("threads")) c.threads = static_cast<unsigned>(count(root["threads"], "threads", 0));
  if (root.contains("baseline_scan_trials"))
    c.baseline_scan_trials = count(root["baseline_scan_trials"], "baseline_scan_trials", 1);
  if (root.contains("bandit_steps")) c.bandit_steps = count(root["bandit_steps"], "bandit_steps", 1);
  if (root.contains("replications")) c.replications = count(root["replications"], "replications", 1);
  if (root.contains("oracle_plays")) c.oracle_plays = count(root["oracle_plays"], "oracle_plays", 1);
  if (root.contains("validate_instances"))
    c.validate_instances = count(root["validate_instances"], "validate_instances", 1);
  if (root.contains("include_ts")) {
    if (!root["include_ts"].is_boolean()) throw ConfigError("include_ts", "expected true or false");
    c.include_ts = root["include_ts"].get<bool>();
  }

  if (!(c.m > 1.0)) throw ConfigError("m", "monomial order must be > 1");
  if (!(c.lambda > 0.0)) throw ConfigError("lambda", "must be > 0");
  if (!(c.eta > 0.0 && c.eta <= 1.0)) throw ConfigError("eta", "must lie in (0, 1]");
  if (!(c.slot_ms > 0.0)) throw ConfigError("slot_ms", "must be > 0");

  if (root.contains("t0_grid")) {
    for_each_item(root["t0_grid"], "t0_grid", [&](const json& item, const std::string& field) {
      const auto t0 = integer(item, field);
      if (t0 < 2 || t0 > c.horizon) throw ConfigError(field, "must lie in [2, T] = [2, " + std::to_string(c.horizon) + "]");
      c.t0_grid.push_back(static_cast<int>(t0));
    });
  }
  if (root.contains("N_sweep")) {
    for_each_item(root["N_sweep"], "N_sweep",
                  [&](const json& item, const std::string& field) { c.n_sweep.push_back(count(item, field, 1)); });
  }
  if (root.contains("T_sweep")) {
    for_each_item(root["T_sweep"], "T_sweep", [&](const json& item, const std::string& field) {
      c.t_sweep.push_back(static_cast<int>(count(item, field, 2)));
    });
  }
  if (root.contains("policies")) {
    c.policies.clear();
    for_each_item(root["policies"], "policies", [&](const json& item, const std::string& field) {
      if (!item.is_string() || !parse_policy(item.get<std::string>()))
        throw ConfigError(field, "expected one of offline, online, uniform, power_halving");
      c.policies.push_back(std::string(to_string(*parse_policy(item.get<std::string>()))));
    });
    if (c.policies.empty()) throw ConfigError("policies", "must not be empty");
  }
  if (root.contains("epsilons")) {
    c.epsilons.clear();
    for_each_item(root["epsilons"], "epsilons", [&](const json& item, const std::string& field) {
      const double e = number(item, field);
      if (!(e >= 0.0 && e <= 1.0)) throw ConfigError(field, "must lie in [0, 1]");
      c.epsilons.push_back(e);
    });
  }
  if (root.contains("arms")) {
    for_each_item(root["arms"], "arms", [&](const json& item, const std::string& field) {
      if (!item.is_object()) throw ConfigError(field, "expected an object");
      reject_unknown(item, {"L_bits", "Z", "E_uJ"}, field + ".");
      for (const char* key : {"L_bits", "Z", "E_uJ"})
        if (!item.contains(key)) throw ConfigError(field + "." + key, "missing");
      ArmSpec arm{number(item["L_bits"], field + ".L_bits"), number(item["Z"], field + ".Z"),
                  number(item["E_uJ"], field + ".E_uJ") * 1e-6};
      if (arm.bits < 0.0) throw ConfigError(field + ".L_bits", "must be non-negative");
      if (!(arm.utility > 0.0)) throw ConfigError(field + ".Z", "must be positive");
      if (arm.energy_cost < 0.0) throw ConfigError(field + ".E_uJ", "must be non-negative");
      if (!c.arms.empty() && c.arms.back().bits > arm.bits)
        throw ConfigError(field + ".L_bits", "arms must be sorted by packet size");
      c.arms.push_back(arm);
    });
  }

  // Experiment-specific requirements, checked up front.
  ChannelModel channel = [&] {
    try {
      return build_channel(c.channel);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("channel", e.what());
    }
  }();
  if (needs(c.experiment, {"rate-energy", "tables", "bandit-regret", "throughput-vs-T", "rate-vs-T",
                           "throughput-vs-N"}) &&
      !channel.has_positive_gain())
    throw ConfigError("channel", "at least one level must have positive gain");
  if (needs(c.experiment, {"throughput-vs-N"})) {
    if (c.n_sweep.empty()) throw ConfigError("N_sweep", "required for throughput-vs-N");
    if (c.channel.type != ChannelConfig::Type::rayleigh)
      throw ConfigError("channel.type", "throughput-vs-N sweeps Rayleigh discretization levels");
  }
  if (needs(c.experiment, {"throughput-vs-T", "rate-vs-T"}) && c.t_sweep.empty())
    throw ConfigError("T_sweep", "required for " + c.experiment);
  if (c.experiment == "bandit-regret") {
    if (c.arms.empty()) throw ConfigError("arms", "required for bandit-regret");
    if (c.epsilons.empty() && !c.include_ts) throw ConfigError("epsilons", "no algorithm selected");
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace wpd

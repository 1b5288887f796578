#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "wpd/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Wireless-powered device simulator"};
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  app.add_option("--config", config_path, "Experiment configuration (JSON)")->required();
  app.add_option("--out", out_dir, "Output directory for CSV files");
  app.add_option("--seed", seed, "Master seed, overrides the config");
  app.add_option("--threads", threads, "Worker threads, 0 = hardware concurrency");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? wpd::kExitOk : wpd::kExitConfigError;
  }

  const auto outcome = wpd::run_from_file(config_path, out_dir, seed, threads);
  if (outcome.exit_code != wpd::kExitOk) {
    std::cerr << "wpdsim: " << outcome.message << '\n';
    return outcome.exit_code;
  }
  for (const auto& f : outcome.files) std::cout << f.string() << '\n';
  return wpd::kExitOk;
}

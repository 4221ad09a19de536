#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "glstat/sim.hpp"

int main(int argc, char** argv) {
  CLI::App app{"GL-statistics simulation harness"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  std::string config_path;
  run->add_option("config", config_path, "Path to the JSON config file")->required();
  std::int64_t seed_override = -1;
  run->add_option("--seed", seed_override, "Override the config seed");
  int replicates_override = 0;
  run->add_option("--replicates", replicates_override, "Override the replicate count");
  std::string out_override;
  run->add_option("--out", out_override, "Override the output path");
  int threads = 0;
  run->add_option("--threads", threads, "Number of OpenMP threads (0 = runtime default)");

  CLI11_PARSE(app, argc, argv);

  try {
    auto config = glstat::ExperimentConfig::from_json_file(config_path);
    if (seed_override >= 0) config.seed = static_cast<std::uint64_t>(seed_override);
    if (replicates_override > 0) config.replicates = replicates_override;
    if (!out_override.empty()) config.output_path = out_override;
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif
    std::cout << "# glstat " << glstat::kVersion << " config=" << glstat::config_hash(config)
              << " seed=" << config.seed << " replicates=" << config.replicates << "\n";
    glstat::run_experiment(config);
    std::cout << "wrote " << config.output_path << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "specband/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Discretized half-line transforms, localization spectra and uncertainty audits"};
  std::string command;
  std::string config_path;
  std::optional<double> X;
  std::optional<int> N;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  bool force = false;
  app.add_option("command", command, "info, spectrum, approx, audit, multiplier or sequence");
  app.add_option("-c,--config", config_path, "JSON run configuration")->required();
  app.add_option("--X", X, "time extent override");
  app.add_option("--N", N, "node count override");
  app.add_option("--seed", seed, "seed override");
  app.add_option("--out", out_dir, "output directory override");
  app.add_flag("--force", force, "continue when the Parseval defect exceeds defect_max");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : specband::kExitConfig;
  }

  specband::RunConfig cfg;
  try {
    cfg = specband::load_config(config_path);
  } catch (const specband::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return specband::kExitConfig;
  }
  if (!command.empty()) {
    const auto& names = specband::command_names();
    if (std::find(names.begin(), names.end(), command) == names.end()) {
      std::cerr << "unknown command '" << command << "'\n";
      return specband::kExitConfig;
    }
    cfg.command = command;
  }
  if (X) cfg.X = *X;
  if (N) cfg.N = *N;
  if (seed) cfg.seed = *seed;
  if (out_dir) cfg.output_dir = *out_dir;

  specband::RunOptions options;
  options.force = force;
  options.threads = specband::threads_from_env();
  return specband::run(cfg, options, std::cout, std::cerr);
}

// mbnsim: command-line front end for the multi-band network simulator.
//
//   mbnsim run --config <path> [--preset <name>] [--seed <u64>] [--out <dir>] [--trials <n>]
//   mbnsim presets
//
// Exit status: 0 on success, 2 on configuration errors, 1 on runtime errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mbnsim/config.hpp"
#include "mbnsim/error.hpp"
#include "mbnsim/output.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw mbnsim::ConfigError("config: cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo simulator and deployment planner for RF/THz multi-band networks"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run the sweeps and planner described by a config");
  std::string config_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::size_t> trials;
  std::optional<unsigned> threads;
  run_cmd->add_option("--config", config_path, "JSON experiment config");
  run_cmd->add_option("--preset", preset, "Built-in preset applied beneath the config");
  run_cmd->add_option("--seed", seed, "Master seed override");
  run_cmd->add_option("--out", out_dir, "Output directory override");
  run_cmd->add_option("--trials", trials, "Trials per point (sweeps and planner)");
  run_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* presets_cmd = app.add_subcommand("presets", "List built-in presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (presets_cmd->parsed()) {
    for (const auto& name : mbnsim::preset_names()) std::cout << name << '\n';
    return 0;
  }

  mbnsim::ExperimentConfig config;
  try {
    if (config_path.empty() && preset.empty())
      throw mbnsim::ConfigError("run: --config <path> is required (or pass --preset <name>)");
    const std::string text = config_path.empty() ? std::string("{}") : read_file(config_path);
    std::optional<std::string> preset_override;
    if (!preset.empty()) preset_override = preset;
    config = mbnsim::parse_config(text, preset_override);
    if (seed) config.seed = *seed;
    if (out_dir) config.output_dir = *out_dir;
    if (threads) config.threads = *threads;
    if (trials) {
      for (auto& s : config.sweeps) s.trials_per_point = *trials;
      if (config.planner) config.planner->trials = *trials;
    }
    mbnsim::validate(config);
  } catch (const mbnsim::ConfigError& e) {
    for (const auto& msg : e.field_errors()) std::cerr << "config error: " << msg << '\n';
    return kExitConfig;
  }

  try {
    const auto report = mbnsim::run(config);
    for (const auto& p : report.csv_files) std::cout << p.string() << '\n';
    std::cout << report.manifest.string() << '\n';
  } catch (const mbnsim::ConfigError& e) {
    for (const auto& msg : e.field_errors()) std::cerr << "config error: " << msg << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}

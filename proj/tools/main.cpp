#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "config.hpp"
#include "oscmul/error.hpp"
#include "runner.hpp"

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw oscmul::ConfigError("cannot open '" + path + "' for writing");
  os << text;
  if (!os) throw oscmul::ConfigError("write to '" + path + "' failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dyadic experiments for oscillatory bilinear multipliers"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "run one experiment and print its JSON report");
  std::string experiment, config_path;
  run->add_option("experiment", experiment, "kernel | scaling | necessity | decompose | lemmas | goal-sum")
      ->required()
      ->check(CLI::IsMember(osclab::experiment_names()));
  run->add_option("--config", config_path, "key = value file with optional [experiment] sections");
  std::map<std::string, std::string> flag_values;
  for (const auto& key : osclab::known_keys()) run->add_option("--" + key, flag_values[key]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  std::map<std::string, std::string> flags;
  for (const auto& key : osclab::known_keys())
    if (run->count("--" + key)) flags[key] = flag_values[key];

  osclab::RunResult result;
  std::map<std::string, std::string> cfg;
  try {
    const osclab::ConfigFile file = config_path.empty() ? osclab::ConfigFile{} : osclab::load_config(config_path);
    cfg = osclab::resolve_config(file, experiment, flags);
    result = osclab::run_experiment(experiment, cfg);
  } catch (const oscmul::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const oscmul::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const oscmul::RangeError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    const std::string text = result.report.dump(2) + "\n";
    if (auto it = cfg.find("out"); it != cfg.end()) write_text(it->second, text);
    if (auto it = cfg.find("csv"); it != cfg.end()) write_text(it->second, osclab::csv_text(result.rows));
    if (auto it = cfg.find("dump"); it != cfg.end()) {
      if (!result.kernel) throw oscmul::ConfigError("dump applies to the kernel experiment only");
      oscmul::write_kernel_dump(*result.kernel, it->second);
    }
    std::cout << text;
  } catch (const oscmul::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

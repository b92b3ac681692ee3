#include <CLI11.hpp>
#include <iostream>

#include "mplab/config.hpp"
#include "mplab/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"mp-lab: maximum-principle certificates and finite-difference cross checks for degenerate elliptic operators on cylindrical domains"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir;
  int threads = 0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;

  CLI::App* run = app.add_subcommand("run", "run a scenario config and write reports");
  run->add_option("path", scenario_path, "scenario file (JSON; .json suffix optional)")->required();
  run->add_option("--out", out_dir, "output directory (overrides the config)");
  run->add_option("--threads", threads, "worker threads for sampling and sweeps");
  run->add_option("--tolerance", tolerance, "override the scenario tolerance");
  run->add_option("--seed", seed, "override the scenario seed");

  CLI::App* list = app.add_subcommand("list-presets", "print the operator preset registry");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& name : mplab::preset_names()) {
        mplab::Preset p = mplab::preset(name);
        std::cout << name << " — " << p.note << "\n";
      }
      return 0;
    }
    mplab::ScenarioConfig cfg = mplab::load_scenario(scenario_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (threads > 0) cfg.threads = threads;
    if (tolerance > 0.0) cfg.options.tolerance = tolerance;
    if (seed > 0) cfg.options.seed = seed;
    int code = mplab::run_scenario(cfg);
    std::cout << "scenario '" << cfg.name << "' finished with exit code " << code
              << "; reports in " << cfg.out_dir << "/\n";
    return code;
  } catch (const mplab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

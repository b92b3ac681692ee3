#pragma once

#include <string>
#include <vector>

#include "mplab/bounds.hpp"

namespace mplab {

/// A scenario file: one operator, one domain, the requested theorem reports,
/// and the numeric knobs. The on-disk format is JSON with a fixed key set
/// (unknown keys are rejected); see the README for the schema.
struct ScenarioConfig {
  std::string name;
  OperatorSpec op;
  DomainSpec domain;
  std::vector<TheoremId> theorems;
  bool counterexample = false;
  TheoremOptions options;
  std::string out_dir = "out";
  int threads = 1;
};

ScenarioConfig load_scenario(const std::string& path);

struct ScenarioOverrides {
  std::string out_dir;      // empty = keep config value
  int threads = 0;          // 0 = keep
  double tolerance = 0.0;   // 0 = keep
  std::uint64_t seed = 0;   // 0 = keep
};

/// Runs the scenario, writes report.txt / report.json / CSV fields into the
/// output directory. Exit code: 0 all verdicts pass, 2 a hypothesis flag
/// failed, 1 verdict failure or error.
int run_scenario(const ScenarioConfig& cfg);

std::string report_to_json(const std::vector<TheoremReport>& reports, const ScenarioConfig& cfg);
std::string report_to_text(const std::vector<TheoremReport>& reports, const ScenarioConfig& cfg);

/// Barrier families serialize as kind + parameters so scenarios can replay
/// them; supported kinds: sponge, exp_dir, aux_exp, growth.
std::string barrier_to_json_text(const SmoothFunction& family);
SmoothFnPtr barrier_from_json_text(const std::string& text);

}  // namespace mplab

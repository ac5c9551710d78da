#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "evobandit/drivers.hpp"

namespace evobandit {

// Thrown for malformed config files and invalid CLI values; the CLI maps it
// to exit code 2. Messages carry "file:line:" where a line is known.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One algorithm arm of a comparison run, parsed from
//   "tsde" | "<schedule>[:c[:uniform|zeros]]"
// where <schedule> is constant | inverse-sqrt | inverse | zero. Non-tsde
// arms run basic-de with that schedule. The raw spec string is kept as the
// arm label in outputs.
struct ArmSpec {
  std::string label;
  Algorithm algorithm = Algorithm::TSDE;
  MutationSchedule schedule;
  InitKind init = InitKind::Zeros;
};

// A fully resolved run request: the base config plus the sweep/orchestration
// fields that live in config files (n_trials, output_dir, M lists, arms).
struct RunSpec {
  ExperimentConfig base;      // base.M mirrors m_values.front()
  std::vector<int> m_values;  // M sweep; regret.csv gets one block per entry
  int n_trials = 100;
  std::string output_dir = "out";
  std::vector<ArmSpec> arms;  // compare runs only
  bool seed_in_file = false;  // config file set an explicit seed
};

ArmSpec parse_arm(const std::string& spec);

// Flat "key = value" lines, '#' comments, blank lines skipped. Unknown keys
// are hard errors with the offending line number.
RunSpec parse_config_text(const std::string& text, const std::string& name);
RunSpec parse_config_file(const std::string& path);

std::string algorithm_name(Algorithm a);
std::string schedule_name(ScheduleKind k);
std::string init_name(InitKind k);

}  // namespace evobandit

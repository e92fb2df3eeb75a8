#pragma once

#include "shortlist/lab.hpp"
#include "shortlist/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace shortlist {

struct ExperimentConfig {
  std::string machine_version = kMachineVersion;
  std::vector<int> n_values{4, 6, 8};
  std::vector<Rational> deltas{Rational(1, 2), Rational(1, 4)};
  int a_d = 2;
  int a_m = 2;
  int k_d = 8;
  int k_m = 10;
  int c_star = 0;      // frozen by calibration
  int k_len = 0;       // pinned upper bound on the measured length constant
  int k_ch = 16;
  int table_n_max = 12;
  std::uint64_t master_seed = 0x5eed0001;
  std::uint64_t exact_budget = kDefaultExactBudget;
  std::uint64_t sampled_trials = 2000;
  std::string output_dir = "out";
  unsigned workers = 1;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Flat "key=value" lines; '#' starts a comment. Unknown keys are errors.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
// Canonical serialization: every key, fixed order.
std::string format_config(const ExperimentConfig& c);

// FNV-1a 64 of the canonical serialization, as 16 hex digits. The output
// directory and worker count do not affect results and are excluded.
std::string config_hash(const ExperimentConfig& c);

LabConfig lab_config(const ExperimentConfig& c);
BuilderConstants builder_constants(const ExperimentConfig& c);

// Path of the shipped default configuration.
std::string default_config_path();

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace shortlist

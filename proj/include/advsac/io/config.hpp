#pragma once

#include <string>
#include <vector>

#include "advsac/eval/sweep.hpp"
#include "advsac/sac/agent.hpp"
#include "advsac/train/trainer.hpp"

namespace advsac::io {

inline constexpr int kConfigSchemaVersion = 1;

// Defaults used by sweeps when no flags override them.
struct SweepDefaults {
  std::vector<double> amplitudes = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4};
  int episodes_per_cell = 50;
  bool deterministic_policy = true;
};

// The full run description: trainer settings, one SacConfig per agent, sweep
// defaults, output directory and schema tag. JSON round-trip; unknown keys
// are rejected and the schema version is checked on load.
struct RunConfig {
  int schema_version = kConfigSchemaVersion;
  std::string env_id = "pointgoal";
  uint64_t seed = 1;
  std::string output_dir = "runs/out";
  train::TrainerConfig trainer;
  sac::SacConfig protagonist;
  sac::SacConfig adversary;
  SweepDefaults sweep;

  // Copies the shared fields (env_id, seed) into the trainer config and
  // validates everything.
  void finalize();
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);
std::string run_config_to_json(const RunConfig& config);

}  // namespace advsac::io

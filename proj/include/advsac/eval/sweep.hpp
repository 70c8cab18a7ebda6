#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "advsac/env/environment.hpp"
#include "advsac/io/checkpoint.hpp"
#include "advsac/sac/agent.hpp"

namespace advsac::eval {

enum class AttackKind { kNone, kRandomUniform, kAdversaryPolicy };

std::string attack_name(AttackKind kind);
AttackKind attack_from_name(const std::string& name);

struct AttackSpec {
  AttackKind kind = AttackKind::kNone;
  std::optional<std::string> adversary_checkpoint;  // required for kAdversaryPolicy
};

struct SweepSpec {
  std::string env_id;
  std::string policy_checkpoint;
  AttackSpec attack;
  std::vector<double> amplitudes = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4};
  int episodes_per_cell = 50;
  uint64_t seed = 0;
  bool deterministic_policy = true;
  int jobs = 1;

  void validate() const;
};

struct CellStats {
  AttackKind attack = AttackKind::kNone;
  double amplitude = 0.0;
  int episodes = 0;
  double mean_return = 0.0;
  double std_return = 0.0;  // sample standard deviation (n-1)
  double success_rate = 0.0;
};

struct SweepResult {
  std::string env_id;
  uint64_t seed = 0;
  std::vector<CellStats> cells;
};

// Loaded-checkpoint context reused across cells.
struct EvalContext {
  std::string env_id;
  env::DisturbanceMode mode = env::DisturbanceMode::kInternal;
  net::ApproxNet protagonist_actor;
  std::optional<net::ApproxNet> adversary_actor;
};

EvalContext make_eval_context(const SweepSpec& spec);

// One evaluation episode; transitions record the executed action. The
// protagonist runs deterministically when requested, attacks draw from their
// own seeded streams.
env::EpisodeRecord eval_episode(env::Environment& environment, const EvalContext& ctx,
                                AttackKind attack, double amplitude, uint64_t env_seed,
                                uint64_t policy_seed, uint64_t attack_seed,
                                bool deterministic_policy);

CellStats evaluate_cell(const SweepSpec& spec, double amplitude);

// Full grid for the spec's attack kind: |amplitudes| cells in internal mode,
// one cell in external mode. Episodes within a cell may run in parallel
// (spec.jobs); aggregation order is fixed, so output bytes never change.
SweepResult sweep(const SweepSpec& spec);

// Columns: env_id,attack,amplitude,episodes,mean_return,std_return,
// success_rate,seed. Round-trips exactly.
std::string sweep_to_csv(const SweepResult& result);
SweepResult parse_sweep_csv(const std::string& text);

struct OrderingReport {
  // (attack, amplitude) -> adv_trained.mean_return - baseline.mean_return
  std::map<std::pair<std::string, double>, double> return_delta;
  std::map<std::pair<std::string, double>, double> success_delta;
  // (i) adv-trained >= baseline under adversary attack on a majority of cells
  bool adv_trained_ge_baseline_majority = false;
  // (ii) adversary attack <= random attack on the baseline on a majority
  bool adversary_le_random_majority = false;
  // (iii) baseline return non-increasing with amplitude under both attacks
  bool baseline_monotone_nonincreasing = false;
  double spearman_baseline_adversary = 0.0;
  double spearman_baseline_random = 0.0;

  std::string to_string() const;
};

// Compares two sweeps over the same env and grid; `adv_trained` and
// `baseline` must both contain the attack kinds referenced above.
OrderingReport compare_policies(const SweepResult& adv_trained, const SweepResult& baseline);

// Spearman rank correlation with average ranks for ties; 0 for degenerate
// (constant) inputs.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace advsac::eval

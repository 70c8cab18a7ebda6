#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace advsac::env {

enum class RewardKind { kDense, kSparse };

// How the adversary's action enters the world.
//   kInternal: executed = clamp(protagonist + amplitude * adversary), same dims.
//   kExternal: executed = [protagonist, adversary] concatenated.
//   kNone:     executed = protagonist.
enum class DisturbanceMode { kInternal, kExternal, kNone };

struct EnvSpec {
  std::string id;
  int state_dim = 0;
  int protagonist_action_dim = 0;
  int adversary_action_dim = 0;
  int horizon = 0;
  double gamma = 0.98;
  bool goal_conditioned = false;
  int goal_dim = 0;  // 0 unless goal_conditioned
  RewardKind reward_kind = RewardKind::kDense;

  void validate() const;  // throws ConfigError on a bad combination
};

// One environment step as stored for replay. `action` is the acting agent's
// own action, before any composition with the opponent.
struct Transition {
  std::vector<double> state;
  std::vector<double> action;
  double reward = 0.0;
  std::vector<double> next_state;
  bool done = false;
  std::optional<std::vector<double>> goal;
  int step_index = 0;
};

struct JointAction {
  std::vector<double> protagonist;
  std::vector<double> adversary;
  double amplitude = 0.0;  // internal mode only
  DisturbanceMode mode = DisturbanceMode::kNone;
  std::vector<double> executed;
};

struct StepResult {
  std::vector<double> next_state;
  double reward = 0.0;
  bool done = false;
  bool success = false;  // latched within the episode
};

struct EpisodeRecord {
  std::vector<Transition> transitions;
  std::vector<uint8_t> step_success;  // latched per-step success flag
  double undiscounted_return = 0.0;
  double discounted_return = 0.0;
  bool success = false;
  uint64_t seed = 0;
};

// Sum of gamma^t * r_t over the episode's transitions. Throws DomainError on
// an empty episode.
double discounted_return(const EpisodeRecord& episode, double gamma);

}  // namespace advsac::env

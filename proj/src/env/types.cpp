#include "advsac/env/types.hpp"

#include <string>

#include "advsac/errors.hpp"

namespace advsac::env {

void EnvSpec::validate() const {
  if (state_dim < 1 || protagonist_action_dim < 1 || adversary_action_dim < 1) {
    throw ConfigError("EnvSpec '" + id + "': all dims must be >= 1");
  }
  if (horizon < 1) throw ConfigError("EnvSpec '" + id + "': horizon must be >= 1");
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw ConfigError("EnvSpec '" + id + "': gamma must be in (0, 1)");
  }
  if (reward_kind == RewardKind::kSparse && !goal_conditioned) {
    throw ConfigError("EnvSpec '" + id + "': sparse reward requires goal conditioning");
  }
  if (goal_conditioned && goal_dim < 1) {
    throw ConfigError("EnvSpec '" + id + "': goal_conditioned requires goal_dim >= 1");
  }
}

double discounted_return(const EpisodeRecord& episode, double gamma) {
  if (episode.transitions.empty()) {
    throw DomainError("discounted_return: empty episode");
  }
  double total = 0.0;
  double factor = 1.0;
  for (const Transition& t : episode.transitions) {
    total += factor * t.reward;
    factor *= gamma;
  }
  return total;
}

}  // namespace advsac::env

#pragma once

#include <functional>
#include <vector>

#include "advsac/env/types.hpp"
#include "advsac/math/rng.hpp"

namespace advsac::replay {

enum class RelabelKind { kFinal, kFuture };

struct RelabelStrategy {
  RelabelKind kind = RelabelKind::kFinal;
  int future_k = 4;  // future strategy only

  void validate() const;
};

using GoalRewardFn =
    std::function<double(const std::vector<double>& next_state, const std::vector<double>& goal)>;
using AchievedGoalFn = std::function<std::vector<double>(const std::vector<double>& state)>;

// Hindsight relabeling. Returns the original transitions verbatim followed by
// the relabeled copies (goal replaced, reward recomputed via reward_fn; no
// cached reward is ever reused).
//   kFinal:  every transition is duplicated with the goal achieved by the
//            episode's final state.
//   kFuture: each transition gains up to future_k copies with goals achieved
//            later in the same episode (sampled via rng).
// Throws ProtocolError if the episode is not goal-conditioned.
std::vector<env::Transition> relabel_episode(const env::EpisodeRecord& episode,
                                             const RelabelStrategy& strategy,
                                             const GoalRewardFn& reward_fn,
                                             const AchievedGoalFn& achieved_goal_fn,
                                             math::Rng* rng = nullptr);

}  // namespace advsac::replay

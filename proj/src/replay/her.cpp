#include "advsac/replay/her.hpp"

#include "advsac/errors.hpp"

namespace advsac::replay {

void RelabelStrategy::validate() const {
  if (kind == RelabelKind::kFuture && future_k < 1) {
    throw ConfigError("RelabelStrategy: future_k must be >= 1");
  }
}

std::vector<env::Transition> relabel_episode(const env::EpisodeRecord& episode,
                                             const RelabelStrategy& strategy,
                                             const GoalRewardFn& reward_fn,
                                             const AchievedGoalFn& achieved_goal_fn,
                                             math::Rng* rng) {
  strategy.validate();
  if (episode.transitions.empty()) throw DomainError("relabel_episode: empty episode");
  for (const env::Transition& t : episode.transitions) {
    if (!t.goal) throw ProtocolError("relabel_episode: episode is not goal-conditioned");
  }

  std::vector<env::Transition> out = episode.transitions;  // originals, verbatim

  if (strategy.kind == RelabelKind::kFinal) {
    const std::vector<double> final_goal =
        achieved_goal_fn(episode.transitions.back().next_state);
    for (const env::Transition& t : episode.transitions) {
      env::Transition relabeled = t;
      relabeled.goal = final_goal;
      relabeled.reward = reward_fn(t.next_state, final_goal);
      out.push_back(std::move(relabeled));
    }
    return out;
  }

  // kFuture: goals achieved strictly later in the episode. The last
  // transition has no future, so it gets no copies.
  if (rng == nullptr) throw ProtocolError("relabel_episode: future strategy requires an rng");
  const int n = static_cast<int>(episode.transitions.size());
  for (int t = 0; t < n; ++t) {
    const int future_count = n - 1 - t;
    const int copies = std::min(strategy.future_k, future_count);
    for (int c = 0; c < copies; ++c) {
      const int j = t + 1 + rng->uniform_int(future_count);
      const std::vector<double> goal = achieved_goal_fn(episode.transitions[j].next_state);
      env::Transition relabeled = episode.transitions[t];
      relabeled.goal = goal;
      relabeled.reward = reward_fn(relabeled.next_state, goal);
      out.push_back(std::move(relabeled));
    }
  }
  return out;
}

}  // namespace advsac::replay

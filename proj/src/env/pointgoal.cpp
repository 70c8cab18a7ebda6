#include "advsac/env/pointgoal.hpp"

#include <algorithm>
#include <cmath>

#include "advsac/math/rng.hpp"

namespace advsac::env {

PointGoalEnv::PointGoalEnv() {
  spec_.id = "pointgoal";
  spec_.state_dim = 4;  // p, goal
  spec_.protagonist_action_dim = 2;
  spec_.adversary_action_dim = 2;
  spec_.horizon = 30;
  spec_.gamma = 0.98;
  spec_.goal_conditioned = false;
  spec_.reward_kind = RewardKind::kDense;
  spec_.validate();
  done_ = true;
}

void PointGoalEnv::reset(uint64_t seed) {
  math::Rng rng(seed);
  p_[0] = rng.uniform(-1.0, 1.0);
  p_[1] = rng.uniform(-1.0, 1.0);
  goal_[0] = rng.uniform(-1.0, 1.0);
  goal_[1] = rng.uniform(-1.0, 1.0);
  begin_episode();
}

StepResult PointGoalEnv::step(const JointAction& joint) {
  check_not_done();
  check_executed_dim(joint);
  p_[0] = std::clamp(p_[0] + kPointGoalStepScale * joint.executed[0], -1.0, 1.0);
  p_[1] = std::clamp(p_[1] + kPointGoalStepScale * joint.executed[1], -1.0, 1.0);
  const double dist = std::hypot(p_[0] - goal_[0], p_[1] - goal_[1]);
  return finish_step(observation(), -dist, dist < kPointGoalSuccessRadius);
}

std::vector<double> PointGoalEnv::observation() const {
  return {p_[0], p_[1], goal_[0], goal_[1]};
}

}  // namespace advsac::env

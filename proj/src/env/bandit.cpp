#include "advsac/env/bandit.hpp"

#include "advsac/errors.hpp"

namespace advsac::env {

BanditEnv::BanditEnv() {
  spec_.id = "bandit";
  spec_.state_dim = 1;
  spec_.protagonist_action_dim = 1;
  spec_.adversary_action_dim = 1;
  spec_.horizon = 1;
  spec_.gamma = 0.98;
  spec_.goal_conditioned = false;
  spec_.reward_kind = RewardKind::kDense;
  spec_.validate();
  done_ = true;
}

void BanditEnv::reset(uint64_t) { begin_episode(); }

StepResult BanditEnv::step(const JointAction& joint) {
  check_not_done();
  check_executed_dim(joint);
  if (joint.protagonist.size() != 1 || joint.adversary.size() != 1) {
    throw DimensionError("bandit: both raw actions must be scalar");
  }
  // The payoff couples the two raw actions directly; the composed action is
  // irrelevant here.
  const double reward = joint.protagonist[0] * joint.adversary[0];
  return finish_step(observation(), reward, false);
}

std::vector<double> BanditEnv::observation() const { return {0.0}; }

}  // namespace advsac::env

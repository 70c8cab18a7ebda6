#include "advsac/env/turnlite.hpp"

#include <algorithm>
#include <cmath>

#include "advsac/errors.hpp"

namespace advsac::env {

TurnLiteState turnlite_dynamics(const TurnLiteState& state, const std::vector<double>& executed) {
  if (executed.size() != 3) {
    throw DimensionError("turnlite_dynamics: executed must have length 3");
  }
  TurnLiteState next = state;
  double torque = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double q = state.joints[i];
    torque += executed[i] * (1.0 - q * q);
    next.joints[i] = std::clamp(q + kTurnLiteJointStep * executed[i], -1.0, 1.0);
  }
  next.theta = std::clamp(state.theta + kTurnLiteKappa * torque, -M_PI, M_PI);
  return next;
}

double turnlite_reward(const TurnLiteState& prev, const TurnLiteState& next,
                       bool first_crossing) {
  double r = next.theta - prev.theta;
  if (first_crossing) r += kTurnLiteSuccessBonus;
  return r;
}

TurnLiteEnv::TurnLiteEnv() {
  spec_.id = "turnlite";
  spec_.state_dim = 4;  // theta, q0, q1, q2
  spec_.protagonist_action_dim = 3;
  spec_.adversary_action_dim = 3;
  spec_.horizon = 40;
  spec_.gamma = 0.98;
  spec_.goal_conditioned = false;
  spec_.reward_kind = RewardKind::kDense;
  spec_.validate();
  done_ = true;  // reset() required before stepping
}

void TurnLiteEnv::reset(uint64_t) {
  // Fixed initial condition: object at -180 degrees, joints centered.
  state_ = TurnLiteState{};
  crossed_ = false;
  begin_episode();
}

StepResult TurnLiteEnv::step(const JointAction& joint) {
  check_not_done();
  check_executed_dim(joint);
  const TurnLiteState prev = state_;
  state_ = turnlite_dynamics(prev, joint.executed);
  const bool success_now = state_.theta >= 0.0;
  const bool first_crossing = success_now && !crossed_;
  crossed_ = crossed_ || success_now;
  const double reward = turnlite_reward(prev, state_, first_crossing);
  return finish_step(observation(), reward, success_now);
}

std::vector<double> TurnLiteEnv::observation() const {
  return {state_.theta, state_.joints[0], state_.joints[1], state_.joints[2]};
}

}  // namespace advsac::env

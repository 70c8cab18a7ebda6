#pragma once

#include "advsac/env/environment.hpp"

namespace advsac::env {

// Object-turning task with additive joint-space disturbance. Three joints
// drive an object angle theta from -pi toward 0; each joint's torque is
// weighted by an effectiveness factor (1 - q^2) that vanishes as the joint
// saturates, so blindly pushing wastes the joint budget and joint positioning
// matters. Success once theta >= 0 within the 40-step horizon.
struct TurnLiteState {
  double theta = -M_PI;
  double joints[3] = {0.0, 0.0, 0.0};
};

// Per-step angle gain. Sized so the full-push policy turns the object by
// 1.25*pi inside the horizon even though it saturates the joints after five
// steps (see turnlite_dynamics for the recurrence).
inline constexpr double kTurnLiteKappa = 0.35;
inline constexpr double kTurnLiteJointStep = 0.2;
inline constexpr double kTurnLiteSuccessBonus = 5.0;

TurnLiteState turnlite_dynamics(const TurnLiteState& state, const std::vector<double>& executed);
double turnlite_reward(const TurnLiteState& prev, const TurnLiteState& next, bool first_crossing);

class TurnLiteEnv final : public Environment {
 public:
  TurnLiteEnv();

  const EnvSpec& spec() const override { return spec_; }
  DisturbanceMode composition_mode() const override { return DisturbanceMode::kInternal; }
  void reset(uint64_t seed) override;
  StepResult step(const JointAction& joint) override;
  std::vector<double> observation() const override;

  const TurnLiteState& state() const { return state_; }

 private:
  EnvSpec spec_;
  TurnLiteState state_;
  bool crossed_ = false;
};

}  // namespace advsac::env

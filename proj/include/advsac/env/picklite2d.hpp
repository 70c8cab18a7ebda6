#pragma once

#include "advsac/env/environment.hpp"

namespace advsac::env {

// Two-gripper kinematic pick-and-place on the unit table. The protagonist
// gripper must carry the block to the goal; the adversary gripper occupies
// the same table and can block, push, or steal. Sparse reward, goal
// conditioned, 50-step horizon.
struct PickLiteState {
  double p[2] = {0.9, 0.5};      // protagonist gripper
  double q_adv[2] = {0.1, 0.5};  // adversary gripper
  double b[2] = {0.5, 0.5};      // block
  bool grasp_p = false;
  bool grasp_a = false;
  bool frozen = false;  // block left the table; immovable from then on
};

inline constexpr double kPickStepScale = 0.1;
inline constexpr double kPickContactRadius = 0.05;  // gripper-gripper and gripper-block
inline constexpr double kPickGoalRadius = 0.05;
inline constexpr int kPickPushSubsteps = 10;

// executed = [dx_p, dy_p, grip_p, dx_a, dy_a, grip_a], protagonist first.
PickLiteState picklite_dynamics(const PickLiteState& state, const std::vector<double>& executed);
double picklite_reward(const PickLiteState& state, const double goal[2]);

class PickLite2DEnv final : public Environment {
 public:
  PickLite2DEnv();

  const EnvSpec& spec() const override { return spec_; }
  DisturbanceMode composition_mode() const override { return DisturbanceMode::kExternal; }
  void reset(uint64_t seed) override;
  StepResult step(const JointAction& joint) override;
  std::vector<double> observation() const override;
  std::vector<double> goal() const override;
  std::vector<double> achieved_goal(const std::vector<double>& state) const override;
  double goal_reward(const std::vector<double>& next_state,
                     const std::vector<double>& goal) const override;

  const PickLiteState& state() const { return state_; }

 private:
  EnvSpec spec_;
  PickLiteState state_;
  double goal_[2] = {0.5, 0.5};
};

}  // namespace advsac::env

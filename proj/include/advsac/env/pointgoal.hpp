#pragma once

#include "advsac/env/environment.hpp"

namespace advsac::env {

// Sanity task: drive a point to a goal on [-1,1]^2 under dense reward
// -distance. The goal is part of the observation, so the task is dense and
// not goal-conditioned in the replay sense.
class PointGoalEnv final : public Environment {
 public:
  PointGoalEnv();

  const EnvSpec& spec() const override { return spec_; }
  DisturbanceMode composition_mode() const override { return DisturbanceMode::kInternal; }
  void reset(uint64_t seed) override;
  StepResult step(const JointAction& joint) override;
  std::vector<double> observation() const override;

 private:
  EnvSpec spec_;
  double p_[2] = {0.0, 0.0};
  double goal_[2] = {0.0, 0.0};
};

inline constexpr double kPointGoalStepScale = 0.1;
inline constexpr double kPointGoalSuccessRadius = 0.05;

}  // namespace advsac::env

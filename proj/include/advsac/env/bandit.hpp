#pragma once

#include "advsac/env/environment.hpp"

namespace advsac::env {

// One-step diagnostic game with reward r = protagonist * adversary (scalar
// actions). Its exact saddle point is computable by grid search, which makes
// it the reference check for the alternating min-max trainer.
class BanditEnv final : public Environment {
 public:
  BanditEnv();

  const EnvSpec& spec() const override { return spec_; }
  DisturbanceMode composition_mode() const override { return DisturbanceMode::kInternal; }
  void reset(uint64_t seed) override;
  StepResult step(const JointAction& joint) override;
  std::vector<double> observation() const override;

 private:
  EnvSpec spec_;
};

}  // namespace advsac::env

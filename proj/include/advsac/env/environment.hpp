#pragma once

#include <memory>
#include <string>
#include <vector>

#include "advsac/env/types.hpp"

namespace advsac::env {

// Single-threaded episodic state machine. Instances are cheap; evaluation
// creates one per episode and may run many in parallel. All stochasticity is
// confined to reset(seed); dynamics are deterministic.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual const EnvSpec& spec() const = 0;

  // Disturbance mode this environment's dynamics are written for.
  virtual DisturbanceMode composition_mode() const = 0;

  // Starts a new episode. Identical seeds yield identical reset states.
  virtual void reset(uint64_t seed) = 0;

  // Advances one step. Throws ProtocolError if the episode is already done,
  // DimensionError if joint.executed has the wrong length.
  virtual StepResult step(const JointAction& joint) = 0;

  // Current observation vector (length state_dim).
  virtual std::vector<double> observation() const = 0;

  // Episode goal; empty unless goal_conditioned.
  virtual std::vector<double> goal() const;

  // Goal achieved by a given observation (goal-conditioned envs only).
  virtual std::vector<double> achieved_goal(const std::vector<double>& state) const;

  // The environment's own goal-parameterized reward, used by hindsight
  // relabeling (goal-conditioned envs only).
  virtual double goal_reward(const std::vector<double>& next_state,
                             const std::vector<double>& goal) const;

  bool done() const { return done_; }
  int step_index() const { return step_index_; }

 protected:
  void begin_episode() {
    done_ = false;
    success_ = false;
    step_index_ = 0;
  }
  void check_not_done() const;
  void check_executed_dim(const JointAction& joint) const;
  // Shared bookkeeping: advances the step counter, applies the horizon and
  // latches success. Returns the filled StepResult.
  StepResult finish_step(std::vector<double> next_state, double reward, bool success_now);

  bool done_ = false;
  bool success_ = false;
  int step_index_ = 0;
};

// Instantiates a registered environment ("turnlite", "picklite2d",
// "pointgoal", "bandit"). Throws ConfigError for unknown ids.
std::unique_ptr<Environment> make_env(const std::string& id);

// Registered environment identifiers, sorted.
std::vector<std::string> env_ids();

}  // namespace advsac::env

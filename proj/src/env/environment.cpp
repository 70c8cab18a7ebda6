#include "advsac/env/environment.hpp"

#include <algorithm>

#include "advsac/env/bandit.hpp"
#include "advsac/env/picklite2d.hpp"
#include "advsac/env/pointgoal.hpp"
#include "advsac/env/turnlite.hpp"
#include "advsac/errors.hpp"

namespace advsac::env {

std::vector<double> Environment::goal() const { return {}; }

std::vector<double> Environment::achieved_goal(const std::vector<double>&) const {
  throw ProtocolError("achieved_goal: environment '" + spec().id + "' is not goal-conditioned");
}

double Environment::goal_reward(const std::vector<double>&, const std::vector<double>&) const {
  throw ProtocolError("goal_reward: environment '" + spec().id + "' is not goal-conditioned");
}

void Environment::check_not_done() const {
  if (done_) {
    throw ProtocolError("step called on a finished episode of '" + spec().id + "'");
  }
}

void Environment::check_executed_dim(const JointAction& joint) const {
  const EnvSpec& s = spec();
  size_t expected = 0;
  switch (joint.mode) {
    case DisturbanceMode::kInternal:
    case DisturbanceMode::kNone:
      expected = static_cast<size_t>(s.protagonist_action_dim);
      break;
    case DisturbanceMode::kExternal:
      expected = static_cast<size_t>(s.protagonist_action_dim + s.adversary_action_dim);
      break;
  }
  if (joint.executed.size() != expected) {
    throw DimensionError("step on '" + s.id + "': executed action has length " +
                         std::to_string(joint.executed.size()) + ", expected " +
                         std::to_string(expected));
  }
}

StepResult Environment::finish_step(std::vector<double> next_state, double reward,
                                    bool success_now) {
  ++step_index_;
  success_ = success_ || success_now;
  done_ = step_index_ >= spec().horizon;
  StepResult out;
  out.next_state = std::move(next_state);
  out.reward = reward;
  out.done = done_;
  out.success = success_;
  return out;
}

std::unique_ptr<Environment> make_env(const std::string& id) {
  if (id == "turnlite") return std::make_unique<TurnLiteEnv>();
  if (id == "picklite2d") return std::make_unique<PickLite2DEnv>();
  if (id == "pointgoal") return std::make_unique<PointGoalEnv>();
  if (id == "bandit") return std::make_unique<BanditEnv>();
  throw ConfigError("unknown environment id '" + id + "'");
}

std::vector<std::string> env_ids() { return {"bandit", "picklite2d", "pointgoal", "turnlite"}; }

}  // namespace advsac::env

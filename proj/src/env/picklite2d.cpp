#include "advsac/env/picklite2d.hpp"

#include <algorithm>
#include <cmath>

#include "advsac/errors.hpp"
#include "advsac/math/rng.hpp"

namespace advsac::env {

namespace {

double dist2d(const double a[2], const double b[2]) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

bool on_table(const double b[2]) {
  return b[0] >= 0.0 && b[0] <= 1.0 && b[1] >= 0.0 && b[1] <= 1.0;
}

// Largest prefix of the segment start->target that keeps the mover at least
// kPickContactRadius away from `other`. Returns the stopping point.
void truncate_against(const double start[2], const double target[2], const double other[2],
                      double out[2]) {
  const double d[2] = {target[0] - start[0], target[1] - start[1]};
  const double f[2] = {start[0] - other[0], start[1] - other[1]};
  const double a = d[0] * d[0] + d[1] * d[1];
  const double bq = 2.0 * (f[0] * d[0] + f[1] * d[1]);
  const double c = f[0] * f[0] + f[1] * f[1] - kPickContactRadius * kPickContactRadius;
  double t = 1.0;
  if (a > 0.0) {
    if (c <= 0.0) {
      // Already at the contact distance: forbid approach, allow retreat.
      if (bq < 0.0) t = 0.0;
    } else {
      const double disc = bq * bq - 4.0 * a * c;
      if (disc > 0.0) {
        const double t0 = (-bq - std::sqrt(disc)) / (2.0 * a);
        if (t0 >= 0.0 && t0 < 1.0) t = t0;
      }
    }
  }
  out[0] = start[0] + t * d[0];
  out[1] = start[1] + t * d[1];
}

// Sweeps the gripper from start to stop in fixed substeps; whenever the
// gripper disc overlaps the block, the block is projected back out to the
// contact distance. A head-on sweep plows the block ahead of the gripper,
// which is how it can leave the table.
void push_block(const double start[2], const double stop[2], double block[2]) {
  const double d[2] = {stop[0] - start[0], stop[1] - start[1]};
  if (d[0] == 0.0 && d[1] == 0.0) return;
  for (int k = 1; k <= kPickPushSubsteps; ++k) {
    const double t = static_cast<double>(k) / kPickPushSubsteps;
    const double pos[2] = {start[0] + t * d[0], start[1] + t * d[1]};
    const double dist = dist2d(pos, block);
    if (dist >= kPickContactRadius) continue;
    double dir[2];
    if (dist > 0.0) {
      dir[0] = (block[0] - pos[0]) / dist;
      dir[1] = (block[1] - pos[1]) / dist;
    } else {
      const double n = std::hypot(d[0], d[1]);
      dir[0] = d[0] / n;
      dir[1] = d[1] / n;
    }
    block[0] = pos[0] + kPickContactRadius * dir[0];
    block[1] = pos[1] + kPickContactRadius * dir[1];
  }
}

// Moves one gripper (clip to table, truncate against the other gripper) and
// resolves its effect on the block. `holds_block` marks that this gripper
// currently grasps the block; `block_mobile` is false while the other gripper
// holds it or the block is frozen.
void move_gripper(double gripper[2], const double other[2], double dx, double dy,
                  bool holds_block, bool block_mobile, double block[2]) {
  const double start[2] = {gripper[0], gripper[1]};
  const double target[2] = {std::clamp(start[0] + kPickStepScale * dx, 0.0, 1.0),
                            std::clamp(start[1] + kPickStepScale * dy, 0.0, 1.0)};
  double stop[2];
  truncate_against(start, target, other, stop);
  gripper[0] = stop[0];
  gripper[1] = stop[1];
  if (holds_block) {
    block[0] += stop[0] - start[0];
    block[1] += stop[1] - start[1];
  } else if (block_mobile) {
    push_block(start, stop, block);
  }
}

}  // namespace

PickLiteState picklite_dynamics(const PickLiteState& state, const std::vector<double>& executed) {
  if (executed.size() != 6) {
    throw DimensionError("picklite_dynamics: executed must have length 6");
  }
  PickLiteState next = state;
  const double grip_p = executed[2];
  const double grip_a = executed[5];

  // Release before moving: a holder that opened its grip this step drops the
  // block in place.
  if (next.grasp_p && grip_p <= 0.0) next.grasp_p = false;
  if (next.grasp_a && grip_a <= 0.0) next.grasp_a = false;

  // Protagonist moves first; the adversary then moves against the updated
  // protagonist position. The contact constraint keeps centers >= 0.05 apart.
  move_gripper(next.p, next.q_adv, executed[0], executed[1], next.grasp_p,
               !next.frozen && !next.grasp_a && !next.grasp_p, next.b);
  move_gripper(next.q_adv, next.p, executed[3], executed[4], next.grasp_a,
               !next.frozen && !next.grasp_p && !next.grasp_a, next.b);

  // Attach attempts, protagonist first (simultaneous-grasp tie-break).
  if (!next.frozen && !next.grasp_p && !next.grasp_a) {
    if (grip_p > 0.0 && dist2d(next.p, next.b) <= kPickContactRadius) {
      next.grasp_p = true;
    } else if (grip_a > 0.0 && dist2d(next.q_adv, next.b) <= kPickContactRadius) {
      next.grasp_a = true;
    }
  }

  // Off the table: block freezes for the rest of the episode.
  if (!next.frozen && !on_table(next.b)) {
    next.frozen = true;
    next.grasp_p = false;
    next.grasp_a = false;
  }
  return next;
}

double picklite_reward(const PickLiteState& state, const double goal[2]) {
  return dist2d(state.b, goal) < kPickGoalRadius ? 0.0 : -1.0;
}

PickLite2DEnv::PickLite2DEnv() {
  spec_.id = "picklite2d";
  spec_.state_dim = 8;  // p, q_adv, b, grasp_p, grasp_a
  spec_.protagonist_action_dim = 3;
  spec_.adversary_action_dim = 3;
  spec_.horizon = 50;
  spec_.gamma = 0.98;
  spec_.goal_conditioned = true;
  spec_.goal_dim = 2;
  spec_.reward_kind = RewardKind::kSparse;
  spec_.validate();
  done_ = true;
}

void PickLite2DEnv::reset(uint64_t seed) {
  math::Rng rng(seed);
  state_ = PickLiteState{};
  state_.b[0] = rng.uniform(0.2, 0.8);
  state_.b[1] = rng.uniform(0.2, 0.8);
  goal_[0] = rng.uniform(0.0, 1.0);
  goal_[1] = rng.uniform(0.0, 1.0);
  begin_episode();
}

StepResult PickLite2DEnv::step(const JointAction& joint) {
  check_not_done();
  check_executed_dim(joint);
  state_ = picklite_dynamics(state_, joint.executed);
  const double reward = picklite_reward(state_, goal_);
  return finish_step(observation(), reward, reward == 0.0);
}

std::vector<double> PickLite2DEnv::observation() const {
  return {state_.p[0],           state_.p[1],           state_.q_adv[0],
          state_.q_adv[1],       state_.b[0],           state_.b[1],
          state_.grasp_p ? 1.0 : 0.0, state_.grasp_a ? 1.0 : 0.0};
}

std::vector<double> PickLite2DEnv::goal() const { return {goal_[0], goal_[1]}; }

std::vector<double> PickLite2DEnv::achieved_goal(const std::vector<double>& state) const {
  if (state.size() != static_cast<size_t>(spec_.state_dim)) {
    throw DimensionError("picklite2d achieved_goal: bad state length");
  }
  return {state[4], state[5]};  // block position
}

double PickLite2DEnv::goal_reward(const std::vector<double>& next_state,
                                  const std::vector<double>& goal) const {
  if (next_state.size() != static_cast<size_t>(spec_.state_dim) || goal.size() != 2) {
    throw DimensionError("picklite2d goal_reward: bad vector length");
  }
  const double block[2] = {next_state[4], next_state[5]};
  const double g[2] = {goal[0], goal[1]};
  return dist2d(block, g) < kPickGoalRadius ? 0.0 : -1.0;
}

}  // namespace advsac::env

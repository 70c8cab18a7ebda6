#pragma once

#include <cstdint>
#include <vector>

#include "advsac/env/types.hpp"
#include "advsac/math/rng.hpp"
#include "advsac/sac/agent.hpp"

namespace advsac::replay {

// Fixed-capacity ring of transitions, stored column-packed. When full, the
// oldest entry is overwritten first. Sampling is uniform over the stored
// entries and reproducible from the caller's rng.
class ReplayBuffer {
 public:
  ReplayBuffer(int capacity, int state_dim, int action_dim, int goal_dim);

  void push(const env::Transition& t);

  // Uniform minibatch with replacement. Throws DomainError if batch < 1 or
  // the buffer is empty.
  sac::TransitionBatch sample(int batch, math::Rng& rng) const;

  int size() const { return size_; }
  int capacity() const { return capacity_; }
  int state_dim() const { return state_dim_; }
  int action_dim() const { return action_dim_; }
  int goal_dim() const { return goal_dim_; }

  // Copies one stored transition out (test support).
  env::Transition at(int index) const;

 private:
  int capacity_;
  int state_dim_;
  int action_dim_;
  int goal_dim_;
  int size_ = 0;
  int cursor_ = 0;
  std::vector<double> states_;
  std::vector<double> actions_;
  std::vector<double> rewards_;
  std::vector<double> next_states_;
  std::vector<uint8_t> dones_;
  std::vector<double> goals_;
};

}  // namespace advsac::replay

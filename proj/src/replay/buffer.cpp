#include "advsac/replay/buffer.hpp"

#include <cstring>

#include "advsac/errors.hpp"

namespace advsac::replay {

ReplayBuffer::ReplayBuffer(int capacity, int state_dim, int action_dim, int goal_dim)
    : capacity_(capacity), state_dim_(state_dim), action_dim_(action_dim), goal_dim_(goal_dim) {
  if (capacity < 1) throw ConfigError("ReplayBuffer: capacity must be >= 1");
  if (state_dim < 1 || action_dim < 1 || goal_dim < 0) {
    throw ConfigError("ReplayBuffer: bad dimensions");
  }
  states_.resize(static_cast<size_t>(capacity) * state_dim);
  actions_.resize(static_cast<size_t>(capacity) * action_dim);
  rewards_.resize(capacity);
  next_states_.resize(static_cast<size_t>(capacity) * state_dim);
  dones_.resize(capacity);
  if (goal_dim > 0) goals_.resize(static_cast<size_t>(capacity) * goal_dim);
}

void ReplayBuffer::push(const env::Transition& t) {
  if (t.state.size() != static_cast<size_t>(state_dim_) ||
      t.next_state.size() != static_cast<size_t>(state_dim_) ||
      t.action.size() != static_cast<size_t>(action_dim_)) {
    throw DimensionError("ReplayBuffer::push: transition dims do not match buffer");
  }
  if (goal_dim_ > 0) {
    if (!t.goal || t.goal->size() != static_cast<size_t>(goal_dim_)) {
      throw DimensionError("ReplayBuffer::push: missing or mis-sized goal");
    }
  } else if (t.goal) {
    throw DimensionError("ReplayBuffer::push: goal given to a goal-free buffer");
  }
  const int i = cursor_;
  std::memcpy(states_.data() + static_cast<size_t>(i) * state_dim_, t.state.data(),
              sizeof(double) * state_dim_);
  std::memcpy(actions_.data() + static_cast<size_t>(i) * action_dim_, t.action.data(),
              sizeof(double) * action_dim_);
  rewards_[i] = t.reward;
  std::memcpy(next_states_.data() + static_cast<size_t>(i) * state_dim_, t.next_state.data(),
              sizeof(double) * state_dim_);
  dones_[i] = t.done ? 1 : 0;
  if (goal_dim_ > 0) {
    std::memcpy(goals_.data() + static_cast<size_t>(i) * goal_dim_, t.goal->data(),
                sizeof(double) * goal_dim_);
  }
  cursor_ = (cursor_ + 1) % capacity_;
  if (size_ < capacity_) ++size_;
}

sac::TransitionBatch ReplayBuffer::sample(int batch, math::Rng& rng) const {
  if (batch < 1) throw DomainError("ReplayBuffer::sample: batch must be >= 1");
  if (size_ == 0) throw DomainError("ReplayBuffer::sample: buffer is empty");
  sac::TransitionBatch out;
  out.size = batch;
  out.state_dim = state_dim_;
  out.action_dim = action_dim_;
  out.goal_dim = goal_dim_;
  out.states.resize(static_cast<size_t>(batch) * state_dim_);
  out.actions.resize(static_cast<size_t>(batch) * action_dim_);
  out.rewards.resize(batch);
  out.next_states.resize(static_cast<size_t>(batch) * state_dim_);
  out.dones.resize(batch);
  if (goal_dim_ > 0) out.goals.resize(static_cast<size_t>(batch) * goal_dim_);
  for (int k = 0; k < batch; ++k) {
    const int i = rng.uniform_int(size_);
    std::memcpy(out.states.data() + static_cast<size_t>(k) * state_dim_,
                states_.data() + static_cast<size_t>(i) * state_dim_,
                sizeof(double) * state_dim_);
    std::memcpy(out.actions.data() + static_cast<size_t>(k) * action_dim_,
                actions_.data() + static_cast<size_t>(i) * action_dim_,
                sizeof(double) * action_dim_);
    out.rewards[k] = rewards_[i];
    std::memcpy(out.next_states.data() + static_cast<size_t>(k) * state_dim_,
                next_states_.data() + static_cast<size_t>(i) * state_dim_,
                sizeof(double) * state_dim_);
    out.dones[k] = dones_[i];
    if (goal_dim_ > 0) {
      std::memcpy(out.goals.data() + static_cast<size_t>(k) * goal_dim_,
                  goals_.data() + static_cast<size_t>(i) * goal_dim_, sizeof(double) * goal_dim_);
    }
  }
  return out;
}

env::Transition ReplayBuffer::at(int index) const {
  if (index < 0 || index >= size_) throw DomainError("ReplayBuffer::at: index out of range");
  env::Transition t;
  t.state.assign(states_.begin() + static_cast<size_t>(index) * state_dim_,
                 states_.begin() + static_cast<size_t>(index + 1) * state_dim_);
  t.action.assign(actions_.begin() + static_cast<size_t>(index) * action_dim_,
                  actions_.begin() + static_cast<size_t>(index + 1) * action_dim_);
  t.reward = rewards_[index];
  t.next_state.assign(next_states_.begin() + static_cast<size_t>(index) * state_dim_,
                      next_states_.begin() + static_cast<size_t>(index + 1) * state_dim_);
  t.done = dones_[index] != 0;
  if (goal_dim_ > 0) {
    t.goal = std::vector<double>(goals_.begin() + static_cast<size_t>(index) * goal_dim_,
                                 goals_.begin() + static_cast<size_t>(index + 1) * goal_dim_);
  }
  return t;
}

}  // namespace advsac::replay

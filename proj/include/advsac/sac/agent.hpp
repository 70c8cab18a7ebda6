#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "advsac/math/rng.hpp"
#include "advsac/net/adam.hpp"
#include "advsac/net/network.hpp"
#include "advsac/sac/policy.hpp"

namespace advsac::sac {

// A maximizer ascends the critic; a minimizer descends it. Both ascend the
// entropy bonus.
enum class Role { kMaximizer, kMinimizer };

struct SacConfig {
  double gamma = 0.98;
  double temperature = 0.2;  // entropy weight
  double tau = 0.005;        // target tracking rate
  double actor_lr = 3e-4;
  double critic_lr = 3e-4;
  int batch_size = 256;
  bool twin_q = false;
  Role role = Role::kMaximizer;
  std::vector<int> hidden = {256, 256};
  net::Activation activation = net::Activation::kRelu;

  void validate() const;
};

// Actor maps [state, goal] -> [mean, log_std]; critics map
// [state, goal, action] -> scalar value.
struct SacAgent {
  SacConfig config;
  int state_dim = 0;
  int action_dim = 0;
  int goal_dim = 0;  // 0 for non-goal-conditioned tasks
  uint64_t init_seed = 0;

  net::ApproxNet actor;
  net::ApproxNet critic;
  net::ApproxNet target_critic;
  net::AdamState actor_opt;
  net::AdamState critic_opt;
  std::optional<net::ApproxNet> critic2;
  std::optional<net::ApproxNet> target_critic2;
  std::optional<net::AdamState> critic2_opt;

  int obs_dim() const { return state_dim + goal_dim; }
  int critic_in_dim() const { return state_dim + goal_dim + action_dim; }
};

SacAgent make_agent(const SacConfig& config, int state_dim, int action_dim, int goal_dim,
                    uint64_t seed);

// Column-packed minibatch (goals empty when goal_dim == 0).
struct TransitionBatch {
  int size = 0;
  int state_dim = 0;
  int action_dim = 0;
  int goal_dim = 0;
  std::vector<double> states;
  std::vector<double> actions;
  std::vector<double> rewards;
  std::vector<double> next_states;
  std::vector<uint8_t> dones;
  std::vector<double> goals;
};

PolicySample sample_action(const SacAgent& agent, std::span<const double> state,
                           std::span<const double> goal, bool deterministic, math::Rng* rng);

// y = r                                   if done
//     r + gamma * (Q' - temperature * log pi)   otherwise
double soft_target_value(double reward, bool done, double gamma, double temperature,
                         double q_next, double log_prob_next);

// Bootstrapped regression target with a fresh action sampled from the current
// actor at next_state. With twin critics, Q' is the min over both targets.
double critic_target(const SacAgent& agent, double reward, std::span<const double> next_state,
                     std::span<const double> goal, bool done, math::Rng& rng);

// One MSE regression step of the critic(s) toward the soft targets. Returns
// the pre-step loss. Throws DomainError on an empty batch.
double update_critic(SacAgent& agent, const TransitionBatch& batch, math::Rng& rng);

// Reparameterized policy-gradient step. States (and goals) are packed rows.
// Returns the ascended objective value. Critics and targets are not touched.
double update_actor(SacAgent& agent, std::span<const double> states,
                    std::span<const double> goals, int batch, math::Rng& rng);

// The actor parameter gradient update_actor would apply (exposed so tests can
// compare maximizer and minimizer updates). Consumes the same rng stream.
struct ActorUpdate {
  net::Gradients gradients;
  double objective = 0.0;
};
ActorUpdate actor_gradients(const SacAgent& agent, std::span<const double> states,
                            std::span<const double> goals, int batch, math::Rng& rng);

// target <- tau * critic + (1 - tau) * target, for each critic/target pair.
void soft_update_targets(SacAgent& agent);

}  // namespace advsac::sac

#include "advsac/sac/agent.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "advsac/errors.hpp"

namespace advsac::sac {

void SacConfig::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("SacConfig: gamma must be in (0, 1)");
  if (!(temperature >= 0.0)) throw ConfigError("SacConfig: temperature must be >= 0");
  if (!(tau > 0.0 && tau <= 1.0)) throw ConfigError("SacConfig: tau must be in (0, 1]");
  if (!(actor_lr > 0.0) || !(critic_lr > 0.0)) {
    throw ConfigError("SacConfig: learning rates must be > 0");
  }
  if (batch_size < 1) throw ConfigError("SacConfig: batch_size must be >= 1");
  for (int h : hidden) {
    if (h < 1) throw ConfigError("SacConfig: hidden sizes must be >= 1");
  }
}

namespace {

std::vector<int> actor_sizes(const SacConfig& cfg, int obs_dim, int action_dim) {
  std::vector<int> sizes;
  sizes.push_back(obs_dim);
  sizes.insert(sizes.end(), cfg.hidden.begin(), cfg.hidden.end());
  sizes.push_back(2 * action_dim);
  return sizes;
}

std::vector<int> critic_sizes(const SacConfig& cfg, int critic_in) {
  std::vector<int> sizes;
  sizes.push_back(critic_in);
  sizes.insert(sizes.end(), cfg.hidden.begin(), cfg.hidden.end());
  sizes.push_back(1);
  return sizes;
}

}  // namespace

SacAgent make_agent(const SacConfig& config, int state_dim, int action_dim, int goal_dim,
                    uint64_t seed) {
  config.validate();
  if (state_dim < 1 || action_dim < 1 || goal_dim < 0) {
    throw ConfigError("make_agent: bad dimensions");
  }
  SacAgent agent;
  agent.config = config;
  agent.state_dim = state_dim;
  agent.action_dim = action_dim;
  agent.goal_dim = goal_dim;
  agent.init_seed = seed;

  const net::AdamConfig actor_adam{config.actor_lr, 0.9, 0.999, 1e-8};
  const net::AdamConfig critic_adam{config.critic_lr, 0.9, 0.999, 1e-8};

  agent.actor = net::make_net(actor_sizes(config, agent.obs_dim(), action_dim),
                              config.activation, math::derive_seed(seed, {1}));
  agent.actor_opt = net::make_adam(agent.actor, actor_adam);
  agent.critic = net::make_net(critic_sizes(config, agent.critic_in_dim()), config.activation,
                               math::derive_seed(seed, {2}));
  agent.critic_opt = net::make_adam(agent.critic, critic_adam);
  agent.target_critic = agent.critic;
  if (config.twin_q) {
    agent.critic2 = net::make_net(critic_sizes(config, agent.critic_in_dim()),
                                  config.activation, math::derive_seed(seed, {3}));
    agent.critic2_opt = net::make_adam(*agent.critic2, critic_adam);
    agent.target_critic2 = *agent.critic2;
  }
  return agent;
}

PolicySample sample_action(const SacAgent& agent, std::span<const double> state,
                           std::span<const double> goal, bool deterministic, math::Rng* rng) {
  if (state.size() != static_cast<size_t>(agent.state_dim) ||
      goal.size() != static_cast<size_t>(agent.goal_dim)) {
    throw DimensionError("sample_action: state/goal dims do not match agent");
  }
  std::vector<double> obs;
  obs.reserve(agent.obs_dim());
  obs.insert(obs.end(), state.begin(), state.end());
  obs.insert(obs.end(), goal.begin(), goal.end());
  return sample_action(agent.actor, obs, deterministic, rng);
}

double soft_target_value(double reward, bool done, double gamma, double temperature,
                         double q_next, double log_prob_next) {
  if (done) return reward;
  return reward + gamma * q_next - gamma * temperature * log_prob_next;
}

namespace {

// Packs [state, goal] rows for the actor.
std::vector<double> pack_obs(const SacAgent& agent, std::span<const double> states,
                             std::span<const double> goals, int batch) {
  const int sd = agent.state_dim;
  const int gd = agent.goal_dim;
  std::vector<double> obs(static_cast<size_t>(batch) * (sd + gd));
  for (int i = 0; i < batch; ++i) {
    std::memcpy(obs.data() + static_cast<size_t>(i) * (sd + gd), states.data() + i * sd,
                sizeof(double) * sd);
    if (gd > 0) {
      std::memcpy(obs.data() + static_cast<size_t>(i) * (sd + gd) + sd, goals.data() + i * gd,
                  sizeof(double) * gd);
    }
  }
  return obs;
}

// Packs [state, goal, action] rows for a critic.
std::vector<double> pack_critic_input(const SacAgent& agent, std::span<const double> states,
                                      std::span<const double> goals,
                                      std::span<const double> actions, int batch) {
  const int sd = agent.state_dim;
  const int gd = agent.goal_dim;
  const int ad = agent.action_dim;
  std::vector<double> in(static_cast<size_t>(batch) * (sd + gd + ad));
  for (int i = 0; i < batch; ++i) {
    double* row = in.data() + static_cast<size_t>(i) * (sd + gd + ad);
    std::memcpy(row, states.data() + i * sd, sizeof(double) * sd);
    if (gd > 0) std::memcpy(row + sd, goals.data() + i * gd, sizeof(double) * gd);
    std::memcpy(row + sd + gd, actions.data() + i * ad, sizeof(double) * ad);
  }
  return in;
}

// Fresh actor samples at the given observations; item-major rng consumption.
std::vector<ReparamSample> batch_reparam(const SacAgent& agent, const std::vector<double>& obs,
                                         int batch, math::Rng& rng) {
  const net::ForwardTrace trace = net::forward_batch(agent.actor, obs, batch);
  const auto& out = trace.activations.back();
  const int od = agent.actor.output_dim();
  std::vector<ReparamSample> samples;
  samples.reserve(batch);
  for (int i = 0; i < batch; ++i) {
    samples.push_back(sample_reparam_from_output(
        std::span<const double>(out.data() + static_cast<size_t>(i) * od, od), rng));
  }
  return samples;
}

std::vector<double> targets_for_batch(const SacAgent& agent, const TransitionBatch& batch,
                                      math::Rng& rng) {
  const int n = batch.size;
  const std::vector<double> next_obs = pack_obs(agent, batch.next_states, batch.goals, n);
  const std::vector<ReparamSample> samples = batch_reparam(agent, next_obs, n, rng);

  std::vector<double> next_actions(static_cast<size_t>(n) * agent.action_dim);
  for (int i = 0; i < n; ++i) {
    std::memcpy(next_actions.data() + static_cast<size_t>(i) * agent.action_dim,
                samples[i].action.data(), sizeof(double) * agent.action_dim);
  }
  const std::vector<double> next_in =
      pack_critic_input(agent, batch.next_states, batch.goals, next_actions, n);
  const net::ForwardTrace q1 = net::forward_batch(agent.target_critic, next_in, n);
  const std::vector<double>* q2 = nullptr;
  net::ForwardTrace q2_trace;
  if (agent.config.twin_q) {
    q2_trace = net::forward_batch(*agent.target_critic2, next_in, n);
    q2 = &q2_trace.activations.back();
  }

  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) {
    double q_next = q1.activations.back()[i];
    if (q2 != nullptr) q_next = std::min(q_next, (*q2)[i]);
    y[i] = soft_target_value(batch.rewards[i], batch.dones[i] != 0, agent.config.gamma,
                             agent.config.temperature, q_next, samples[i].log_prob);
  }
  return y;
}

void check_batch(const SacAgent& agent, const TransitionBatch& batch) {
  if (batch.size < 1) throw DomainError("update: empty batch");
  if (batch.state_dim != agent.state_dim || batch.action_dim != agent.action_dim ||
      batch.goal_dim != agent.goal_dim) {
    throw DimensionError("update: batch dims do not match agent");
  }
}

// One regression step of a single critic toward y; returns the pre-step loss.
double regress_critic(net::ApproxNet& critic, net::AdamState& opt,
                      const std::vector<double>& input, const std::vector<double>& y, int n) {
  const net::ForwardTrace trace = net::forward_batch(critic, input, n);
  const auto& q = trace.activations.back();
  double loss = 0.0;
  std::vector<double> dq(n);
  for (int i = 0; i < n; ++i) {
    const double residual = q[i] - y[i];
    loss += residual * residual;
    dq[i] = 2.0 * residual / n;
  }
  loss /= n;
  const net::Gradients grads = net::backward(critic, trace, dq);
  net::adam_step(critic, grads, opt);
  return loss;
}

}  // namespace

double critic_target(const SacAgent& agent, double reward, std::span<const double> next_state,
                     std::span<const double> goal, bool done, math::Rng& rng) {
  TransitionBatch batch;
  batch.size = 1;
  batch.state_dim = agent.state_dim;
  batch.action_dim = agent.action_dim;
  batch.goal_dim = agent.goal_dim;
  batch.states.assign(agent.state_dim, 0.0);
  batch.actions.assign(agent.action_dim, 0.0);
  batch.rewards = {reward};
  batch.next_states.assign(next_state.begin(), next_state.end());
  batch.dones = {static_cast<uint8_t>(done ? 1 : 0)};
  batch.goals.assign(goal.begin(), goal.end());
  check_batch(agent, batch);
  return targets_for_batch(agent, batch, rng)[0];
}

double update_critic(SacAgent& agent, const TransitionBatch& batch, math::Rng& rng) {
  check_batch(agent, batch);
  const int n = batch.size;
  const std::vector<double> y = targets_for_batch(agent, batch, rng);
  const std::vector<double> input =
      pack_critic_input(agent, batch.states, batch.goals, batch.actions, n);
  double loss = regress_critic(agent.critic, agent.critic_opt, input, y, n);
  if (agent.config.twin_q) {
    const double loss2 = regress_critic(*agent.critic2, *agent.critic2_opt, input, y, n);
    loss = 0.5 * (loss + loss2);
  }
  return loss;
}

ActorUpdate actor_gradients(const SacAgent& agent, std::span<const double> states,
                            std::span<const double> goals, int batch, math::Rng& rng) {
  if (batch < 1) throw DomainError("update_actor: empty batch");
  if (states.size() != static_cast<size_t>(batch) * agent.state_dim ||
      goals.size() != static_cast<size_t>(batch) * agent.goal_dim) {
    throw DimensionError("update_actor: states/goals size mismatch");
  }
  const int ad = agent.action_dim;
  const double temp = agent.config.temperature;
  const bool minimize = agent.config.role == Role::kMinimizer;

  const std::vector<double> obs = pack_obs(agent, states, goals, batch);
  const net::ForwardTrace actor_trace = net::forward_batch(agent.actor, obs, batch);
  const auto& actor_out = actor_trace.activations.back();
  const int od = agent.actor.output_dim();

  std::vector<ReparamSample> samples;
  samples.reserve(batch);
  for (int i = 0; i < batch; ++i) {
    samples.push_back(sample_reparam_from_output(
        std::span<const double>(actor_out.data() + static_cast<size_t>(i) * od, od), rng));
  }

  std::vector<double> actions(static_cast<size_t>(batch) * ad);
  for (int i = 0; i < batch; ++i) {
    std::memcpy(actions.data() + static_cast<size_t>(i) * ad, samples[i].action.data(),
                sizeof(double) * ad);
  }
  const std::vector<double> critic_in = pack_critic_input(agent, states, goals, actions, batch);

  // Q and dQ/da at the sampled actions. With twin critics the per-item min
  // defines both the value and the gradient path.
  const net::ForwardTrace q1_trace = net::forward_batch(agent.critic, critic_in, batch);
  const std::vector<double>& q1 = q1_trace.activations.back();
  std::vector<double> q(q1);
  std::vector<double> dy1(batch, 1.0);
  net::ForwardTrace q2_trace;
  std::vector<double> dy2;
  if (agent.config.twin_q) {
    q2_trace = net::forward_batch(*agent.critic2, critic_in, batch);
    const auto& q2 = q2_trace.activations.back();
    dy2.assign(batch, 0.0);
    for (int i = 0; i < batch; ++i) {
      if (q2[i] < q1[i]) {
        q[i] = q2[i];
        dy1[i] = 0.0;
        dy2[i] = 1.0;
      }
    }
  }
  net::Gradients critic_grads = net::backward(agent.critic, q1_trace, dy1);
  std::vector<double> dq_da(static_cast<size_t>(batch) * ad);
  const int cin = agent.critic_in_dim();
  const int offset = agent.state_dim + agent.goal_dim;
  for (int i = 0; i < batch; ++i) {
    for (int k = 0; k < ad; ++k) {
      dq_da[static_cast<size_t>(i) * ad + k] =
          critic_grads.input[static_cast<size_t>(i) * cin + offset + k];
    }
  }
  if (agent.config.twin_q) {
    const net::Gradients g2 = net::backward(*agent.critic2, q2_trace, dy2);
    for (int i = 0; i < batch; ++i) {
      for (int k = 0; k < ad; ++k) {
        dq_da[static_cast<size_t>(i) * ad + k] +=
            g2.input[static_cast<size_t>(i) * cin + offset + k];
      }
    }
  }

  // d(loss)/d(actor outputs). Maximizer loss: temp*logpi - Q; minimizer
  // loss: temp*logpi + Q. The entropy path is identical for both roles.
  std::vector<double> dout(static_cast<size_t>(batch) * od, 0.0);
  double objective = 0.0;
  const double inv_n = 1.0 / batch;
  for (int i = 0; i < batch; ++i) {
    const ReparamSample& s = samples[i];
    objective += (minimize ? -q[i] : q[i]) - temp * s.log_prob;
    for (int k = 0; k < ad; ++k) {
      const double a = s.action[k];
      const double tanh_grad = 1.0 - a * a;
      const double sz = std::exp(s.log_std[k]) * s.noise[k];
      const double corr_u = 2.0 * a * tanh_grad / (tanh_grad + kSquashEps);
      const double dlogpi_dmean = corr_u;
      const double dlogpi_dls = -1.0 + corr_u * sz;
      const double dq_dmean = dq_da[static_cast<size_t>(i) * ad + k] * tanh_grad;
      const double dq_dls = dq_dmean * sz;
      const double q_sign = minimize ? 1.0 : -1.0;
      double g_mean = temp * dlogpi_dmean + q_sign * dq_dmean;
      double g_ls = temp * dlogpi_dls + q_sign * dq_dls;
      if (s.clamped[k]) g_ls = 0.0;
      dout[static_cast<size_t>(i) * od + k] = g_mean * inv_n;
      dout[static_cast<size_t>(i) * od + ad + k] = g_ls * inv_n;
    }
  }
  ActorUpdate update;
  update.gradients = net::backward(agent.actor, actor_trace, dout);
  update.objective = objective * inv_n;
  return update;
}

double update_actor(SacAgent& agent, std::span<const double> states,
                    std::span<const double> goals, int batch, math::Rng& rng) {
  ActorUpdate update = actor_gradients(agent, states, goals, batch, rng);
  net::adam_step(agent.actor, update.gradients, agent.actor_opt);
  return update.objective;
}

void soft_update_targets(SacAgent& agent) {
  const double tau = agent.config.tau;
  auto track = [tau](const net::ApproxNet& live, net::ApproxNet& target) {
    for (int l = 0; l < live.num_layers(); ++l) {
      for (size_t i = 0; i < live.weights[l].size(); ++i) {
        target.weights[l][i] = tau * live.weights[l][i] + (1.0 - tau) * target.weights[l][i];
      }
      for (size_t i = 0; i < live.biases[l].size(); ++i) {
        target.biases[l][i] = tau * live.biases[l][i] + (1.0 - tau) * target.biases[l][i];
      }
    }
  };
  track(agent.critic, agent.target_critic);
  if (agent.config.twin_q) track(*agent.critic2, *agent.target_critic2);
}

}  // namespace advsac::sac

#include "advsac/train/trainer.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "advsac/env/compose.hpp"
#include "advsac/errors.hpp"
#include "advsac/io/checkpoint.hpp"
#include "advsac/io/csv.hpp"

namespace advsac::train {

namespace {

constexpr uint64_t kProtagonistInitTag = 0x70;
constexpr uint64_t kAdversaryInitTag = 0x71;

std::vector<double> zero_action(int dim) { return std::vector<double>(dim, 0.0); }

double mean_or_zero(double sum, int count) { return count > 0 ? sum / count : 0.0; }

}  // namespace

void TrainerConfig::validate() const {
  if (n_iter < 1) throw ConfigError("TrainerConfig: n_iter must be >= 1");
  if (m_protagonist_episodes < 0 || n_adversary_episodes < 0) {
    throw ConfigError("TrainerConfig: episode counts must be >= 0");
  }
  if (mode == env::DisturbanceMode::kNone) {
    throw ConfigError("TrainerConfig: mode must be internal or external");
  }
  if (mode == env::DisturbanceMode::kExternal && amplitude != 0.0) {
    throw ConfigError("TrainerConfig: amplitude must be absent (zero) in external mode");
  }
  if (amplitude < 0.0) throw ConfigError("TrainerConfig: amplitude must be >= 0");
  if (env_id.empty()) throw ConfigError("TrainerConfig: env_id is required");
  if (updates_per_step < 1) throw ConfigError("TrainerConfig: updates_per_step must be >= 1");
  if (warmup_steps < 0) throw ConfigError("TrainerConfig: warmup_steps must be >= 0");
  if (buffer_capacity < 1) throw ConfigError("TrainerConfig: buffer_capacity must be >= 1");
  if (checkpoint_every < 1) throw ConfigError("TrainerConfig: checkpoint_every must be >= 1");
  her.validate();
}

std::string TrainLog::to_csv() const {
  std::ostringstream out;
  out << "iteration,phase,episode,return,success,critic_loss,actor_objective\n";
  for (const TrainLogRow& r : rows) {
    out << r.iteration << ',' << (r.phase == Phase::kProtagonist ? "protagonist" : "adversary")
        << ',' << r.episode << ',' << io::format_double(r.undiscounted_return) << ','
        << (r.success ? 1 : 0) << ',' << io::format_double(r.critic_loss_mean) << ','
        << io::format_double(r.actor_objective_mean) << "\n";
  }
  return out.str();
}

AgentPair make_agent_pair(const TrainerConfig& cfg, sac::SacConfig protagonist_cfg,
                          sac::SacConfig adversary_cfg) {
  cfg.validate();
  const auto environment = env::make_env(cfg.env_id);
  const env::EnvSpec& spec = environment->spec();
  if (environment->composition_mode() != cfg.mode) {
    throw ConfigError("TrainerConfig: env '" + cfg.env_id + "' expects " +
                      (environment->composition_mode() == env::DisturbanceMode::kInternal
                           ? std::string("internal")
                           : std::string("external")) +
                      " mode");
  }
  if (cfg.mode == env::DisturbanceMode::kInternal &&
      spec.protagonist_action_dim != spec.adversary_action_dim) {
    throw ConfigError("internal mode requires equal action dims");
  }

  protagonist_cfg.role = sac::Role::kMaximizer;
  adversary_cfg.role = sac::Role::kMinimizer;

  AgentPair pair;
  pair.protagonist =
      sac::make_agent(protagonist_cfg, spec.state_dim, spec.protagonist_action_dim,
                      spec.goal_dim, math::derive_seed(cfg.seed, {kProtagonistInitTag}));
  pair.adversary = sac::make_agent(adversary_cfg, spec.state_dim, spec.adversary_action_dim,
                                   spec.goal_dim, math::derive_seed(cfg.seed, {kAdversaryInitTag}));
  pair.protagonist_buffer = std::make_unique<replay::ReplayBuffer>(
      cfg.buffer_capacity, spec.state_dim, spec.protagonist_action_dim, spec.goal_dim);
  pair.adversary_buffer = std::make_unique<replay::ReplayBuffer>(
      cfg.buffer_capacity, spec.state_dim, spec.adversary_action_dim, spec.goal_dim);
  return pair;
}

EpisodeSeeds episode_seeds(uint64_t root, int iteration, Phase phase, int episode) {
  const uint64_t p = phase == Phase::kProtagonist ? 0 : 1;
  const uint64_t it = static_cast<uint64_t>(iteration);
  const uint64_t ep = static_cast<uint64_t>(episode);
  EpisodeSeeds seeds;
  seeds.env_seed = math::derive_seed(root, {it, p, ep, 0});
  seeds.learner_policy_seed = math::derive_seed(root, {it, p, ep, 1});
  seeds.opponent_policy_seed = math::derive_seed(root, {it, p, ep, 2});
  seeds.buffer_seed = math::derive_seed(root, {it, p, ep, 3});
  seeds.update_seed = math::derive_seed(root, {it, p, ep, 4});
  seeds.relabel_seed = math::derive_seed(root, {it, p, ep, 5});
  return seeds;
}

env::EpisodeRecord run_episode(env::Environment& environment, sac::SacAgent& learner,
                               Phase learner_phase, const net::ApproxNet* frozen_opponent_actor,
                               env::DisturbanceMode mode, double amplitude,
                               const EpisodeSeeds& seeds, const StepCallback& on_step) {
  const env::EnvSpec& spec = environment.spec();
  const bool learner_is_protagonist = learner_phase == Phase::kProtagonist;
  const int opponent_dim =
      learner_is_protagonist ? spec.adversary_action_dim : spec.protagonist_action_dim;

  math::Rng learner_rng(seeds.learner_policy_seed);
  math::Rng opponent_rng(seeds.opponent_policy_seed);

  environment.reset(seeds.env_seed);
  std::vector<double> obs = environment.observation();
  const std::vector<double> goal = environment.goal();

  env::EpisodeRecord episode;
  episode.seed = seeds.env_seed;

  while (!environment.done()) {
    std::vector<double> agent_obs = obs;
    agent_obs.insert(agent_obs.end(), goal.begin(), goal.end());

    const sac::PolicySample learner_sample =
        sac::sample_action(learner.actor, agent_obs, /*deterministic=*/false, &learner_rng);
    std::vector<double> opponent_action;
    if (frozen_opponent_actor != nullptr) {
      opponent_action =
          sac::sample_action(*frozen_opponent_actor, agent_obs, false, &opponent_rng).action;
    } else {
      opponent_action = zero_action(opponent_dim);
    }

    const std::vector<double>& protagonist_action =
        learner_is_protagonist ? learner_sample.action : opponent_action;
    const std::vector<double>& adversary_action =
        learner_is_protagonist ? opponent_action : learner_sample.action;

    const env::JointAction joint =
        env::make_joint_action(mode, protagonist_action, adversary_action, amplitude);
    const int step_index = environment.step_index();
    const env::StepResult result = environment.step(joint);

    env::Transition transition;
    transition.state = obs;
    transition.action = learner_sample.action;
    transition.reward = result.reward;
    transition.next_state = result.next_state;
    transition.done = result.done;
    transition.step_index = step_index;
    if (spec.goal_conditioned) transition.goal = goal;

    episode.transitions.push_back(std::move(transition));
    episode.step_success.push_back(result.success ? 1 : 0);
    episode.undiscounted_return += result.reward;
    episode.success = result.success;
    obs = result.next_state;

    if (on_step) on_step();
  }
  episode.discounted_return = env::discounted_return(episode, learner.config.gamma);
  return episode;
}

namespace {

// One phase: `episodes` rollouts with the learner updating and the opponent
// frozen (or locked to zero for baseline runs), relabel + insert at episode
// end, updates interleaved with collection.
void run_phase(AgentPair& pair, env::Environment& environment, const TrainerConfig& cfg,
               int iteration, Phase phase, int episodes, bool zero_opponent, TrainLog& log) {
  const bool protagonist_phase = phase == Phase::kProtagonist;
  sac::SacAgent& learner = protagonist_phase ? pair.protagonist : pair.adversary;
  replay::ReplayBuffer& buffer =
      protagonist_phase ? *pair.protagonist_buffer : *pair.adversary_buffer;
  int64_t& env_steps = protagonist_phase ? pair.protagonist_env_steps : pair.adversary_env_steps;

  // Immutable copy of the non-learning agent's actor for the whole phase.
  const net::ApproxNet frozen_opponent =
      protagonist_phase ? pair.adversary.actor : pair.protagonist.actor;
  const net::ApproxNet* opponent_ptr = zero_opponent ? nullptr : &frozen_opponent;

  const env::EnvSpec& spec = environment.spec();
  const bool use_her = spec.goal_conditioned && spec.reward_kind == env::RewardKind::kSparse;

  for (int episode = 0; episode < episodes; ++episode) {
    const auto t0 = std::chrono::steady_clock::now();
    const EpisodeSeeds seeds = episode_seeds(cfg.seed, iteration, phase, episode);
    math::Rng buffer_rng(seeds.buffer_seed);
    math::Rng update_rng(seeds.update_seed);
    double critic_loss_sum = 0.0;
    double actor_objective_sum = 0.0;
    int update_count = 0;

    const StepCallback on_step = [&]() {
      ++env_steps;
      if (env_steps <= cfg.warmup_steps) return;
      if (buffer.size() < learner.config.batch_size) return;
      for (int u = 0; u < cfg.updates_per_step; ++u) {
        const sac::TransitionBatch batch = buffer.sample(learner.config.batch_size, buffer_rng);
        critic_loss_sum += sac::update_critic(learner, batch, update_rng);
        actor_objective_sum +=
            sac::update_actor(learner, batch.states, batch.goals, batch.size, update_rng);
        sac::soft_update_targets(learner);
        ++update_count;
      }
    };

    const env::EpisodeRecord record = run_episode(environment, learner, phase, opponent_ptr,
                                                  cfg.mode, cfg.amplitude, seeds, on_step);

    if (use_her) {
      math::Rng relabel_rng(seeds.relabel_seed);
      const auto reward_fn = [&environment](const std::vector<double>& next_state,
                                            const std::vector<double>& g) {
        return environment.goal_reward(next_state, g);
      };
      const auto achieved_fn = [&environment](const std::vector<double>& state) {
        return environment.achieved_goal(state);
      };
      const std::vector<env::Transition> relabeled =
          replay::relabel_episode(record, cfg.her, reward_fn, achieved_fn, &relabel_rng);
      for (const env::Transition& t : relabeled) buffer.push(t);
    } else {
      for (const env::Transition& t : record.transitions) buffer.push(t);
    }

    const auto t1 = std::chrono::steady_clock::now();
    TrainLogRow row;
    row.iteration = iteration;
    row.phase = phase;
    row.episode = episode;
    row.undiscounted_return = record.undiscounted_return;
    row.success = record.success;
    row.critic_loss_mean = mean_or_zero(critic_loss_sum, update_count);
    row.actor_objective_mean = mean_or_zero(actor_objective_sum, update_count);
    row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    log.rows.push_back(row);
  }
}

void print_progress(const TrainLog& log, int iteration, bool verbose) {
  if (!verbose || log.rows.empty()) return;
  double ret_sum = 0.0;
  int successes = 0;
  int count = 0;
  for (auto it = log.rows.rbegin(); it != log.rows.rend() && it->iteration == iteration; ++it) {
    ret_sum += it->undiscounted_return;
    successes += it->success ? 1 : 0;
    ++count;
  }
  if (count == 0) return;
  std::printf("[train] iter %d: %d episodes, mean return %.3f, success %.2f\n", iteration, count,
              ret_sum / count, static_cast<double>(successes) / count);
  std::fflush(stdout);
}

void write_periodic_checkpoints(const AgentPair& pair, const TrainerConfig& cfg,
                                const std::string& output_dir, int iteration, bool baseline) {
  if ((iteration + 1) % cfg.checkpoint_every != 0 || iteration + 1 >= cfg.n_iter) return;
  char name[64];
  std::snprintf(name, sizeof(name), "ckpt_iter_%04d", iteration + 1);
  io::save_agent_checkpoint(output_dir + "/" + name + "_protagonist.bin", pair.protagonist,
                            cfg.env_id, cfg.mode);
  if (!baseline) {
    io::save_agent_checkpoint(output_dir + "/" + name + "_adversary.bin", pair.adversary,
                              cfg.env_id, cfg.mode);
  }
}

}  // namespace

void train_iteration(AgentPair& pair, env::Environment& environment, const TrainerConfig& cfg,
                     int iteration, TrainLog& log) {
  run_phase(pair, environment, cfg, iteration, Phase::kProtagonist, cfg.m_protagonist_episodes,
            /*zero_opponent=*/false, log);
  run_phase(pair, environment, cfg, iteration, Phase::kAdversary, cfg.n_adversary_episodes,
            /*zero_opponent=*/false, log);
}

TrainResult train(const TrainerConfig& cfg, const sac::SacConfig& protagonist_cfg,
                  const sac::SacConfig& adversary_cfg, const std::string& output_dir,
                  bool verbose) {
  cfg.validate();
  std::filesystem::create_directories(output_dir);
  AgentPair pair = make_agent_pair(cfg, protagonist_cfg, adversary_cfg);
  const auto environment = env::make_env(cfg.env_id);

  TrainResult result;
  for (int iteration = 0; iteration < cfg.n_iter; ++iteration) {
    train_iteration(pair, *environment, cfg, iteration, result.log);
    print_progress(result.log, iteration, verbose);
    write_periodic_checkpoints(pair, cfg, output_dir, iteration, /*baseline=*/false);
  }
  result.protagonist_checkpoint = output_dir + "/protagonist.bin";
  result.adversary_checkpoint = output_dir + "/adversary.bin";
  io::save_agent_checkpoint(result.protagonist_checkpoint, pair.protagonist, cfg.env_id,
                            cfg.mode);
  io::save_agent_checkpoint(result.adversary_checkpoint, pair.adversary, cfg.env_id, cfg.mode);
  io::write_file(output_dir + "/trainlog.csv", result.log.to_csv());
  return result;
}

TrainResult train_baseline(const TrainerConfig& cfg, const sac::SacConfig& protagonist_cfg,
                           const std::string& output_dir, bool verbose) {
  cfg.validate();
  std::filesystem::create_directories(output_dir);
  AgentPair pair = make_agent_pair(cfg, protagonist_cfg, sac::SacConfig{});
  const auto environment = env::make_env(cfg.env_id);

  TrainResult result;
  for (int iteration = 0; iteration < cfg.n_iter; ++iteration) {
    run_phase(pair, *environment, cfg, iteration, Phase::kProtagonist,
              cfg.m_protagonist_episodes, /*zero_opponent=*/true, result.log);
    print_progress(result.log, iteration, verbose);
    write_periodic_checkpoints(pair, cfg, output_dir, iteration, /*baseline=*/true);
  }
  result.protagonist_checkpoint = output_dir + "/protagonist.bin";
  io::save_agent_checkpoint(result.protagonist_checkpoint, pair.protagonist, cfg.env_id,
                            cfg.mode);
  io::write_file(output_dir + "/trainlog.csv", result.log.to_csv());
  return result;
}

}  // namespace advsac::train

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "advsac/env/environment.hpp"
#include "advsac/replay/buffer.hpp"
#include "advsac/replay/her.hpp"
#include "advsac/sac/agent.hpp"

namespace advsac::train {

enum class Phase { kProtagonist, kAdversary };

struct TrainerConfig {
  int n_iter = 10;
  int m_protagonist_episodes = 50;
  int n_adversary_episodes = 50;
  env::DisturbanceMode mode = env::DisturbanceMode::kInternal;
  double amplitude = 0.0;  // internal mode only; must be 0 in external mode
  std::string env_id;
  int updates_per_step = 1;
  int warmup_steps = 1000;
  uint64_t seed = 1;
  replay::RelabelStrategy her;
  int buffer_capacity = 1'000'000;
  int checkpoint_every = 1;

  void validate() const;
};

struct TrainLogRow {
  int iteration = 0;
  Phase phase = Phase::kProtagonist;
  int episode = 0;
  double undiscounted_return = 0.0;
  bool success = false;
  double critic_loss_mean = 0.0;
  double actor_objective_mean = 0.0;
  double wall_ms = 0.0;  // console/progress only; not serialized (determinism)
};

struct TrainLog {
  std::vector<TrainLogRow> rows;
  // Deterministic CSV: iteration,phase,episode,return,success,critic_loss,
  // actor_objective. Wall time stays in memory.
  std::string to_csv() const;
};

struct AgentPair {
  sac::SacAgent protagonist;
  std::unique_ptr<replay::ReplayBuffer> protagonist_buffer;
  sac::SacAgent adversary;
  std::unique_ptr<replay::ReplayBuffer> adversary_buffer;
  int64_t protagonist_env_steps = 0;
  int64_t adversary_env_steps = 0;
};

// Builds both agents (roles forced: protagonist maximizes, adversary
// minimizes) and their buffers for the configured environment.
AgentPair make_agent_pair(const TrainerConfig& cfg, sac::SacConfig protagonist_cfg,
                          sac::SacConfig adversary_cfg);

struct EpisodeSeeds {
  uint64_t env_seed = 0;
  uint64_t learner_policy_seed = 0;
  uint64_t opponent_policy_seed = 0;
  uint64_t buffer_seed = 0;
  uint64_t update_seed = 0;
  uint64_t relabel_seed = 0;
};

// Seeds for (iteration, phase, episode), derived so that an episode's streams
// never depend on what other phases consumed.
EpisodeSeeds episode_seeds(uint64_t root, int iteration, Phase phase, int episode);

using StepCallback = std::function<void()>;

// Rolls one episode with the learner sampling stochastically and the frozen
// opponent actor (nullptr = locked to zero action). Stores the learner's own
// action in each transition; the shared environment reward is stored
// unmodified. `on_step` fires after every environment step.
env::EpisodeRecord run_episode(env::Environment& environment, sac::SacAgent& learner,
                               Phase learner_phase, const net::ApproxNet* frozen_opponent_actor,
                               env::DisturbanceMode mode, double amplitude,
                               const EpisodeSeeds& seeds, const StepCallback& on_step = {});

// One Algorithm-1 iteration: M protagonist episodes against the frozen
// adversary, then N adversary episodes against the frozen protagonist.
// Appends per-episode rows to `log`.
void train_iteration(AgentPair& pair, env::Environment& environment, const TrainerConfig& cfg,
                     int iteration, TrainLog& log);

struct TrainResult {
  TrainLog log;
  std::string protagonist_checkpoint;
  std::string adversary_checkpoint;  // empty for baseline runs
};

// Full run: n_iter iterations, periodic checkpoints, final checkpoints and
// the TrainLog CSV under output_dir.
TrainResult train(const TrainerConfig& cfg, const sac::SacConfig& protagonist_cfg,
                  const sac::SacConfig& adversary_cfg, const std::string& output_dir,
                  bool verbose = false);

// Plain-SAC baseline: the adversary is locked to zero action for the whole
// run and never updated; only protagonist phases execute.
TrainResult train_baseline(const TrainerConfig& cfg, const sac::SacConfig& protagonist_cfg,
                           const std::string& output_dir, bool verbose = false);

}  // namespace advsac::train

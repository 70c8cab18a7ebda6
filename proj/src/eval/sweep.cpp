#include "advsac/eval/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <sstream>

#include "advsac/env/compose.hpp"
#include "advsac/errors.hpp"
#include "advsac/io/csv.hpp"

namespace advsac::eval {

namespace {

constexpr uint64_t kEnvChannel = 0xE0;
constexpr uint64_t kPolicyChannel = 0xE1;
constexpr uint64_t kAttackChannel = 0xE2;

uint64_t amplitude_key(AttackKind kind, double amplitude) {
  // kNone ignores the amplitude entirely, so all its cells share one seed
  // stream; an attacked cell at amplitude 0 shares it too. That makes
  // "no attack" and "attack at zero amplitude" bit-identical by construction.
  if (kind == AttackKind::kNone) amplitude = 0.0;
  uint64_t bits;
  static_assert(sizeof(bits) == sizeof(amplitude));
  std::memcpy(&bits, &amplitude, sizeof(bits));
  return bits;
}

}  // namespace

std::string attack_name(AttackKind kind) {
  switch (kind) {
    case AttackKind::kNone: return "none";
    case AttackKind::kRandomUniform: return "random";
    case AttackKind::kAdversaryPolicy: return "adversary";
  }
  return "none";
}

AttackKind attack_from_name(const std::string& name) {
  if (name == "none") return AttackKind::kNone;
  if (name == "random") return AttackKind::kRandomUniform;
  if (name == "adversary") return AttackKind::kAdversaryPolicy;
  throw ConfigError("unknown attack kind '" + name + "'");
}

void SweepSpec::validate() const {
  if (env_id.empty()) throw ConfigError("SweepSpec: env_id is required");
  if (policy_checkpoint.empty()) throw ConfigError("SweepSpec: policy_checkpoint is required");
  if (episodes_per_cell < 1) throw ConfigError("SweepSpec: episodes_per_cell must be >= 1");
  if (attack.kind == AttackKind::kAdversaryPolicy && !attack.adversary_checkpoint) {
    throw ConfigError("SweepSpec: adversary attack requires an adversary checkpoint");
  }
  if (!std::is_sorted(amplitudes.begin(), amplitudes.end())) {
    throw ConfigError("SweepSpec: amplitudes must be sorted ascending");
  }
  for (double a : amplitudes) {
    if (a < 0.0) throw ConfigError("SweepSpec: amplitudes must be >= 0");
  }
  if (jobs < 1) throw ConfigError("SweepSpec: jobs must be >= 1");
}

EvalContext make_eval_context(const SweepSpec& spec) {
  spec.validate();
  const auto environment = env::make_env(spec.env_id);
  EvalContext ctx;
  ctx.env_id = spec.env_id;
  ctx.mode = environment->composition_mode();

  const io::AgentCheckpoint policy = io::load_agent_checkpoint(spec.policy_checkpoint);
  if (policy.env_id != spec.env_id) {
    throw ConfigError("policy checkpoint was trained on '" + policy.env_id + "', not '" +
                      spec.env_id + "'");
  }
  const env::EnvSpec& es = environment->spec();
  if (policy.agent.state_dim != es.state_dim ||
      policy.agent.action_dim != es.protagonist_action_dim ||
      policy.agent.goal_dim != es.goal_dim) {
    throw DimensionError("policy checkpoint dims do not match environment");
  }
  ctx.protagonist_actor = policy.agent.actor;

  if (spec.attack.kind == AttackKind::kAdversaryPolicy) {
    const io::AgentCheckpoint adv = io::load_agent_checkpoint(*spec.attack.adversary_checkpoint);
    if (adv.agent.state_dim != es.state_dim || adv.agent.action_dim != es.adversary_action_dim ||
        adv.agent.goal_dim != es.goal_dim) {
      throw DimensionError("adversary checkpoint dims do not match environment");
    }
    ctx.adversary_actor = adv.agent.actor;
  }
  return ctx;
}

env::EpisodeRecord eval_episode(env::Environment& environment, const EvalContext& ctx,
                                AttackKind attack, double amplitude, uint64_t env_seed,
                                uint64_t policy_seed, uint64_t attack_seed,
                                bool deterministic_policy) {
  const env::EnvSpec& spec = environment.spec();
  math::Rng policy_rng(policy_seed);
  math::Rng attack_rng(attack_seed);

  environment.reset(env_seed);
  std::vector<double> obs = environment.observation();
  const std::vector<double> goal = environment.goal();

  env::EpisodeRecord episode;
  episode.seed = env_seed;

  while (!environment.done()) {
    std::vector<double> agent_obs = obs;
    agent_obs.insert(agent_obs.end(), goal.begin(), goal.end());

    const sac::PolicySample protagonist = sac::sample_action(
        ctx.protagonist_actor, agent_obs, deterministic_policy, &policy_rng);

    std::vector<double> adversary_action(spec.adversary_action_dim, 0.0);
    switch (attack) {
      case AttackKind::kNone:
        break;
      case AttackKind::kRandomUniform:
        for (double& a : adversary_action) a = attack_rng.uniform(-1.0, 1.0);
        break;
      case AttackKind::kAdversaryPolicy:
        adversary_action =
            sac::sample_action(*ctx.adversary_actor, agent_obs, false, &attack_rng).action;
        break;
    }

    const env::JointAction joint =
        env::make_joint_action(ctx.mode, protagonist.action, adversary_action,
                               ctx.mode == env::DisturbanceMode::kInternal ? amplitude : 0.0);
    const int step_index = environment.step_index();
    const env::StepResult result = environment.step(joint);

    env::Transition transition;
    transition.state = obs;
    transition.action = joint.executed;  // inspection record: what the env saw
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
  }
  episode.discounted_return = env::discounted_return(episode, spec.gamma);
  return episode;
}

namespace {

CellStats run_cell(const SweepSpec& spec, const EvalContext& ctx, double amplitude) {
  const int n = spec.episodes_per_cell;
  std::vector<double> returns(n, 0.0);
  std::vector<uint8_t> successes(n, 0);
  const uint64_t amp_key = amplitude_key(spec.attack.kind, amplitude);

  const auto run_one = [&](int e) {
    const auto environment = env::make_env(spec.env_id);
    const uint64_t env_seed =
        math::derive_seed(spec.seed, {kEnvChannel, amp_key, static_cast<uint64_t>(e)});
    const uint64_t policy_seed =
        math::derive_seed(spec.seed, {kPolicyChannel, amp_key, static_cast<uint64_t>(e)});
    const uint64_t attack_seed =
        math::derive_seed(spec.seed, {kAttackChannel, amp_key, static_cast<uint64_t>(e)});
    const env::EpisodeRecord ep =
        eval_episode(*environment, ctx, spec.attack.kind, amplitude, env_seed, policy_seed,
                     attack_seed, spec.deterministic_policy);
    returns[e] = ep.undiscounted_return;
    successes[e] = ep.success ? 1 : 0;
  };

  if (spec.jobs > 1) {
#ifdef _OPENMP
    omp_set_num_threads(spec.jobs);
#pragma omp parallel for schedule(dynamic)
    for (int e = 0; e < n; ++e) run_one(e);
#else
    for (int e = 0; e < n; ++e) run_one(e);
#endif
  } else {
    for (int e = 0; e < n; ++e) run_one(e);
  }

  // Deterministic fold in episode order.
  CellStats stats;
  stats.attack = spec.attack.kind;
  stats.amplitude = amplitude;
  stats.episodes = n;
  double sum = 0.0;
  int success_count = 0;
  for (int e = 0; e < n; ++e) {
    sum += returns[e];
    success_count += successes[e];
  }
  stats.mean_return = sum / n;
  double sq = 0.0;
  for (int e = 0; e < n; ++e) {
    const double d = returns[e] - stats.mean_return;
    sq += d * d;
  }
  stats.std_return = n > 1 ? std::sqrt(sq / (n - 1)) : 0.0;
  stats.success_rate = static_cast<double>(success_count) / n;
  return stats;
}

}  // namespace

CellStats evaluate_cell(const SweepSpec& spec, double amplitude) {
  const EvalContext ctx = make_eval_context(spec);
  return run_cell(spec, ctx, amplitude);
}

SweepResult sweep(const SweepSpec& spec) {
  const EvalContext ctx = make_eval_context(spec);
  SweepResult result;
  result.env_id = spec.env_id;
  result.seed = spec.seed;
  if (ctx.mode == env::DisturbanceMode::kExternal) {
    result.cells.push_back(run_cell(spec, ctx, 0.0));
  } else {
    if (spec.amplitudes.empty()) throw ConfigError("sweep: empty amplitude grid");
    for (double amplitude : spec.amplitudes) {
      result.cells.push_back(run_cell(spec, ctx, amplitude));
    }
  }
  return result;
}

std::string sweep_to_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "env_id,attack,amplitude,episodes,mean_return,std_return,success_rate,seed\n";
  for (const CellStats& c : result.cells) {
    out << result.env_id << ',' << attack_name(c.attack) << ',' << io::format_double(c.amplitude)
        << ',' << c.episodes << ',' << io::format_double(c.mean_return) << ','
        << io::format_double(c.std_return) << ',' << io::format_double(c.success_rate) << ','
        << result.seed << "\n";
  }
  return out.str();
}

SweepResult parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("sweep csv: missing header");
  SweepResult result;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = io::split_csv_line(line);
    if (f.size() != 8) throw IoError("sweep csv: expected 8 columns");
    if (first) {
      result.env_id = f[0];
      result.seed = static_cast<uint64_t>(std::stoull(f[7]));
      first = false;
    }
    CellStats c;
    c.attack = attack_from_name(f[1]);
    c.amplitude = io::parse_double(f[2]);
    c.episodes = static_cast<int>(io::parse_double(f[3]));
    c.mean_return = io::parse_double(f[4]);
    c.std_return = io::parse_double(f[5]);
    c.success_rate = io::parse_double(f[6]);
    result.cells.push_back(c);
  }
  if (first) throw IoError("sweep csv: no rows");
  return result;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DimensionError("spearman: length mismatch");
  const size_t n = x.size();
  if (n < 2) return 0.0;

  const auto ranks = [](const std::vector<double>& v) {
    const size_t n = v.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n, 0.0);
    size_t i = 0;
    while (i < n) {
      size_t j = i;
      while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
      const double avg = 0.5 * (i + j) + 1.0;  // average rank, 1-based
      for (size_t k = i; k <= j; ++k) r[order[k]] = avg;
      i = j + 1;
    }
    return r;
  };

  const std::vector<double> rx = ranks(x);
  const std::vector<double> ry = ranks(y);
  double mean = 0.5 * (n + 1);
  double cov = 0.0, vx = 0.0, vy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    cov += (rx[i] - mean) * (ry[i] - mean);
    vx += (rx[i] - mean) * (rx[i] - mean);
    vy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (vx == 0.0 || vy == 0.0) return 0.0;
  return cov / std::sqrt(vx * vy);
}

namespace {

const CellStats* find_cell(const SweepResult& r, AttackKind kind, double amplitude) {
  for (const CellStats& c : r.cells) {
    if (c.attack == kind && c.amplitude == amplitude) return &c;
  }
  return nullptr;
}

std::vector<double> cell_amplitudes(const SweepResult& r, AttackKind kind) {
  std::vector<double> amps;
  for (const CellStats& c : r.cells) {
    if (c.attack == kind) amps.push_back(c.amplitude);
  }
  return amps;
}

}  // namespace

OrderingReport compare_policies(const SweepResult& adv_trained, const SweepResult& baseline) {
  if (adv_trained.env_id != baseline.env_id) {
    throw ConfigError("compare_policies: different environments");
  }
  OrderingReport report;

  // Per-cell deltas over the cells both results share.
  for (const CellStats& a : adv_trained.cells) {
    const CellStats* b = find_cell(baseline, a.attack, a.amplitude);
    if (b == nullptr) continue;
    const auto key = std::make_pair(attack_name(a.attack), a.amplitude);
    report.return_delta[key] = a.mean_return - b->mean_return;
    report.success_delta[key] = a.success_rate - b->success_rate;
  }

  // (i) adversary-attack cells: adv-trained >= baseline on a majority.
  {
    const std::vector<double> amps = cell_amplitudes(adv_trained, AttackKind::kAdversaryPolicy);
    const std::vector<double> amps_b = cell_amplitudes(baseline, AttackKind::kAdversaryPolicy);
    if (amps.empty() || amps != amps_b) {
      throw ConfigError("compare_policies: adversary-attack grids do not match");
    }
    int ge = 0;
    for (double amp : amps) {
      const CellStats* a = find_cell(adv_trained, AttackKind::kAdversaryPolicy, amp);
      const CellStats* b = find_cell(baseline, AttackKind::kAdversaryPolicy, amp);
      if (a->mean_return >= b->mean_return) ++ge;
    }
    report.adv_trained_ge_baseline_majority = 2 * ge > static_cast<int>(amps.size());
  }

  // (ii) within the baseline: adversary attack <= random attack on a majority.
  {
    const std::vector<double> amps = cell_amplitudes(baseline, AttackKind::kAdversaryPolicy);
    const std::vector<double> amps_r = cell_amplitudes(baseline, AttackKind::kRandomUniform);
    if (amps.empty() || amps != amps_r) {
      throw ConfigError("compare_policies: baseline attack grids do not match");
    }
    int le = 0;
    std::vector<double> adv_returns, rand_returns;
    for (double amp : amps) {
      const CellStats* a = find_cell(baseline, AttackKind::kAdversaryPolicy, amp);
      const CellStats* r = find_cell(baseline, AttackKind::kRandomUniform, amp);
      if (a->mean_return <= r->mean_return) ++le;
      adv_returns.push_back(a->mean_return);
      rand_returns.push_back(r->mean_return);
    }
    report.adversary_le_random_majority = 2 * le > static_cast<int>(amps.size());

    // (iii) monotone non-increase of baseline return with amplitude.
    report.spearman_baseline_adversary = spearman(amps, adv_returns);
    report.spearman_baseline_random = spearman(amps, rand_returns);
    report.baseline_monotone_nonincreasing =
        report.spearman_baseline_adversary <= 0.0 && report.spearman_baseline_random <= 0.0;
  }
  return report;
}

std::string OrderingReport::to_string() const {
  std::ostringstream out;
  out << "adv_trained_ge_baseline_majority=" << (adv_trained_ge_baseline_majority ? 1 : 0)
      << " adversary_le_random_majority=" << (adversary_le_random_majority ? 1 : 0)
      << " baseline_monotone_nonincreasing=" << (baseline_monotone_nonincreasing ? 1 : 0)
      << " spearman_adv=" << io::format_double(spearman_baseline_adversary)
      << " spearman_rand=" << io::format_double(spearman_baseline_random);
  return out.str();
}

}  // namespace advsac::eval

#include "advsac/sac/policy.hpp"

#include <algorithm>
#include <cmath>

#include "advsac/errors.hpp"

namespace advsac::sac {

namespace {
constexpr double kHalfLog2Pi = 0.9189385332046727;  // 0.5 * log(2*pi)
}

PolicySample sample_from_output(std::span<const double> actor_output, bool deterministic,
                                math::Rng* rng) {
  if (actor_output.size() % 2 != 0) {
    throw DimensionError("policy: actor output must have even length (mean, log_std)");
  }
  const size_t d = actor_output.size() / 2;
  PolicySample sample;
  sample.action.resize(d);
  if (deterministic) {
    for (size_t i = 0; i < d; ++i) sample.action[i] = std::tanh(actor_output[i]);
    return sample;
  }
  if (rng == nullptr) throw ProtocolError("policy: stochastic sampling requires an rng");
  double log_prob = 0.0;
  for (size_t i = 0; i < d; ++i) {
    const double mean = actor_output[i];
    const double log_std = std::clamp(actor_output[d + i], kLogStdMin, kLogStdMax);
    const double z = rng->normal();
    const double u = mean + std::exp(log_std) * z;
    const double a = std::tanh(u);
    sample.action[i] = a;
    log_prob += -0.5 * z * z - kHalfLog2Pi - log_std - std::log(1.0 - a * a + kSquashEps);
  }
  sample.log_prob = log_prob;
  return sample;
}

PolicySample sample_action(const net::ApproxNet& actor, std::span<const double> obs,
                           bool deterministic, math::Rng* rng) {
  const std::vector<double> out = net::forward(actor, obs);
  return sample_from_output(out, deterministic, rng);
}

ReparamSample sample_reparam_from_output(std::span<const double> actor_output, math::Rng& rng) {
  if (actor_output.size() % 2 != 0) {
    throw DimensionError("policy: actor output must have even length (mean, log_std)");
  }
  const size_t d = actor_output.size() / 2;
  ReparamSample s;
  s.noise.resize(d);
  s.mean.resize(d);
  s.log_std.resize(d);
  s.clamped.resize(d);
  s.action.resize(d);
  s.log_prob = 0.0;
  for (size_t i = 0; i < d; ++i) {
    const double mean = actor_output[i];
    const double raw_log_std = actor_output[d + i];
    const double log_std = std::clamp(raw_log_std, kLogStdMin, kLogStdMax);
    const double z = rng.normal();
    const double u = mean + std::exp(log_std) * z;
    const double a = std::tanh(u);
    s.noise[i] = z;
    s.mean[i] = mean;
    s.log_std[i] = log_std;
    s.clamped[i] = raw_log_std != log_std ? 1 : 0;
    s.action[i] = a;
    s.log_prob += -0.5 * z * z - kHalfLog2Pi - log_std - std::log(1.0 - a * a + kSquashEps);
  }
  return s;
}

double squashed_log_prob(std::span<const double> mean, std::span<const double> log_std,
                         std::span<const double> action) {
  if (mean.size() != log_std.size() || mean.size() != action.size()) {
    throw DimensionError("squashed_log_prob: length mismatch");
  }
  double log_prob = 0.0;
  for (size_t i = 0; i < mean.size(); ++i) {
    const double a = std::clamp(action[i], -1.0 + 1e-12, 1.0 - 1e-12);
    const double u = std::atanh(a);
    const double ls = std::clamp(log_std[i], kLogStdMin, kLogStdMax);
    const double z = (u - mean[i]) / std::exp(ls);
    log_prob += -0.5 * z * z - kHalfLog2Pi - ls - std::log(1.0 - a * a + kSquashEps);
  }
  return log_prob;
}

}  // namespace advsac::sac

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "advsac/math/rng.hpp"
#include "advsac/net/network.hpp"

namespace advsac::sac {

inline constexpr double kLogStdMin = -20.0;
inline constexpr double kLogStdMax = 2.0;
inline constexpr double kSquashEps = 1e-6;

struct PolicySample {
  std::vector<double> action;  // strictly inside (-1, 1)
  std::optional<double> log_prob;  // absent in deterministic mode
};

// Everything the reparameterized actor update needs about one sample.
struct ReparamSample {
  std::vector<double> noise;     // z ~ N(0, I)
  std::vector<double> mean;
  std::vector<double> log_std;   // after clamping
  std::vector<uint8_t> clamped;  // 1 where log_std hit the clamp
  std::vector<double> action;    // tanh(mean + exp(log_std) * z)
  double log_prob = 0.0;
};

// Splits a raw actor output row [mean..., log_std...] and squashes a sample.
// `deterministic` returns tanh(mean) with no rng consumption.
PolicySample sample_from_output(std::span<const double> actor_output, bool deterministic,
                                math::Rng* rng);

// The actor net maps obs -> [mean, log_std]; convenience wrapper.
PolicySample sample_action(const net::ApproxNet& actor, std::span<const double> obs,
                           bool deterministic, math::Rng* rng);

// Reparameterized sample from a raw actor output row.
ReparamSample sample_reparam_from_output(std::span<const double> actor_output, math::Rng& rng);

// Density of the squashed Gaussian at `action` given distribution parameters.
// Used by tests to validate log_prob values by quadrature.
double squashed_log_prob(std::span<const double> mean, std::span<const double> log_std,
                         std::span<const double> action);

}  // namespace advsac::sac

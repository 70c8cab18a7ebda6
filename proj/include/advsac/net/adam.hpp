#pragma once

#include <cstdint>
#include <vector>

#include "advsac/net/network.hpp"

namespace advsac::net {

struct AdamConfig {
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// First/second moment accumulators shaped like the network parameters.
struct AdamState {
  AdamConfig config;
  int64_t step = 0;
  std::vector<std::vector<double>> m_weights, v_weights;
  std::vector<std::vector<double>> m_biases, v_biases;
};

AdamState make_adam(const ApproxNet& net, AdamConfig config);

// One bias-corrected adaptive-moment update. Gradient shapes must match the
// net; throws DimensionError otherwise.
void adam_step(ApproxNet& net, const Gradients& grad, AdamState& state);

}  // namespace advsac::net

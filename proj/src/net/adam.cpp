#include "advsac/net/adam.hpp"

#include <cmath>

#include "advsac/errors.hpp"

namespace advsac::net {

AdamState make_adam(const ApproxNet& net, AdamConfig config) {
  AdamState state;
  state.config = config;
  const int layers = net.num_layers();
  state.m_weights.resize(layers);
  state.v_weights.resize(layers);
  state.m_biases.resize(layers);
  state.v_biases.resize(layers);
  for (int l = 0; l < layers; ++l) {
    state.m_weights[l].assign(net.weights[l].size(), 0.0);
    state.v_weights[l].assign(net.weights[l].size(), 0.0);
    state.m_biases[l].assign(net.biases[l].size(), 0.0);
    state.v_biases[l].assign(net.biases[l].size(), 0.0);
  }
  return state;
}

namespace {

void update_span(std::vector<double>& params, const std::vector<double>& grad,
                 std::vector<double>& m, std::vector<double>& v, const AdamConfig& cfg,
                 double bias1, double bias2) {
  if (params.size() != grad.size() || params.size() != m.size()) {
    throw DimensionError("adam_step: gradient shape does not match parameters");
  }
  for (size_t i = 0; i < params.size(); ++i) {
    const double g = grad[i];
    m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g;
    v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g * g;
    const double m_hat = m[i] / bias1;
    const double v_hat = v[i] / bias2;
    params[i] -= cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.eps);
  }
}

}  // namespace

void adam_step(ApproxNet& net, const Gradients& grad, AdamState& state) {
  if (grad.weights.size() != static_cast<size_t>(net.num_layers())) {
    throw DimensionError("adam_step: gradient layer count mismatch");
  }
  ++state.step;
  const AdamConfig& cfg = state.config;
  const double bias1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double bias2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
  for (int l = 0; l < net.num_layers(); ++l) {
    update_span(net.weights[l], grad.weights[l], state.m_weights[l], state.v_weights[l], cfg,
                bias1, bias2);
    update_span(net.biases[l], grad.biases[l], state.m_biases[l], state.v_biases[l], cfg, bias1,
                bias2);
  }
}

}  // namespace advsac::net

#include "advsac/net/network.hpp"

#include <cmath>
#include <string>

#include "advsac/errors.hpp"
#include "advsac/math/kernels.hpp"
#include "advsac/math/rng.hpp"

namespace advsac::net {

std::size_t ApproxNet::parameter_count() const {
  std::size_t count = 0;
  for (int l = 0; l < num_layers(); ++l) {
    count += weights[l].size() + biases[l].size();
  }
  return count;
}

ApproxNet make_net(std::vector<int> layer_sizes, Activation activation, uint64_t seed) {
  if (layer_sizes.size() < 2) {
    throw DimensionError("make_net: need at least input and output sizes");
  }
  for (int s : layer_sizes) {
    if (s < 1) throw DimensionError("make_net: layer sizes must be >= 1");
  }
  ApproxNet net;
  net.layer_sizes = std::move(layer_sizes);
  net.activation = activation;
  math::Rng rng(seed);
  const int layers = static_cast<int>(net.layer_sizes.size()) - 1;
  net.weights.resize(layers);
  net.biases.resize(layers);
  for (int l = 0; l < layers; ++l) {
    const int in = net.layer_sizes[l];
    const int out = net.layer_sizes[l + 1];
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    net.weights[l].resize(static_cast<size_t>(in) * out);
    net.biases[l].resize(out);
    for (double& w : net.weights[l]) w = rng.uniform(-bound, bound);
    for (double& b : net.biases[l]) b = rng.uniform(-bound, bound);
  }
  return net;
}

namespace {

void apply_activation(Activation act, std::vector<double>& v) {
  if (act == Activation::kRelu) {
    for (double& x : v) x = x > 0.0 ? x : 0.0;
  } else {
    for (double& x : v) x = std::tanh(x);
  }
}

}  // namespace

ForwardTrace forward_batch(const ApproxNet& net, std::span<const double> input, int batch) {
  if (batch < 1) throw DimensionError("forward_batch: batch must be >= 1");
  if (input.size() != static_cast<size_t>(batch) * net.input_dim()) {
    throw DimensionError("forward_batch: input has " + std::to_string(input.size()) +
                         " values, expected " + std::to_string(batch * net.input_dim()));
  }
  ForwardTrace trace;
  trace.batch = batch;
  trace.activations.resize(net.num_layers() + 1);
  trace.activations[0].assign(input.begin(), input.end());
  for (int l = 0; l < net.num_layers(); ++l) {
    const int in = net.layer_sizes[l];
    const int out = net.layer_sizes[l + 1];
    auto& y = trace.activations[l + 1];
    y.resize(static_cast<size_t>(batch) * out);
    math::affine_forward(trace.activations[l].data(), net.weights[l].data(),
                         net.biases[l].data(), y.data(), batch, in, out);
    if (l + 1 < net.num_layers()) apply_activation(net.activation, y);
  }
  return trace;
}

std::vector<double> forward(const ApproxNet& net, std::span<const double> input) {
  return forward_batch(net, input, 1).activations.back();
}

Gradients make_zero_gradients(const ApproxNet& net, int batch) {
  Gradients g;
  g.weights.resize(net.num_layers());
  g.biases.resize(net.num_layers());
  for (int l = 0; l < net.num_layers(); ++l) {
    g.weights[l].assign(net.weights[l].size(), 0.0);
    g.biases[l].assign(net.biases[l].size(), 0.0);
  }
  g.input.assign(static_cast<size_t>(batch) * net.input_dim(), 0.0);
  return g;
}

void backward_into(const ApproxNet& net, const ForwardTrace& trace,
                   std::span<const double> output_grad, Gradients& grad) {
  if (trace.batch < 1 ||
      trace.activations.size() != static_cast<size_t>(net.num_layers()) + 1) {
    throw ProtocolError("backward: trace does not match a forward pass of this net");
  }
  for (int l = 0; l <= net.num_layers(); ++l) {
    if (trace.activations[l].size() !=
        static_cast<size_t>(trace.batch) * net.layer_sizes[l]) {
      throw ProtocolError("backward: trace layer " + std::to_string(l) + " has wrong size");
    }
  }
  const int batch = trace.batch;
  if (output_grad.size() != static_cast<size_t>(batch) * net.output_dim()) {
    throw DimensionError("backward: output_grad size mismatch");
  }
  if (grad.weights.size() != static_cast<size_t>(net.num_layers()) ||
      grad.input.size() != static_cast<size_t>(batch) * net.input_dim()) {
    throw DimensionError("backward: gradient buffers have wrong shape");
  }

  std::vector<double> delta(output_grad.begin(), output_grad.end());
  std::vector<double> next_delta;
  for (int l = net.num_layers() - 1; l >= 0; --l) {
    const int in = net.layer_sizes[l];
    const int out = net.layer_sizes[l + 1];
    const auto& x = trace.activations[l];
    math::affine_backward_params(x.data(), delta.data(), grad.weights[l].data(),
                                 grad.biases[l].data(), batch, in, out);
    if (l > 0) {
      next_delta.assign(static_cast<size_t>(batch) * in, 0.0);
      math::affine_backward_input(delta.data(), net.weights[l].data(), next_delta.data(), batch,
                                  in, out);
      // Chain through the hidden activation (x holds post-activation values).
      if (net.activation == Activation::kRelu) {
        for (size_t i = 0; i < next_delta.size(); ++i) {
          if (x[i] <= 0.0) next_delta[i] = 0.0;
        }
      } else {
        for (size_t i = 0; i < next_delta.size(); ++i) {
          next_delta[i] *= 1.0 - x[i] * x[i];
        }
      }
      delta.swap(next_delta);
    } else {
      math::affine_backward_input(delta.data(), net.weights[l].data(), grad.input.data(), batch,
                                  in, out);
    }
  }
}

Gradients backward(const ApproxNet& net, const ForwardTrace& trace,
                   std::span<const double> output_grad) {
  Gradients grad = make_zero_gradients(net, trace.batch > 0 ? trace.batch : 1);
  backward_into(net, trace, output_grad, grad);
  return grad;
}

}  // namespace advsac::net

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace advsac::net {

enum class Activation { kRelu, kTanh };

// Plain fully-connected network, double precision. Hidden layers use the
// configured activation, the output layer is identity. Weights are stored
// input-major (in x out) to match the affine kernels.
struct ApproxNet {
  std::vector<int> layer_sizes;  // {in, hidden..., out}
  Activation activation = Activation::kRelu;
  std::vector<std::vector<double>> weights;  // per layer, in_l * out_l
  std::vector<std::vector<double>> biases;   // per layer, out_l

  int input_dim() const { return layer_sizes.front(); }
  int output_dim() const { return layer_sizes.back(); }
  int num_layers() const { return static_cast<int>(weights.size()); }
  std::size_t parameter_count() const;
};

// Seeded scaled-uniform init: each layer's weights and biases are uniform in
// +-1/sqrt(fan_in). The same seed always produces the same parameters.
ApproxNet make_net(std::vector<int> layer_sizes, Activation activation, uint64_t seed);

// Pure single-input forward pass.
std::vector<double> forward(const ApproxNet& net, std::span<const double> input);

// Batched forward pass that keeps the intermediates backward() needs.
struct ForwardTrace {
  int batch = 0;
  // activations[0] is the input (batch x in); activations[l+1] is layer l's
  // post-activation output (the last one is the network output).
  std::vector<std::vector<double>> activations;
};

ForwardTrace forward_batch(const ApproxNet& net, std::span<const double> input, int batch);

struct Gradients {
  std::vector<std::vector<double>> weights;  // same shapes as net.weights
  std::vector<std::vector<double>> biases;
  std::vector<double> input;  // batch x in, gradient w.r.t. the inputs
};

Gradients make_zero_gradients(const ApproxNet& net, int batch);

// Reverse-mode gradients of sum_b <output_grad[b], output[b]> with respect to
// every parameter and to the inputs. `trace` must come from forward_batch on
// the same net; otherwise a ProtocolError is thrown.
Gradients backward(const ApproxNet& net, const ForwardTrace& trace,
                   std::span<const double> output_grad);

// In-place accumulate variant reusing caller-owned buffers (grad.weights and
// grad.biases are accumulated into; grad.input is overwritten).
void backward_into(const ApproxNet& net, const ForwardTrace& trace,
                   std::span<const double> output_grad, Gradients& grad);

}  // namespace advsac::net

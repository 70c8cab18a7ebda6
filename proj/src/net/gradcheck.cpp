#include "advsac/net/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "advsac/errors.hpp"
#include "advsac/math/rng.hpp"

namespace advsac::net {

namespace {

double functional(const ApproxNet& net, const std::vector<double>& input,
                  const std::vector<double>& output_weights) {
  const std::vector<double> out = forward(net, input);
  double f = 0.0;
  for (size_t i = 0; i < out.size(); ++i) f += output_weights[i] * out[i];
  return f;
}

double rel_error(double a, double b) {
  const double scale = std::max(std::abs(a) + std::abs(b), 1e-8);
  return std::abs(a - b) / scale;
}

}  // namespace

double max_grad_rel_error(const ApproxNet& net, const std::vector<double>& input,
                          const std::vector<double>& output_weights, double h) {
  ForwardTrace trace = forward_batch(net, input, 1);
  Gradients analytic = backward(net, trace, output_weights);

  double max_err = 0.0;
  ApproxNet probe = net;

  // Parameters.
  for (int l = 0; l < net.num_layers(); ++l) {
    for (int which = 0; which < 2; ++which) {
      auto& params = which == 0 ? probe.weights[l] : probe.biases[l];
      const auto& grads = which == 0 ? analytic.weights[l] : analytic.biases[l];
      for (size_t i = 0; i < params.size(); ++i) {
        const double saved = params[i];
        params[i] = saved + h;
        const double fp = functional(probe, input, output_weights);
        params[i] = saved - h;
        const double fm = functional(probe, input, output_weights);
        params[i] = saved;
        max_err = std::max(max_err, rel_error(grads[i], (fp - fm) / (2.0 * h)));
      }
    }
  }

  // Inputs.
  std::vector<double> x = input;
  for (size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + h;
    const double fp = functional(net, x, output_weights);
    x[i] = saved - h;
    const double fm = functional(net, x, output_weights);
    x[i] = saved;
    max_err = std::max(max_err, rel_error(analytic.input[i], (fp - fm) / (2.0 * h)));
  }
  return max_err;
}

GradcheckReport gradcheck(int n_trials, double tolerance, uint64_t seed) {
  if (n_trials < 1) throw DomainError("gradcheck: n_trials must be >= 1");
  GradcheckReport report;
  report.trials = n_trials;
  report.tolerance = tolerance;
  math::Rng rng(seed);
  for (int t = 0; t < n_trials; ++t) {
    std::vector<int> sizes;
    sizes.push_back(2 + rng.uniform_int(5));
    const int hidden_layers = 1 + rng.uniform_int(2);
    for (int l = 0; l < hidden_layers; ++l) sizes.push_back(3 + rng.uniform_int(6));
    sizes.push_back(1 + rng.uniform_int(3));
    const Activation act = t % 2 == 0 ? Activation::kRelu : Activation::kTanh;
    const ApproxNet net = make_net(sizes, act, rng.next_u64());

    std::vector<double> input(net.input_dim());
    for (double& v : input) v = rng.uniform(-1.5, 1.5);
    std::vector<double> output_weights(net.output_dim());
    for (double& v : output_weights) v = rng.uniform(-1.0, 1.0);

    const double err = max_grad_rel_error(net, input, output_weights);
    report.per_trial_error.push_back(err);
    report.max_rel_error = std::max(report.max_rel_error, err);
  }
  report.pass = report.max_rel_error < tolerance;
  return report;
}

}  // namespace advsac::net

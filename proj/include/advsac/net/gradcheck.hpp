#pragma once

#include <cstdint>
#include <vector>

#include "advsac/net/network.hpp"

namespace advsac::net {

struct GradcheckReport {
  int trials = 0;
  double tolerance = 0.0;
  double max_rel_error = 0.0;
  bool pass = false;
  std::vector<double> per_trial_error;
};

// Max relative error between backward() and central finite differences
// (h = 1e-5) over all parameters and inputs of one (net, input) pair, for a
// random linear functional of the outputs.
double max_grad_rel_error(const ApproxNet& net, const std::vector<double>& input,
                          const std::vector<double>& output_weights, double h = 1e-5);

// Runs max_grad_rel_error over n_trials random small architectures drawn from
// the seed. Throws DomainError if n_trials < 1.
GradcheckReport gradcheck(int n_trials, double tolerance, uint64_t seed);

}  // namespace advsac::net

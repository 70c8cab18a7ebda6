#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace advsac::math {

uint64_t splitmix64(uint64_t& state);

// Derives an independent child seed from a root seed and a path of indices.
// Used to give every (iteration, phase, episode, channel) its own stream so
// that adding or removing consumers elsewhere never shifts existing streams.
uint64_t derive_seed(uint64_t root, std::initializer_list<uint64_t> path);

// Deterministic random source. All project randomness flows through this
// class; std::* distributions are avoided because their output is
// implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64();

  // Uniform on [0, 1).
  double uniform();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  // Uniform integer on [0, n), n >= 1. Rejection sampling, no modulo bias.
  int uniform_int(int n);
  // Standard normal via Box-Muller (second value cached).
  double normal();

 private:
  std::mt19937_64 gen_;
  bool has_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

}  // namespace advsac::math

#pragma once

#include <vector>

#include "advsac/env/types.hpp"

namespace advsac::env {

// clamp(protagonist + amplitude * adversary, -1, 1), componentwise.
// Throws DimensionError on length mismatch, DomainError on out-of-range
// components or negative amplitude.
std::vector<double> compose_internal(const std::vector<double>& protagonist,
                                     const std::vector<double>& adversary, double amplitude);

// [protagonist, adversary] concatenated, protagonist first.
// Throws DomainError on out-of-range components.
std::vector<double> compose_external(const std::vector<double>& protagonist,
                                     const std::vector<double>& adversary);

// Builds a JointAction with `executed` computed for the given mode.
JointAction make_joint_action(DisturbanceMode mode, std::vector<double> protagonist,
                              std::vector<double> adversary, double amplitude = 0.0);

}  // namespace advsac::env

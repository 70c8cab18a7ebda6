#include "advsac/env/compose.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "advsac/errors.hpp"

namespace advsac::env {

namespace {

void check_unit_box(const std::vector<double>& v, const char* who) {
  for (double c : v) {
    if (!(c >= -1.0 && c <= 1.0)) {
      throw DomainError(std::string(who) + " component outside [-1, 1]: " + std::to_string(c));
    }
  }
}

}  // namespace

std::vector<double> compose_internal(const std::vector<double>& protagonist,
                                     const std::vector<double>& adversary, double amplitude) {
  if (protagonist.size() != adversary.size()) {
    throw DimensionError("compose_internal: protagonist dim " +
                         std::to_string(protagonist.size()) + " != adversary dim " +
                         std::to_string(adversary.size()));
  }
  if (!(amplitude >= 0.0)) {
    throw DomainError("compose_internal: amplitude must be >= 0, got " +
                      std::to_string(amplitude));
  }
  check_unit_box(protagonist, "compose_internal: protagonist");
  check_unit_box(adversary, "compose_internal: adversary");
  std::vector<double> executed(protagonist.size());
  for (size_t i = 0; i < executed.size(); ++i) {
    executed[i] = std::clamp(protagonist[i] + amplitude * adversary[i], -1.0, 1.0);
  }
  return executed;
}

std::vector<double> compose_external(const std::vector<double>& protagonist,
                                     const std::vector<double>& adversary) {
  check_unit_box(protagonist, "compose_external: protagonist");
  check_unit_box(adversary, "compose_external: adversary");
  std::vector<double> executed;
  executed.reserve(protagonist.size() + adversary.size());
  executed.insert(executed.end(), protagonist.begin(), protagonist.end());
  executed.insert(executed.end(), adversary.begin(), adversary.end());
  return executed;
}

JointAction make_joint_action(DisturbanceMode mode, std::vector<double> protagonist,
                              std::vector<double> adversary, double amplitude) {
  JointAction joint;
  joint.mode = mode;
  joint.amplitude = amplitude;
  switch (mode) {
    case DisturbanceMode::kInternal:
      joint.executed = compose_internal(protagonist, adversary, amplitude);
      break;
    case DisturbanceMode::kExternal:
      joint.executed = compose_external(protagonist, adversary);
      break;
    case DisturbanceMode::kNone:
      check_unit_box(protagonist, "make_joint_action: protagonist");
      joint.executed = protagonist;
      break;
  }
  joint.protagonist = std::move(protagonist);
  joint.adversary = std::move(adversary);
  return joint;
}

}  // namespace advsac::env

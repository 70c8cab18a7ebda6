#pragma once

#include <iosfwd>
#include <string>

#include "advsac/env/types.hpp"
#include "advsac/sac/agent.hpp"

namespace advsac::io {

// Versioned little-endian binary bundle: config, seed, actor, critics,
// targets and optimizer states, plus the environment binding. Round-trips
// are bit-exact.
struct AgentCheckpoint {
  sac::SacAgent agent;
  std::string env_id;
  env::DisturbanceMode mode = env::DisturbanceMode::kInternal;
};

void save_agent_checkpoint(const std::string& path, const sac::SacAgent& agent,
                           const std::string& env_id, env::DisturbanceMode mode);
AgentCheckpoint load_agent_checkpoint(const std::string& path);

void save_net(std::ostream& out, const net::ApproxNet& net);
net::ApproxNet load_net(std::istream& in);
void save_adam(std::ostream& out, const net::AdamState& state);
net::AdamState load_adam(std::istream& in);

}  // namespace advsac::io

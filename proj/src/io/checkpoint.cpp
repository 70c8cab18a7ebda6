#include "advsac/io/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "advsac/errors.hpp"

namespace advsac::io {

namespace {

constexpr char kMagic[8] = {'A', 'D', 'V', 'S', 'A', 'C', '0', '1'};

template <typename T>
void write_pod(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw IoError("checkpoint: truncated file");
  return v;
}

void write_string(std::ostream& out, const std::string& s) {
  write_pod<uint32_t>(out, static_cast<uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_string(std::istream& in) {
  const uint32_t n = read_pod<uint32_t>(in);
  if (n > (1u << 20)) throw IoError("checkpoint: implausible string length");
  std::string s(n, '\0');
  in.read(s.data(), n);
  if (!in) throw IoError("checkpoint: truncated string");
  return s;
}

void write_doubles(std::ostream& out, const std::vector<double>& v) {
  write_pod<uint64_t>(out, v.size());
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
}

std::vector<double> read_doubles(std::istream& in) {
  const uint64_t n = read_pod<uint64_t>(in);
  if (n > (1ull << 32)) throw IoError("checkpoint: implausible array length");
  std::vector<double> v(n);
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(double)));
  if (!in) throw IoError("checkpoint: truncated array");
  return v;
}

}  // namespace

void save_net(std::ostream& out, const net::ApproxNet& net) {
  write_pod<uint32_t>(out, static_cast<uint32_t>(net.layer_sizes.size()));
  for (int s : net.layer_sizes) write_pod<int32_t>(out, s);
  write_pod<uint8_t>(out, net.activation == net::Activation::kRelu ? 0 : 1);
  for (int l = 0; l < net.num_layers(); ++l) {
    write_doubles(out, net.weights[l]);
    write_doubles(out, net.biases[l]);
  }
}

net::ApproxNet load_net(std::istream& in) {
  const uint32_t n_sizes = read_pod<uint32_t>(in);
  if (n_sizes < 2 || n_sizes > 64) throw IoError("checkpoint: bad layer count");
  net::ApproxNet net;
  net.layer_sizes.resize(n_sizes);
  for (uint32_t i = 0; i < n_sizes; ++i) net.layer_sizes[i] = read_pod<int32_t>(in);
  net.activation = read_pod<uint8_t>(in) == 0 ? net::Activation::kRelu : net::Activation::kTanh;
  const int layers = static_cast<int>(n_sizes) - 1;
  net.weights.resize(layers);
  net.biases.resize(layers);
  for (int l = 0; l < layers; ++l) {
    net.weights[l] = read_doubles(in);
    net.biases[l] = read_doubles(in);
    const size_t expect_w =
        static_cast<size_t>(net.layer_sizes[l]) * net.layer_sizes[l + 1];
    if (net.weights[l].size() != expect_w ||
        net.biases[l].size() != static_cast<size_t>(net.layer_sizes[l + 1])) {
      throw IoError("checkpoint: parameter array size mismatch");
    }
  }
  return net;
}

void save_adam(std::ostream& out, const net::AdamState& state) {
  write_pod<double>(out, state.config.lr);
  write_pod<double>(out, state.config.beta1);
  write_pod<double>(out, state.config.beta2);
  write_pod<double>(out, state.config.eps);
  write_pod<int64_t>(out, state.step);
  write_pod<uint32_t>(out, static_cast<uint32_t>(state.m_weights.size()));
  for (size_t l = 0; l < state.m_weights.size(); ++l) {
    write_doubles(out, state.m_weights[l]);
    write_doubles(out, state.v_weights[l]);
    write_doubles(out, state.m_biases[l]);
    write_doubles(out, state.v_biases[l]);
  }
}

net::AdamState load_adam(std::istream& in) {
  net::AdamState state;
  state.config.lr = read_pod<double>(in);
  state.config.beta1 = read_pod<double>(in);
  state.config.beta2 = read_pod<double>(in);
  state.config.eps = read_pod<double>(in);
  state.step = read_pod<int64_t>(in);
  const uint32_t layers = read_pod<uint32_t>(in);
  if (layers > 64) throw IoError("checkpoint: bad optimizer layer count");
  state.m_weights.resize(layers);
  state.v_weights.resize(layers);
  state.m_biases.resize(layers);
  state.v_biases.resize(layers);
  for (uint32_t l = 0; l < layers; ++l) {
    state.m_weights[l] = read_doubles(in);
    state.v_weights[l] = read_doubles(in);
    state.m_biases[l] = read_doubles(in);
    state.v_biases[l] = read_doubles(in);
  }
  return state;
}

namespace {

void save_sac_config(std::ostream& out, const sac::SacConfig& cfg) {
  write_pod<double>(out, cfg.gamma);
  write_pod<double>(out, cfg.temperature);
  write_pod<double>(out, cfg.tau);
  write_pod<double>(out, cfg.actor_lr);
  write_pod<double>(out, cfg.critic_lr);
  write_pod<int32_t>(out, cfg.batch_size);
  write_pod<uint8_t>(out, cfg.twin_q ? 1 : 0);
  write_pod<uint8_t>(out, cfg.role == sac::Role::kMaximizer ? 0 : 1);
  write_pod<uint8_t>(out, cfg.activation == net::Activation::kRelu ? 0 : 1);
  write_pod<uint32_t>(out, static_cast<uint32_t>(cfg.hidden.size()));
  for (int h : cfg.hidden) write_pod<int32_t>(out, h);
}

sac::SacConfig load_sac_config(std::istream& in) {
  sac::SacConfig cfg;
  cfg.gamma = read_pod<double>(in);
  cfg.temperature = read_pod<double>(in);
  cfg.tau = read_pod<double>(in);
  cfg.actor_lr = read_pod<double>(in);
  cfg.critic_lr = read_pod<double>(in);
  cfg.batch_size = read_pod<int32_t>(in);
  cfg.twin_q = read_pod<uint8_t>(in) != 0;
  cfg.role = read_pod<uint8_t>(in) == 0 ? sac::Role::kMaximizer : sac::Role::kMinimizer;
  cfg.activation = read_pod<uint8_t>(in) == 0 ? net::Activation::kRelu : net::Activation::kTanh;
  const uint32_t n_hidden = read_pod<uint32_t>(in);
  if (n_hidden > 64) throw IoError("checkpoint: bad hidden layer count");
  cfg.hidden.resize(n_hidden);
  for (uint32_t i = 0; i < n_hidden; ++i) cfg.hidden[i] = read_pod<int32_t>(in);
  return cfg;
}

}  // namespace

void save_agent_checkpoint(const std::string& path, const sac::SacAgent& agent,
                           const std::string& env_id, env::DisturbanceMode mode) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(kMagic, sizeof(kMagic));
  write_string(out, env_id);
  write_pod<uint8_t>(out, mode == env::DisturbanceMode::kInternal ? 0
                          : mode == env::DisturbanceMode::kExternal ? 1
                                                                    : 2);
  save_sac_config(out, agent.config);
  write_pod<int32_t>(out, agent.state_dim);
  write_pod<int32_t>(out, agent.action_dim);
  write_pod<int32_t>(out, agent.goal_dim);
  write_pod<uint64_t>(out, agent.init_seed);
  save_net(out, agent.actor);
  save_adam(out, agent.actor_opt);
  save_net(out, agent.critic);
  save_adam(out, agent.critic_opt);
  save_net(out, agent.target_critic);
  if (agent.config.twin_q) {
    save_net(out, *agent.critic2);
    save_adam(out, *agent.critic2_opt);
    save_net(out, *agent.target_critic2);
  }
  if (!out) throw IoError("write to '" + path + "' failed");
}

AgentCheckpoint load_agent_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint '" + path + "'");
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw IoError("'" + path + "' is not an advsac checkpoint (bad magic)");
  }
  AgentCheckpoint ckpt;
  ckpt.env_id = read_string(in);
  const uint8_t mode = read_pod<uint8_t>(in);
  ckpt.mode = mode == 0   ? env::DisturbanceMode::kInternal
              : mode == 1 ? env::DisturbanceMode::kExternal
                          : env::DisturbanceMode::kNone;
  sac::SacAgent& agent = ckpt.agent;
  agent.config = load_sac_config(in);
  agent.state_dim = read_pod<int32_t>(in);
  agent.action_dim = read_pod<int32_t>(in);
  agent.goal_dim = read_pod<int32_t>(in);
  agent.init_seed = read_pod<uint64_t>(in);
  agent.actor = load_net(in);
  agent.actor_opt = load_adam(in);
  agent.critic = load_net(in);
  agent.critic_opt = load_adam(in);
  agent.target_critic = load_net(in);
  if (agent.config.twin_q) {
    agent.critic2 = load_net(in);
    agent.critic2_opt = load_adam(in);
    agent.target_critic2 = load_net(in);
  }
  return ckpt;
}

}  // namespace advsac::io

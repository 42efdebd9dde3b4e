#include "coflowsim/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace coflowsim {

void NetworkGraph::rebuild_adjacency() {
  adjacency.assign(devices.size(), {});
  for (const Link& link : links) {
    adjacency[static_cast<std::size_t>(link.a)].emplace_back(link.b, link.id);
    adjacency[static_cast<std::size_t>(link.b)].emplace_back(link.a, link.id);
  }
  for (auto& row : adjacency) std::sort(row.begin(), row.end());
}

int NetworkGraph::link_between(int u, int v) const {
  for (const auto& [neighbor, link] : adjacency[static_cast<std::size_t>(u)]) {
    if (neighbor == v) return link;
  }
  return -1;
}

bool NetworkGraph::is_connected() const {
  if (devices.empty()) return false;
  std::vector<char> seen(devices.size(), 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const int cur = frontier.front();
    frontier.pop();
    for (const auto& [neighbor, link] : adjacency[static_cast<std::size_t>(cur)]) {
      (void)link;
      if (!seen[static_cast<std::size_t>(neighbor)]) {
        seen[static_cast<std::size_t>(neighbor)] = 1;
        ++reached;
        frontier.push(neighbor);
      }
    }
  }
  return reached == devices.size();
}

void GeneratorConfig::validate() const {
  if (num_devices < 2) throw std::invalid_argument("config: need at least 2 devices");
  if (num_coflows < 1 || num_coflows >= num_devices) {
    throw std::invalid_argument("config: num_coflows must be in [1, num_devices)");
  }
  if (flows_per_coflow < 1) throw std::invalid_argument("config: flows_per_coflow must be >= 1");
  const int generators = num_devices - num_coflows;
  if (sources_per_flow < 1 || sources_per_flow > generators) {
    throw std::invalid_argument(
        "config: sources_per_flow must be in [1, num_devices - num_coflows]");
  }
  if (mean_bandwidth_mbps <= 0.0 || mean_data_mb <= 0.0 || release_scale <= 0.0) {
    throw std::invalid_argument("config: means and release_scale must be positive");
  }
  if (bandwidth_spread < 0.0 || bandwidth_spread >= 1.0 || data_spread < 0.0 ||
      data_spread >= 1.0) {
    throw std::invalid_argument("config: spreads must lie in [0, 1)");
  }
}

void ProblemInstance::rebuild_index() {
  flow_offset_.clear();
  flows_.clear();
  total_flows_ = 0;
  flow_offset_.reserve(coflows.size());
  for (const Coflow& coflow : coflows) {
    flow_offset_.push_back(total_flows_);
    for (const Flow& flow : coflow.flows) {
      flows_.push_back(&flow);
      ++total_flows_;
    }
  }
}

double connection_radius(int num_devices) {
  return 2.0 * static_cast<double>(num_devices) / 10.0;
}

double mean_release_s(const GeneratorConfig& config) {
  return config.release_scale * config.mean_data_mb / config.mean_bandwidth_mbps;
}

namespace {

constexpr double kFloorFraction = 0.01;  // truncation floor: 1% of the mean

}  // namespace

NetworkGraph generate_network(const GeneratorConfig& config, Rng& rng,
                              int max_attempts) {
  config.validate();
  const int n = config.num_devices;
  const double side = static_cast<double>(n);
  const double radius = connection_radius(n);

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    NetworkGraph network;
    network.devices.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      Device& dev = network.devices[static_cast<std::size_t>(i)];
      dev.id = i;
      dev.x = rng.uniform01() * side;
      dev.y = rng.uniform01() * side;
      dev.kind = i < config.num_coflows ? DeviceKind::Requester : DeviceKind::Generator;
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double dx = network.devices[static_cast<std::size_t>(i)].x -
                          network.devices[static_cast<std::size_t>(j)].x;
        const double dy = network.devices[static_cast<std::size_t>(i)].y -
                          network.devices[static_cast<std::size_t>(j)].y;
        if (std::sqrt(dx * dx + dy * dy) < radius) {
          const int id = static_cast<int>(network.links.size());
          network.links.push_back(Link{id, i, j, 0.0});
        }
      }
    }
    network.rebuild_adjacency();
    if (!network.is_connected()) continue;
    for (Link& link : network.links) {
      link.bandwidth_mbps = rng.truncated_normal(
          config.mean_bandwidth_mbps,
          config.bandwidth_spread * config.mean_bandwidth_mbps,
          kFloorFraction * config.mean_bandwidth_mbps);
    }
    return network;
  }
  throw GenerationError("generate_network: no connected placement after " +
                        std::to_string(max_attempts) +
                        " attempts; the device count is likely too small");
}

ProblemInstance generate_instance(const GeneratorConfig& config) {
  config.validate();
  Rng rng(config.rng_seed);

  ProblemInstance instance;
  instance.config = config;
  instance.network = generate_network(config, rng);

  const int generators = config.num_devices - config.num_coflows;
  const double release_mean = mean_release_s(config);

  instance.coflows.resize(static_cast<std::size_t>(config.num_coflows));
  for (int i = 0; i < config.num_coflows; ++i) {
    Coflow& coflow = instance.coflows[static_cast<std::size_t>(i)];
    coflow.requester = i;
    coflow.flows.resize(static_cast<std::size_t>(config.flows_per_coflow));
    for (int j = 0; j < config.flows_per_coflow; ++j) {
      Flow& flow = coflow.flows[static_cast<std::size_t>(j)];
      flow.coflow = i;
      flow.index = j;
      flow.data_mb = rng.truncated_normal(config.mean_data_mb,
                                          config.data_spread * config.mean_data_mb,
                                          kFloorFraction * config.mean_data_mb);
      const std::vector<int> picks =
          rng.sample_distinct(generators, config.sources_per_flow);
      flow.sources.resize(picks.size());
      for (std::size_t s = 0; s < picks.size(); ++s) {
        SourceOption& option = flow.sources[s];
        option.device = config.num_coflows + picks[s];
        option.release_s = rng.truncated_normal(release_mean, 0.3 * release_mean,
                                                kFloorFraction * release_mean);
        option.path = route(instance.network, option.device, coflow.requester);
      }
    }
  }
  instance.rebuild_index();
  return instance;
}

std::vector<int> route(const NetworkGraph& network, int src, int dst) {
  if (src == dst) throw std::invalid_argument("route: src == dst");
  const std::size_t n = network.devices.size();
  if (src < 0 || dst < 0 || static_cast<std::size_t>(src) >= n ||
      static_cast<std::size_t>(dst) >= n) {
    throw std::invalid_argument("route: device id out of range");
  }

  // Hop counts to dst; then walk from src, always taking the smallest-id
  // neighbor that moves one hop closer.
  std::vector<int> dist(n, -1);
  std::queue<int> frontier;
  dist[static_cast<std::size_t>(dst)] = 0;
  frontier.push(dst);
  while (!frontier.empty()) {
    const int cur = frontier.front();
    frontier.pop();
    for (const auto& [neighbor, link] : network.adjacency[static_cast<std::size_t>(cur)]) {
      (void)link;
      if (dist[static_cast<std::size_t>(neighbor)] < 0) {
        dist[static_cast<std::size_t>(neighbor)] = dist[static_cast<std::size_t>(cur)] + 1;
        frontier.push(neighbor);
      }
    }
  }
  if (dist[static_cast<std::size_t>(src)] < 0) {
    throw std::invalid_argument("route: no path between devices");
  }

  std::vector<int> path;
  path.reserve(static_cast<std::size_t>(dist[static_cast<std::size_t>(src)]));
  int cur = src;
  while (cur != dst) {
    for (const auto& [neighbor, link] : network.adjacency[static_cast<std::size_t>(cur)]) {
      if (dist[static_cast<std::size_t>(neighbor)] == dist[static_cast<std::size_t>(cur)] - 1) {
        path.push_back(link);
        cur = neighbor;
        break;
      }
    }
  }
  return path;
}

double transmission_time_s(const NetworkGraph& network, const Flow& flow,
                           const SourceOption& source, int hop) {
  const int link = source.path[static_cast<std::size_t>(hop)];
  return flow.data_mb / network.links[static_cast<std::size_t>(link)].bandwidth_mbps;
}

double path_transmit_total_s(const NetworkGraph& network, const Flow& flow,
                             const SourceOption& source) {
  double total = 0.0;
  for (int hop = 0; hop < static_cast<int>(source.path.size()); ++hop) {
    total += transmission_time_s(network, flow, source, hop);
  }
  return total;
}

}  // namespace coflowsim

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coflowsim/rng.hpp"

namespace coflowsim {

enum class DeviceKind { Requester, Generator };

struct Device {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  DeviceKind kind = DeviceKind::Generator;
};

/// Undirected link; endpoint ids are stored with a < b.
struct Link {
  int id = 0;
  int a = 0;
  int b = 0;
  double bandwidth_mbps = 0.0;
};

struct NetworkGraph {
  std::vector<Device> devices;
  std::vector<Link> links;
  /// Per device: (neighbor id, link id), sorted by neighbor id.
  std::vector<std::vector<std::pair<int, int>>> adjacency;

  void rebuild_adjacency();
  int link_between(int u, int v) const;  // -1 when the devices are not linked
  bool is_connected() const;
};

/// One candidate origin for a flow: the generator holding the data, its
/// release time, and the routed path (link ids, hop order source -> requester).
struct SourceOption {
  int device = 0;
  double release_s = 0.0;
  std::vector<int> path;
};

struct Flow {
  int coflow = 0;  // owning coflow index
  int index = 0;   // position within the coflow
  double data_mb = 0.0;
  std::vector<SourceOption> sources;
};

struct Coflow {
  int requester = 0;  // destination device id
  std::vector<Flow> flows;
};

struct GeneratorConfig {
  int num_devices = 40;
  int num_coflows = 20;
  int flows_per_coflow = 3;
  int sources_per_flow = 3;
  double mean_bandwidth_mbps = 20.0;
  double bandwidth_spread = 0.3;  // standard deviation as a fraction of the mean
  double mean_data_mb = 2.0;
  double data_spread = 0.3;
  double release_scale = 1.0;  // scales the mean release time
  std::uint64_t rng_seed = 1;

  void validate() const;  // throws std::invalid_argument
};

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProblemInstance {
  NetworkGraph network;
  std::vector<Coflow> coflows;
  GeneratorConfig config;  // echo of the generating config

  int total_flows() const { return total_flows_; }
  int flow_index(int coflow, int flow) const {
    return flow_offset_[static_cast<std::size_t>(coflow)] + flow;
  }
  const Flow& flow_at(int global) const {
    return *flows_[static_cast<std::size_t>(global)];
  }
  /// Must be called after coflows are filled or modified.
  void rebuild_index();

 private:
  std::vector<int> flow_offset_;
  std::vector<const Flow*> flows_;
  int total_flows_ = 0;
};

/// Devices closer than this are linked at generation time.
double connection_radius(int num_devices);

/// Mean of the release-time distribution implied by a config.
double mean_release_s(const GeneratorConfig& config);

/// Random geometric mesh: uniform placement in a num_devices-sized square,
/// links below the connection radius, truncated-normal bandwidths. Placements
/// are redrawn from the same stream until the graph is connected. Connected
/// placements are rare below ~25 devices (the coverage fraction is constant
/// while the connectivity threshold grows with log n), hence the large
/// attempt bound.
NetworkGraph generate_network(const GeneratorConfig& config, Rng& rng,
                              int max_attempts = 200000);

ProblemInstance generate_instance(const GeneratorConfig& config);

/// Minimum-hop path from src to dst as an ordered list of link ids. Ties are
/// broken toward the smallest next-device id, so routes are stable for a
/// given graph.
std::vector<int> route(const NetworkGraph& network, int src, int dst);

/// Seconds to push the flow's data across the link at `hop` (0-based) of the
/// given source option.
double transmission_time_s(const NetworkGraph& network, const Flow& flow,
                           const SourceOption& source, int hop);

/// Total transmission seconds along the option's full path.
double path_transmit_total_s(const NetworkGraph& network, const Flow& flow,
                             const SourceOption& source);

}  // namespace coflowsim

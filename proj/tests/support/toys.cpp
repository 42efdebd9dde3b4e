#include "support/toys.hpp"

#include <stdexcept>

namespace coflowsim::tests {

NetworkGraph make_network(int num_devices, int num_requesters,
                          const std::vector<std::tuple<int, int, double>>& links) {
  NetworkGraph network;
  network.devices.resize(static_cast<std::size_t>(num_devices));
  for (int i = 0; i < num_devices; ++i) {
    Device& device = network.devices[static_cast<std::size_t>(i)];
    device.id = i;
    device.x = static_cast<double>(i);
    device.y = 0.0;
    device.kind = i < num_requesters ? DeviceKind::Requester : DeviceKind::Generator;
  }
  for (const auto& [u, v, bandwidth] : links) {
    Link link;
    link.id = static_cast<int>(network.links.size());
    link.a = std::min(u, v);
    link.b = std::max(u, v);
    link.bandwidth_mbps = bandwidth;
    network.links.push_back(link);
  }
  network.rebuild_adjacency();
  return network;
}

SourceOption make_option(const NetworkGraph& network, double release_s,
                         const std::vector<int>& path_devices) {
  SourceOption option;
  option.device = path_devices.front();
  option.release_s = release_s;
  for (std::size_t i = 0; i + 1 < path_devices.size(); ++i) {
    const int link = network.link_between(path_devices[i], path_devices[i + 1]);
    if (link < 0) throw std::logic_error("toy fixture path uses a missing link");
    option.path.push_back(link);
  }
  return option;
}

Flow make_flow(int coflow, int index, double data_mb,
               std::vector<SourceOption> sources) {
  Flow flow;
  flow.coflow = coflow;
  flow.index = index;
  flow.data_mb = data_mb;
  flow.sources = std::move(sources);
  return flow;
}

void finalize(ProblemInstance& instance) { instance.rebuild_index(); }

PriorityOrder identity_priority(const ProblemInstance& instance) {
  PriorityOrder priority;
  priority.order.resize(static_cast<std::size_t>(instance.total_flows()));
  for (int f = 0; f < instance.total_flows(); ++f) {
    priority.order[static_cast<std::size_t>(f)] = f;
  }
  return priority;
}

SourceSelection zero_sources(const ProblemInstance& instance) {
  SourceSelection sources;
  sources.chosen.assign(static_cast<std::size_t>(instance.total_flows()), 0);
  return sources;
}

ProblemInstance relay_pair_instance() {
  // r0=0, r1=1, m=2, g=3; 10 Mbps everywhere, 1 Mb flows -> 0.1 s per hop.
  ProblemInstance instance;
  instance.network = make_network(4, 2, {{3, 2, 10.0}, {2, 0, 10.0}, {2, 1, 10.0}});
  instance.coflows.resize(2);
  instance.coflows[0].requester = 0;
  instance.coflows[0].flows.push_back(
      make_flow(0, 0, 1.0, {make_option(instance.network, 0.0, {3, 2, 0})}));
  instance.coflows[1].requester = 1;
  instance.coflows[1].flows.push_back(
      make_flow(1, 0, 1.0, {make_option(instance.network, 0.0, {3, 2, 1})}));
  finalize(instance);
  return instance;
}

ProblemInstance collide_instance() {
  // r0=0, r1=1, m=2, gA=3, gB0=4, gB1=5. gA paths run through m at 0.1 s per
  // hop (rank 0.2); the dedicated one-hop alternatives cost 0.25 s.
  ProblemInstance instance;
  instance.network = make_network(6, 2,
                                  {{3, 2, 10.0},
                                   {2, 0, 10.0},
                                   {2, 1, 10.0},
                                   {4, 0, 4.0},
                                   {5, 1, 4.0}});
  instance.coflows.resize(2);
  instance.coflows[0].requester = 0;
  instance.coflows[0].flows.push_back(
      make_flow(0, 0, 1.0,
                {make_option(instance.network, 0.0, {3, 2, 0}),
                 make_option(instance.network, 0.0, {4, 0})}));
  instance.coflows[1].requester = 1;
  instance.coflows[1].flows.push_back(
      make_flow(1, 0, 1.0,
                {make_option(instance.network, 0.0, {3, 2, 1}),
                 make_option(instance.network, 0.0, {5, 1})}));
  finalize(instance);
  return instance;
}

ProblemInstance reorder_win_instance() {
  // r0=0, r1=1, m=2, g=3; unit bandwidth. Flow A: release 10, 1 Mb. Flow B:
  // release 0, 11.5 Mb. Ranks order (A, B) at 46 s; (B, A) reaches 36.5 s.
  ProblemInstance instance;
  instance.network = make_network(4, 2, {{3, 2, 1.0}, {2, 0, 1.0}, {2, 1, 1.0}});
  instance.coflows.resize(2);
  instance.coflows[0].requester = 0;
  instance.coflows[0].flows.push_back(
      make_flow(0, 0, 1.0, {make_option(instance.network, 10.0, {3, 2, 0})}));
  instance.coflows[1].requester = 1;
  instance.coflows[1].flows.push_back(
      make_flow(1, 0, 11.5, {make_option(instance.network, 0.0, {3, 2, 1})}));
  finalize(instance);
  return instance;
}

ProblemInstance dumbbell_instance(const std::vector<double>& data_mb) {
  const int k = static_cast<int>(data_mb.size());
  // requesters 0..k-1, a=k, b=k+1, g=k+2; unit bandwidth.
  std::vector<std::tuple<int, int, double>> links;
  for (int i = 0; i < k; ++i) links.emplace_back(k, i, 1.0);
  links.emplace_back(k + 1, k, 1.0);
  links.emplace_back(k + 2, k + 1, 1.0);
  ProblemInstance instance;
  instance.network = make_network(k + 3, k, links);
  instance.coflows.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    instance.coflows[static_cast<std::size_t>(i)].requester = i;
    instance.coflows[static_cast<std::size_t>(i)].flows.push_back(
        make_flow(i, 0, data_mb[static_cast<std::size_t>(i)],
                  {make_option(instance.network, 0.0, {k + 2, k + 1, k, i})}));
  }
  finalize(instance);
  return instance;
}

ProblemInstance chain_instance(const std::vector<double>& hop_s, double release_s) {
  // Line r=0 .. g=n; 1 Mb flow, bandwidths set so hop h costs hop_s[h].
  const int hops = static_cast<int>(hop_s.size());
  std::vector<std::tuple<int, int, double>> links;
  for (int h = 0; h < hops; ++h) {
    // Path runs g -> ... -> r, so hop h uses the link (hops - h, hops - h - 1).
    links.emplace_back(hops - h, hops - h - 1, 1.0 / hop_s[static_cast<std::size_t>(h)]);
  }
  ProblemInstance instance;
  instance.network = make_network(hops + 1, 1, links);
  instance.coflows.resize(1);
  instance.coflows[0].requester = 0;
  std::vector<int> path_devices;
  for (int d = hops; d >= 0; --d) path_devices.push_back(d);
  instance.coflows[0].flows.push_back(
      make_flow(0, 0, 1.0, {make_option(instance.network, release_s, path_devices)}));
  finalize(instance);
  return instance;
}

}  // namespace coflowsim::tests

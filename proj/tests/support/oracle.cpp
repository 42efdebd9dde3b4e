#include "support/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <vector>

namespace coflowsim::tests {

namespace {

struct SimSubflow {
  int flow = 0;
  int hop = 0;
  int link = 0;
  double transmit_s = 0.0;
};

}  // namespace

double des_sum_cct(const ProblemInstance& instance, const SourceSelection& sources,
                   const PriorityOrder& priority) {
  const int total_flows = instance.total_flows();
  const std::vector<int> rank = priority.ranks();

  std::vector<SimSubflow> subflows;
  std::vector<int> first_subflow(static_cast<std::size_t>(total_flows), 0);
  std::vector<int> hop_count(static_cast<std::size_t>(total_flows), 0);
  std::vector<double> release(static_cast<std::size_t>(total_flows), 0.0);
  for (int f = 0; f < total_flows; ++f) {
    const Flow& flow = instance.flow_at(f);
    const SourceOption& option =
        flow.sources[static_cast<std::size_t>(sources.chosen[static_cast<std::size_t>(f)])];
    first_subflow[static_cast<std::size_t>(f)] = static_cast<int>(subflows.size());
    hop_count[static_cast<std::size_t>(f)] = static_cast<int>(option.path.size());
    release[static_cast<std::size_t>(f)] = option.release_s;
    for (int hop = 0; hop < static_cast<int>(option.path.size()); ++hop) {
      subflows.push_back({f, hop, option.path[static_cast<std::size_t>(hop)],
                          transmission_time_s(instance.network, flow, option, hop)});
    }
  }
  const int total_subflows = static_cast<int>(subflows.size());

  // Subflows per link, higher priority first; a subflow may only start once
  // everything before it on its link has finished.
  std::vector<std::vector<int>> queue_on_link(instance.network.links.size());
  for (int v = 0; v < total_subflows; ++v) {
    queue_on_link[static_cast<std::size_t>(subflows[static_cast<std::size_t>(v)].link)]
        .push_back(v);
  }
  for (auto& members : queue_on_link) {
    std::sort(members.begin(), members.end(), [&](int lhs, int rhs) {
      const int rl = rank[static_cast<std::size_t>(subflows[static_cast<std::size_t>(lhs)].flow)];
      const int rr = rank[static_cast<std::size_t>(subflows[static_cast<std::size_t>(rhs)].flow)];
      if (rl != rr) return rl < rr;
      return subflows[static_cast<std::size_t>(lhs)].hop <
             subflows[static_cast<std::size_t>(rhs)].hop;
    });
  }

  // Start scan order: by flow priority, hops ascending.
  std::vector<int> scan_order(static_cast<std::size_t>(total_subflows));
  std::iota(scan_order.begin(), scan_order.end(), 0);
  std::sort(scan_order.begin(), scan_order.end(), [&](int lhs, int rhs) {
    const int rl = rank[static_cast<std::size_t>(subflows[static_cast<std::size_t>(lhs)].flow)];
    const int rr = rank[static_cast<std::size_t>(subflows[static_cast<std::size_t>(rhs)].flow)];
    if (rl != rr) return rl < rr;
    return subflows[static_cast<std::size_t>(lhs)].hop <
           subflows[static_cast<std::size_t>(rhs)].hop;
  });

  constexpr double kUnset = -1.0;
  std::vector<double> finish(static_cast<std::size_t>(total_subflows), kUnset);
  std::vector<double> link_busy_until(instance.network.links.size(), 0.0);
  std::priority_queue<double, std::vector<double>, std::greater<double>> events;
  events.push(0.0);
  for (int f = 0; f < total_flows; ++f) events.push(release[static_cast<std::size_t>(f)]);

  int remaining = total_subflows;
  double clock = -std::numeric_limits<double>::infinity();
  while (remaining > 0) {
    if (events.empty()) {
      throw std::logic_error("des_sum_cct: simulation stalled");
    }
    double next = events.top();
    events.pop();
    while (!events.empty() && events.top() == next) events.pop();
    if (next <= clock) continue;
    clock = next;

    for (int v : scan_order) {
      if (finish[static_cast<std::size_t>(v)] != kUnset) continue;
      const SimSubflow& sub = subflows[static_cast<std::size_t>(v)];
      // Previous hop done (or released for hop 0).
      if (sub.hop == 0) {
        if (release[static_cast<std::size_t>(sub.flow)] > clock) continue;
      } else {
        const double prev = finish[static_cast<std::size_t>(v - 1)];
        if (prev == kUnset || prev > clock) continue;
      }
      // Everything ahead in the link queue done.
      bool blocked = false;
      for (int ahead : queue_on_link[static_cast<std::size_t>(sub.link)]) {
        if (ahead == v) break;
        const double f = finish[static_cast<std::size_t>(ahead)];
        if (f == kUnset || f > clock) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      // Link idle.
      if (link_busy_until[static_cast<std::size_t>(sub.link)] > clock) continue;

      const double done = clock + sub.transmit_s;
      finish[static_cast<std::size_t>(v)] = done;
      link_busy_until[static_cast<std::size_t>(sub.link)] = done;
      events.push(done);
      --remaining;
    }
  }

  std::vector<double> cct(instance.coflows.size(), 0.0);
  for (int f = 0; f < total_flows; ++f) {
    const int last =
        first_subflow[static_cast<std::size_t>(f)] + hop_count[static_cast<std::size_t>(f)] - 1;
    const int coflow = instance.flow_at(f).coflow;
    cct[static_cast<std::size_t>(coflow)] =
        std::max(cct[static_cast<std::size_t>(coflow)],
                 finish[static_cast<std::size_t>(last)]);
  }
  double sum = 0.0;
  for (double value : cct) sum += value;
  return sum;
}

BruteForceResult brute_force_min(
    const ProblemInstance& instance,
    const std::function<double(const ProblemInstance&, const SourceSelection&,
                               const PriorityOrder&)>& objective) {
  const int total_flows = instance.total_flows();
  BruteForceResult best;
  best.best_sum_cct_s = std::numeric_limits<double>::infinity();

  SourceSelection sources;
  sources.chosen.assign(static_cast<std::size_t>(total_flows), 0);
  while (true) {
    PriorityOrder priority;
    priority.order.resize(static_cast<std::size_t>(total_flows));
    std::iota(priority.order.begin(), priority.order.end(), 0);
    do {
      const double sum = objective(instance, sources, priority);
      if (sum < best.best_sum_cct_s) {
        best.best_sum_cct_s = sum;
        best.sources = sources;
        best.priority = priority;
      }
    } while (std::next_permutation(priority.order.begin(), priority.order.end()));

    // Odometer over source assignments.
    int f = 0;
    for (; f < total_flows; ++f) {
      const int options = static_cast<int>(instance.flow_at(f).sources.size());
      if (sources.chosen[static_cast<std::size_t>(f)] + 1 < options) {
        ++sources.chosen[static_cast<std::size_t>(f)];
        break;
      }
      sources.chosen[static_cast<std::size_t>(f)] = 0;
    }
    if (f == total_flows) break;
  }
  return best;
}

}  // namespace coflowsim::tests

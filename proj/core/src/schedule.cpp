#include "coflowsim/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace coflowsim {

namespace {

constexpr double kEps = 1e-9;

std::string describe_subflow(const ProblemInstance& instance, int flow, int hop) {
  const Flow& f = instance.flow_at(flow);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "coflow %d flow %d hop %d", f.coflow, f.index, hop);
  return buf;
}

}  // namespace

std::vector<int> PriorityOrder::ranks() const {
  std::vector<int> rank(order.size(), 0);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    rank[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos);
  }
  return rank;
}

bool OrderGraph::is_chain_edge(const Edge& e) const {
  if (e.from == release_vertex || e.to == release_vertex) return false;
  return vertices[static_cast<std::size_t>(e.from)].flow ==
         vertices[static_cast<std::size_t>(e.to)].flow;
}

OrderGraph build_order_graph(const ProblemInstance& instance,
                             const SourceSelection& sources,
                             const PriorityOrder& priority) {
  const int total_flows = instance.total_flows();
  OrderGraph graph;
  graph.num_coflows = static_cast<int>(instance.coflows.size());
  graph.subflow_offset.resize(static_cast<std::size_t>(total_flows));
  graph.coflow_of_flow.resize(static_cast<std::size_t>(total_flows));

  int vertex_count = 0;
  for (int f = 0; f < total_flows; ++f) {
    const Flow& flow = instance.flow_at(f);
    const SourceOption& option =
        flow.sources[static_cast<std::size_t>(sources.chosen[static_cast<std::size_t>(f)])];
    graph.subflow_offset[static_cast<std::size_t>(f)] = vertex_count;
    graph.coflow_of_flow[static_cast<std::size_t>(f)] = flow.coflow;
    vertex_count += static_cast<int>(option.path.size());
  }
  graph.vertices.resize(static_cast<std::size_t>(vertex_count));
  graph.release_vertex = vertex_count;

  const std::vector<int> rank = priority.ranks();

  // Subflow vertices, release edges, and hop-chain edges.
  for (int f = 0; f < total_flows; ++f) {
    const Flow& flow = instance.flow_at(f);
    const SourceOption& option =
        flow.sources[static_cast<std::size_t>(sources.chosen[static_cast<std::size_t>(f)])];
    const int base = graph.subflow_offset[static_cast<std::size_t>(f)];
    for (int hop = 0; hop < static_cast<int>(option.path.size()); ++hop) {
      OrderGraph::Vertex& vertex = graph.vertices[static_cast<std::size_t>(base + hop)];
      vertex.flow = f;
      vertex.hop = hop;
      vertex.link = option.path[static_cast<std::size_t>(hop)];
      vertex.transmit_s = transmission_time_s(instance.network, flow, option, hop);
      if (hop == 0) {
        graph.edges.push_back({graph.release_vertex, base, option.release_s});
      } else {
        graph.edges.push_back(
            {base + hop - 1, base + hop,
             graph.vertices[static_cast<std::size_t>(base + hop - 1)].transmit_s});
      }
    }
  }

  // Ordering edges: on every physical link, each pair of subflows there gets
  // one edge, oriented from the higher-priority flow to the lower. Hop chains
  // only ever point forward, so the graph is acyclic by construction.
  std::vector<std::vector<int>> on_link(instance.network.links.size());
  for (int v = 0; v < vertex_count; ++v) {
    on_link[static_cast<std::size_t>(graph.vertices[static_cast<std::size_t>(v)].link)]
        .push_back(v);
  }
  for (auto& members : on_link) {
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end(), [&](int lhs, int rhs) {
      return rank[static_cast<std::size_t>(graph.vertices[static_cast<std::size_t>(lhs)].flow)] <
             rank[static_cast<std::size_t>(graph.vertices[static_cast<std::size_t>(rhs)].flow)];
    });
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        graph.edges.push_back(
            {members[i], members[j],
             graph.vertices[static_cast<std::size_t>(members[i])].transmit_s});
      }
    }
  }
  return graph;
}

EvaluatedSchedule calculate_cct(const OrderGraph& graph) {
  const int vertex_count = static_cast<int>(graph.vertices.size());
  const int total = vertex_count + 1;  // + release vertex

  std::vector<int> indegree(static_cast<std::size_t>(total), 0);
  std::vector<std::vector<std::pair<int, double>>> out(static_cast<std::size_t>(total));
  for (const OrderGraph::Edge& edge : graph.edges) {
    out[static_cast<std::size_t>(edge.from)].emplace_back(edge.to, edge.weight_s);
    ++indegree[static_cast<std::size_t>(edge.to)];
  }

  EvaluatedSchedule result;
  result.start_s.assign(static_cast<std::size_t>(vertex_count), 0.0);
  result.finish_s.assign(static_cast<std::size_t>(vertex_count), 0.0);

  // Kahn's algorithm; start(v) = max over predecessors p of start(p) + w(p,v).
  std::vector<double> start(static_cast<std::size_t>(total), 0.0);
  std::vector<int> ready;
  ready.reserve(static_cast<std::size_t>(total));
  for (int v = 0; v < total; ++v) {
    if (indegree[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  }
  int processed = 0;
  while (!ready.empty()) {
    const int v = ready.back();
    ready.pop_back();
    ++processed;
    for (const auto& [next, weight] : out[static_cast<std::size_t>(v)]) {
      start[static_cast<std::size_t>(next)] = std::max(
          start[static_cast<std::size_t>(next)], start[static_cast<std::size_t>(v)] + weight);
      if (--indegree[static_cast<std::size_t>(next)] == 0) ready.push_back(next);
    }
  }
  if (processed != total) {
    throw std::invalid_argument("calculate_cct: ordering graph has a cycle");
  }

  for (int v = 0; v < vertex_count; ++v) {
    result.start_s[static_cast<std::size_t>(v)] = start[static_cast<std::size_t>(v)];
    result.finish_s[static_cast<std::size_t>(v)] =
        start[static_cast<std::size_t>(v)] +
        graph.vertices[static_cast<std::size_t>(v)].transmit_s;
  }

  const int total_flows = static_cast<int>(graph.subflow_offset.size());
  result.fct_s.assign(static_cast<std::size_t>(total_flows), 0.0);
  for (int v = 0; v < vertex_count; ++v) {
    const int flow = graph.vertices[static_cast<std::size_t>(v)].flow;
    result.fct_s[static_cast<std::size_t>(flow)] =
        std::max(result.fct_s[static_cast<std::size_t>(flow)],
                 result.finish_s[static_cast<std::size_t>(v)]);
  }
  result.cct_s.assign(static_cast<std::size_t>(graph.num_coflows), 0.0);
  for (int f = 0; f < total_flows; ++f) {
    const int coflow = graph.coflow_of_flow[static_cast<std::size_t>(f)];
    result.cct_s[static_cast<std::size_t>(coflow)] =
        std::max(result.cct_s[static_cast<std::size_t>(coflow)],
                 result.fct_s[static_cast<std::size_t>(f)]);
  }
  result.sum_cct_s = 0.0;
  for (double cct : result.cct_s) result.sum_cct_s += cct;
  return result;
}

EvaluatedSchedule evaluate(const ProblemInstance& instance,
                           const SourceSelection& sources,
                           const PriorityOrder& priority) {
  return calculate_cct(build_order_graph(instance, sources, priority));
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::LinkOverlap: return "link-overlap";
    case ViolationKind::HopChain: return "hop-chain";
    case ViolationKind::FirstHopRelease: return "first-hop-release";
    case ViolationKind::FlowCompletion: return "flow-completion";
    case ViolationKind::CoflowCompletion: return "coflow-completion";
    case ViolationKind::ObjectiveSum: return "objective-sum";
    case ViolationKind::SourceChoice: return "source-choice";
    case ViolationKind::OrderAntisymmetry: return "order-antisymmetry";
  }
  return "unknown";
}

std::vector<Violation> validate(const ProblemInstance& instance,
                                const SourceSelection& sources,
                                const EvaluatedSchedule& evaluated) {
  std::vector<Violation> report;
  const int total_flows = instance.total_flows();

  // Exactly one valid source per flow.
  if (static_cast<int>(sources.chosen.size()) != total_flows) {
    report.push_back({ViolationKind::SourceChoice,
                      "source selection does not cover every flow"});
    return report;
  }
  for (int f = 0; f < total_flows; ++f) {
    const Flow& flow = instance.flow_at(f);
    const int s = sources.chosen[static_cast<std::size_t>(f)];
    if (s < 0 || s >= static_cast<int>(flow.sources.size())) {
      report.push_back({ViolationKind::SourceChoice,
                        "invalid source index for " + describe_subflow(instance, f, 0)});
      return report;
    }
  }

  // Canonical subflow layout implied by the chosen sources.
  std::vector<int> offset(static_cast<std::size_t>(total_flows), 0);
  int vertex_count = 0;
  for (int f = 0; f < total_flows; ++f) {
    const Flow& flow = instance.flow_at(f);
    offset[static_cast<std::size_t>(f)] = vertex_count;
    vertex_count += static_cast<int>(
        flow.sources[static_cast<std::size_t>(sources.chosen[static_cast<std::size_t>(f)])]
            .path.size());
  }
  if (static_cast<int>(evaluated.start_s.size()) != vertex_count ||
      static_cast<int>(evaluated.finish_s.size()) != vertex_count) {
    report.push_back({ViolationKind::SourceChoice,
                      "evaluated schedule does not cover every subflow"});
    return report;
  }

  // Hop chains and first-hop release.
  for (int f = 0; f < total_flows; ++f) {
    const Flow& flow = instance.flow_at(f);
    const SourceOption& option =
        flow.sources[static_cast<std::size_t>(sources.chosen[static_cast<std::size_t>(f)])];
    const int base = offset[static_cast<std::size_t>(f)];
    const double first_cost = transmission_time_s(instance.network, flow, option, 0);
    if (evaluated.finish_s[static_cast<std::size_t>(base)] + kEps <
        option.release_s + first_cost) {
      report.push_back({ViolationKind::FirstHopRelease,
                        describe_subflow(instance, f, 0) + " finishes before release + cost"});
    }
    for (int hop = 1; hop < static_cast<int>(option.path.size()); ++hop) {
      const double cost = transmission_time_s(instance.network, flow, option, hop);
      if (evaluated.finish_s[static_cast<std::size_t>(base + hop)] + kEps <
          evaluated.finish_s[static_cast<std::size_t>(base + hop - 1)] + cost) {
        report.push_back({ViolationKind::HopChain,
                          describe_subflow(instance, f, hop) +
                              " finishes before previous hop + cost"});
      }
    }
  }

  // Link exclusivity and pairwise orientation.
  std::vector<std::vector<std::pair<int, int>>> on_link(instance.network.links.size());
  for (int f = 0; f < total_flows; ++f) {
    const Flow& flow = instance.flow_at(f);
    const SourceOption& option =
        flow.sources[static_cast<std::size_t>(sources.chosen[static_cast<std::size_t>(f)])];
    for (int hop = 0; hop < static_cast<int>(option.path.size()); ++hop) {
      on_link[static_cast<std::size_t>(option.path[static_cast<std::size_t>(hop)])]
          .emplace_back(f, hop);
    }
  }
  for (const auto& members : on_link) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const auto [fa, ha] = members[i];
        const auto [fb, hb] = members[j];
        if (fa == fb) continue;  // a flow never conflicts with itself
        const double start_a = evaluated.start_s[static_cast<std::size_t>(
            offset[static_cast<std::size_t>(fa)] + ha)];
        const double finish_a = evaluated.finish_s[static_cast<std::size_t>(
            offset[static_cast<std::size_t>(fa)] + ha)];
        const double start_b = evaluated.start_s[static_cast<std::size_t>(
            offset[static_cast<std::size_t>(fb)] + hb)];
        const double finish_b = evaluated.finish_s[static_cast<std::size_t>(
            offset[static_cast<std::size_t>(fb)] + hb)];
        const bool a_first = finish_a <= start_b + kEps;
        const bool b_first = finish_b <= start_a + kEps;
        if (!a_first && !b_first) {
          report.push_back({ViolationKind::LinkOverlap,
                            describe_subflow(instance, fa, ha) + " overlaps " +
                                describe_subflow(instance, fb, hb)});
        } else if (a_first && b_first) {
          report.push_back({ViolationKind::OrderAntisymmetry,
                            describe_subflow(instance, fa, ha) + " and " +
                                describe_subflow(instance, fb, hb) +
                                " precede each other"});
        }
      }
    }
  }

  // Completion-time consistency.
  if (static_cast<int>(evaluated.fct_s.size()) != total_flows ||
      evaluated.cct_s.size() != instance.coflows.size()) {
    report.push_back({ViolationKind::FlowCompletion,
                      "completion-time vectors do not match the instance"});
    return report;
  }
  for (int f = 0; f < total_flows; ++f) {
    const Flow& flow = instance.flow_at(f);
    const SourceOption& option =
        flow.sources[static_cast<std::size_t>(sources.chosen[static_cast<std::size_t>(f)])];
    const int base = offset[static_cast<std::size_t>(f)];
    for (int hop = 0; hop < static_cast<int>(option.path.size()); ++hop) {
      if (evaluated.fct_s[static_cast<std::size_t>(f)] + kEps <
          evaluated.finish_s[static_cast<std::size_t>(base + hop)]) {
        report.push_back({ViolationKind::FlowCompletion,
                          describe_subflow(instance, f, hop) + " finishes after the FCT"});
      }
    }
    if (evaluated.cct_s[static_cast<std::size_t>(flow.coflow)] + kEps <
        evaluated.fct_s[static_cast<std::size_t>(f)]) {
      report.push_back({ViolationKind::CoflowCompletion,
                        "flow completes after its coflow's CCT (" +
                            describe_subflow(instance, f, 0) + ")"});
    }
  }
  double sum = 0.0;
  for (double cct : evaluated.cct_s) sum += cct;
  if (std::abs(sum - evaluated.sum_cct_s) > kEps) {
    report.push_back({ViolationKind::ObjectiveSum,
                      "sum_cct does not equal the sum of per-coflow CCTs"});
  }
  return report;
}

}  // namespace coflowsim

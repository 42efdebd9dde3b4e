#pragma once

#include <string>
#include <vector>

#include "coflowsim/instance.hpp"

namespace coflowsim {

/// Chosen source option per flow, indexed by global flow id.
struct SourceSelection {
  std::vector<int> chosen;
};

/// Total order over all flows; order[0] has the highest priority. Every
/// per-link ordering is induced from this permutation: where two flows share
/// a link, the one earlier in the order transmits first.
struct PriorityOrder {
  std::vector<int> order;  // global flow ids

  /// rank[flow] = position in the order (0 = highest priority).
  std::vector<int> ranks() const;
};

/// Directed acyclic graph over subflows (one vertex per flow x hop under the
/// chosen sources) plus a release vertex. Edge semantics: the head may start
/// only once start(tail) + weight has elapsed, so chain and ordering edges
/// carry the tail subflow's transmission time and release edges carry the
/// flow's release time.
struct OrderGraph {
  struct Vertex {
    int flow = 0;  // global flow id
    int hop = 0;   // 0-based hop along the chosen path
    int link = 0;  // physical link id at this hop
    double transmit_s = 0.0;
  };
  struct Edge {
    int from = 0;
    int to = 0;
    double weight_s = 0.0;
  };

  std::vector<Vertex> vertices;  // flow-major, hop-minor
  int release_vertex = 0;        // == vertices.size()
  std::vector<Edge> edges;

  std::vector<int> subflow_offset;   // per global flow: id of its hop-0 vertex
  std::vector<int> coflow_of_flow;   // per global flow
  int num_coflows = 0;

  int vertex_of(int flow, int hop) const {
    return subflow_offset[static_cast<std::size_t>(flow)] + hop;
  }
  bool is_chain_edge(const Edge& e) const;
  bool is_release_edge(const Edge& e) const { return e.from == release_vertex; }
  bool is_ordering_edge(const Edge& e) const {
    return !is_release_edge(e) && !is_chain_edge(e);
  }
};

struct EvaluatedSchedule {
  std::vector<double> start_s;   // per subflow vertex, canonical order
  std::vector<double> finish_s;  // per subflow vertex
  std::vector<double> fct_s;     // per global flow
  std::vector<double> cct_s;     // per coflow
  double sum_cct_s = 0.0;
};

/// A schedule together with its evaluation.
struct SolvedSchedule {
  SourceSelection sources;
  PriorityOrder priority;
  EvaluatedSchedule eval;
};

OrderGraph build_order_graph(const ProblemInstance& instance,
                             const SourceSelection& sources,
                             const PriorityOrder& priority);

/// Longest-path pass over the order graph in topological order; throws
/// std::invalid_argument if the graph has a cycle (corrupted ordering).
EvaluatedSchedule calculate_cct(const OrderGraph& graph);

/// build_order_graph + calculate_cct.
EvaluatedSchedule evaluate(const ProblemInstance& instance,
                           const SourceSelection& sources,
                           const PriorityOrder& priority);

enum class ViolationKind {
  LinkOverlap,        // two subflows occupy one link at the same time
  HopChain,           // a hop finishes before the previous hop plus its cost
  FirstHopRelease,    // first hop finishes before release + first-hop cost
  FlowCompletion,     // FCT below the finish time of some hop
  CoflowCompletion,   // CCT below the completion time of some flow
  ObjectiveSum,       // sum_cct does not match the per-coflow values
  SourceChoice,       // not exactly one valid source per flow
  OrderAntisymmetry,  // a shared-link pair cannot be oriented
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

/// Checks a (possibly hand-built) evaluated schedule against the feasibility
/// constraints. Empty report means feasible; infeasibility is reported, never
/// thrown.
std::vector<Violation> validate(const ProblemInstance& instance,
                                const SourceSelection& sources,
                                const EvaluatedSchedule& evaluated);

}  // namespace coflowsim

#include "coflowsim/scasa.hpp"

#include <algorithm>
#include <limits>

namespace coflowsim {

double rank_with_source(const ProblemInstance& instance, int flow, int source) {
  const Flow& f = instance.flow_at(flow);
  const SourceOption& option = f.sources[static_cast<std::size_t>(source)];
  return option.release_s + path_transmit_total_s(instance.network, f, option);
}

RankTable compute_ranks(const ProblemInstance& instance) {
  const int total_flows = instance.total_flows();
  RankTable table;
  table.frank.resize(static_cast<std::size_t>(total_flows));
  table.argmin_source.resize(static_cast<std::size_t>(total_flows));
  table.crank.assign(instance.coflows.size(), 0.0);

  for (int f = 0; f < total_flows; ++f) {
    const Flow& flow = instance.flow_at(f);
    double best = std::numeric_limits<double>::infinity();
    int best_source = 0;
    for (int s = 0; s < static_cast<int>(flow.sources.size()); ++s) {
      const double value = rank_with_source(instance, f, s);
      if (value < best) {
        best = value;
        best_source = s;
      }
    }
    table.frank[static_cast<std::size_t>(f)] = best;
    table.argmin_source[static_cast<std::size_t>(f)] = best_source;
    table.crank[static_cast<std::size_t>(flow.coflow)] =
        std::max(table.crank[static_cast<std::size_t>(flow.coflow)], best);
  }
  return table;
}

PriorityOrder rank_priority(const ProblemInstance& instance,
                            const std::vector<double>& frank) {
  const int num_coflows = static_cast<int>(instance.coflows.size());
  std::vector<double> crank(static_cast<std::size_t>(num_coflows), 0.0);
  for (int f = 0; f < instance.total_flows(); ++f) {
    const int coflow = instance.flow_at(f).coflow;
    crank[static_cast<std::size_t>(coflow)] = std::max(
        crank[static_cast<std::size_t>(coflow)], frank[static_cast<std::size_t>(f)]);
  }

  std::vector<int> coflow_order(static_cast<std::size_t>(num_coflows));
  for (int i = 0; i < num_coflows; ++i) coflow_order[static_cast<std::size_t>(i)] = i;
  std::sort(coflow_order.begin(), coflow_order.end(), [&](int lhs, int rhs) {
    if (crank[static_cast<std::size_t>(lhs)] != crank[static_cast<std::size_t>(rhs)]) {
      return crank[static_cast<std::size_t>(lhs)] < crank[static_cast<std::size_t>(rhs)];
    }
    return lhs < rhs;
  });

  PriorityOrder priority;
  priority.order.reserve(static_cast<std::size_t>(instance.total_flows()));
  for (int coflow : coflow_order) {
    const int flows = static_cast<int>(
        instance.coflows[static_cast<std::size_t>(coflow)].flows.size());
    std::vector<int> within(static_cast<std::size_t>(flows));
    for (int j = 0; j < flows; ++j) {
      within[static_cast<std::size_t>(j)] = instance.flow_index(coflow, j);
    }
    std::sort(within.begin(), within.end(), [&](int lhs, int rhs) {
      if (frank[static_cast<std::size_t>(lhs)] != frank[static_cast<std::size_t>(rhs)]) {
        return frank[static_cast<std::size_t>(lhs)] < frank[static_cast<std::size_t>(rhs)];
      }
      return lhs < rhs;
    });
    priority.order.insert(priority.order.end(), within.begin(), within.end());
  }
  return priority;
}

namespace {

const SourceOption& chosen_option(const ProblemInstance& instance,
                                  const SourceSelection& sources, int flow) {
  return instance.flow_at(flow)
      .sources[static_cast<std::size_t>(sources.chosen[static_cast<std::size_t>(flow)])];
}

std::vector<int> conflict_counts(const ProblemInstance& instance,
                                 const SourceSelection& sources) {
  const int total_flows = instance.total_flows();
  std::vector<int> flconf(static_cast<std::size_t>(total_flows), 0);
  std::vector<std::vector<int>> on_link(instance.network.links.size());
  for (int f = 0; f < total_flows; ++f) {
    for (int link : chosen_option(instance, sources, f).path) {
      on_link[static_cast<std::size_t>(link)].push_back(f);
    }
  }
  std::vector<int> last_seen(static_cast<std::size_t>(total_flows), -1);
  for (int f = 0; f < total_flows; ++f) {
    for (int link : chosen_option(instance, sources, f).path) {
      for (int other : on_link[static_cast<std::size_t>(link)]) {
        if (other != f && last_seen[static_cast<std::size_t>(other)] != f) {
          last_seen[static_cast<std::size_t>(other)] = f;
          ++flconf[static_cast<std::size_t>(f)];
        }
      }
    }
  }
  return flconf;
}

}  // namespace

CostMatrix compute_costs(const ProblemInstance& instance,
                         const SourceSelection& sources) {
  const int total_flows = instance.total_flows();
  CostMatrix costs;
  costs.flcost.resize(static_cast<std::size_t>(total_flows));
  for (int f = 0; f < total_flows; ++f) {
    costs.flcost[static_cast<std::size_t>(f)] =
        static_cast<int>(chosen_option(instance, sources, f).path.size());
  }
  costs.flconf = conflict_counts(instance, sources);
  return costs;
}

SolvedSchedule initial_solution(const ProblemInstance& instance) {
  const RankTable ranks = compute_ranks(instance);
  SolvedSchedule solved;
  solved.sources.chosen = ranks.argmin_source;
  solved.priority = rank_priority(instance, ranks.frank);
  solved.eval = evaluate(instance, solved.sources, solved.priority);
  return solved;
}

SolvedSchedule source_search_adjust(const ProblemInstance& instance,
                                    const SolvedSchedule& initial) {
  const int total_flows = instance.total_flows();
  SolvedSchedule current = initial;

  // Rank of each flow under its currently committed source; the ordering is
  // always re-derived from these values.
  std::vector<double> frank(static_cast<std::size_t>(total_flows));
  for (int f = 0; f < total_flows; ++f) {
    frank[static_cast<std::size_t>(f)] = rank_with_source(
        instance, f, current.sources.chosen[static_cast<std::size_t>(f)]);
  }

  CostMatrix costs = compute_costs(instance, current.sources);

  for (int iter = 0; iter < total_flows; ++iter) {
    int flidx = -1;
    for (int f = 0; f < total_flows; ++f) {
      if (costs.flcost[static_cast<std::size_t>(f)] >
          (flidx < 0 ? 0 : costs.flcost[static_cast<std::size_t>(flidx)])) {
        flidx = f;
      }
    }
    if (flidx < 0) break;  // every flow processed

    if (costs.flconf[static_cast<std::size_t>(flidx)] >= 1) {
      const Flow& flow = instance.flow_at(flidx);
      const int committed = current.sources.chosen[static_cast<std::size_t>(flidx)];
      double best_sum = current.eval.sum_cct_s;
      int best_source = committed;
      SolvedSchedule best_candidate;

      for (int v = 0; v < static_cast<int>(flow.sources.size()); ++v) {
        if (v == committed) continue;
        SolvedSchedule candidate;
        candidate.sources = current.sources;
        candidate.sources.chosen[static_cast<std::size_t>(flidx)] = v;
        std::vector<double> candidate_frank = frank;
        candidate_frank[static_cast<std::size_t>(flidx)] =
            rank_with_source(instance, flidx, v);
        candidate.priority = rank_priority(instance, candidate_frank);
        candidate.eval = evaluate(instance, candidate.sources, candidate.priority);
        // Strict comparison keeps the committed source on ties and prefers
        // the smallest improving source index.
        if (candidate.eval.sum_cct_s < best_sum) {
          best_sum = candidate.eval.sum_cct_s;
          best_source = v;
          best_candidate = std::move(candidate);
        }
      }

      if (best_source != committed) {
        current = std::move(best_candidate);
        frank[static_cast<std::size_t>(flidx)] =
            rank_with_source(instance, flidx, best_source);
      }
      costs.flcost[static_cast<std::size_t>(flidx)] = 0;
      costs.flconf = conflict_counts(instance, current.sources);
    } else {
      // Conflict-free flows keep their best-rank source; only mark processed.
      costs.flcost[static_cast<std::size_t>(flidx)] = 0;
    }
  }
  return current;
}

SolvedSchedule scasa(const ProblemInstance& instance) {
  return source_search_adjust(instance, initial_solution(instance));
}

}  // namespace coflowsim

#pragma once

#include <vector>

#include "coflowsim/schedule.hpp"

namespace coflowsim {

/// Per-flow and per-coflow rank metrics. frank is the best achievable
/// release + total transmission time over a flow's sources; crank is the
/// worst frank within a coflow.
struct RankTable {
  std::vector<double> frank;       // per global flow
  std::vector<int> argmin_source;  // source index achieving frank
  std::vector<double> crank;       // per coflow
};

/// Release + total path transmission time of one source option.
double rank_with_source(const ProblemInstance& instance, int flow, int source);

RankTable compute_ranks(const ProblemInstance& instance);

/// Priority order induced by rank values: coflows ascending by crank (ties by
/// coflow id), flows within a coflow ascending by frank (ties by flow id).
/// crank is derived from the given per-flow values.
PriorityOrder rank_priority(const ProblemInstance& instance,
                            const std::vector<double>& frank);

/// Per-flow link counts and conflict counts driving the search pass. flcost
/// holds the chosen path's link count and drops to zero once a flow has been
/// processed; flconf counts the other flows sharing at least one link.
struct CostMatrix {
  std::vector<int> flcost;
  std::vector<int> flconf;
};

CostMatrix compute_costs(const ProblemInstance& instance,
                         const SourceSelection& sources);

/// Rank-based starting point: per-flow best source, rank-induced priority.
SolvedSchedule initial_solution(const ProblemInstance& instance);

/// Greedy source refinement: flows are visited in decreasing link count; a
/// conflicted flow's alternatives are re-evaluated with ranks and ordering
/// recomputed the same way as the initial solution, and the best source is
/// kept (the incumbent wins ties).
SolvedSchedule source_search_adjust(const ProblemInstance& instance,
                                    const SolvedSchedule& initial);

/// initial_solution followed by source_search_adjust.
SolvedSchedule scasa(const ProblemInstance& instance);

}  // namespace coflowsim

#pragma once

#include <string>

#include "coflowsim/instance.hpp"

namespace coflowsim {

/// Horizon bound used to deactivate ordering constraints: the sum over all
/// flows of their worst-case release + total transmission time.
double milp_big_m(const ProblemInstance& instance);

/// Full mixed-integer program for an instance in CPLEX LP text format:
/// binary source choices, binary pairwise orderings for every potentially
/// shared link, continuous per-hop finish times, and the sum-of-CCT
/// objective. The header comment documents the variable naming so external
/// solvers (HiGHS, CBC, SCIP, Gurobi, ...) can consume the file directly.
std::string export_milp(const ProblemInstance& instance);

}  // namespace coflowsim

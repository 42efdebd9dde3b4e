#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coflowsim/scasa.hpp"
#include "coflowsim/schedule.hpp"

namespace coflowsim {

enum class SchedulerId { Random, Fls, Cfls, Bas, Flord, Scasa, ScasaFlord };

std::string to_string(SchedulerId id);
bool scheduler_from_string(const std::string& name, SchedulerId& id);
std::vector<SchedulerId> all_schedulers();

/// Uniform random source per flow and a uniform random flow order.
SolvedSchedule random_schedule(const ProblemInstance& instance, Rng& rng);

/// Best-rank sources, flows ordered by their own rank alone (coflow
/// membership ignored).
SolvedSchedule fls(const ProblemInstance& instance);

/// Best-rank sources with the rank-induced coflow ordering; identical to the
/// search heuristic's initial solution.
SolvedSchedule cfls(const ProblemInstance& instance);

/// Best-rank sources; coflows ordered bottleneck-aware: repeatedly find the
/// most loaded link and schedule last the coflow contributing most to it.
SolvedSchedule bas(const ProblemInstance& instance);

/// Best-rank sources, then link-by-link order refinement starting from the
/// fls ordering.
SolvedSchedule flord(const ProblemInstance& instance);

/// scasa followed by the link-level order refinement with sources frozen.
SolvedSchedule scasa_flord(const ProblemInstance& instance);

/// Sweeps links in decreasing congestion and tries adjacent swaps of each
/// link's flows in the global order, keeping only swaps that strictly lower
/// the sum of CCT. Passes repeat until none improves, capped at one pass per
/// network link.
SolvedSchedule reorder_at_links(const ProblemInstance& instance,
                                SolvedSchedule start);

/// Dispatch by id; `seed` feeds the random scheduler and is ignored by the
/// deterministic ones.
SolvedSchedule solve_with(const ProblemInstance& instance, SchedulerId id,
                          std::uint64_t seed);

}  // namespace coflowsim

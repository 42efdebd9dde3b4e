#include "coflowsim/schedulers.hpp"

#include <algorithm>
#include <stdexcept>

namespace coflowsim {

std::string to_string(SchedulerId id) {
  switch (id) {
    case SchedulerId::Random: return "random";
    case SchedulerId::Fls: return "fls";
    case SchedulerId::Cfls: return "cfls";
    case SchedulerId::Bas: return "bas";
    case SchedulerId::Flord: return "flord";
    case SchedulerId::Scasa: return "scasa";
    case SchedulerId::ScasaFlord: return "scasa_flord";
  }
  return "unknown";
}

bool scheduler_from_string(const std::string& name, SchedulerId& id) {
  for (SchedulerId candidate : all_schedulers()) {
    if (name == to_string(candidate)) {
      id = candidate;
      return true;
    }
  }
  return false;
}

std::vector<SchedulerId> all_schedulers() {
  return {SchedulerId::Random, SchedulerId::Fls,   SchedulerId::Cfls,
          SchedulerId::Bas,    SchedulerId::Flord, SchedulerId::Scasa,
          SchedulerId::ScasaFlord};
}

SolvedSchedule random_schedule(const ProblemInstance& instance, Rng& rng) {
  const int total_flows = instance.total_flows();
  SolvedSchedule solved;
  solved.sources.chosen.resize(static_cast<std::size_t>(total_flows));
  for (int f = 0; f < total_flows; ++f) {
    solved.sources.chosen[static_cast<std::size_t>(f)] =
        rng.uniform_int(static_cast<int>(instance.flow_at(f).sources.size()));
  }
  solved.priority.order.resize(static_cast<std::size_t>(total_flows));
  for (int f = 0; f < total_flows; ++f) {
    solved.priority.order[static_cast<std::size_t>(f)] = f;
  }
  rng.shuffle(solved.priority.order);
  solved.eval = evaluate(instance, solved.sources, solved.priority);
  return solved;
}

SolvedSchedule fls(const ProblemInstance& instance) {
  const RankTable ranks = compute_ranks(instance);
  SolvedSchedule solved;
  solved.sources.chosen = ranks.argmin_source;
  solved.priority.order.resize(static_cast<std::size_t>(instance.total_flows()));
  for (int f = 0; f < instance.total_flows(); ++f) {
    solved.priority.order[static_cast<std::size_t>(f)] = f;
  }
  std::sort(solved.priority.order.begin(), solved.priority.order.end(),
            [&](int lhs, int rhs) {
              if (ranks.frank[static_cast<std::size_t>(lhs)] !=
                  ranks.frank[static_cast<std::size_t>(rhs)]) {
                return ranks.frank[static_cast<std::size_t>(lhs)] <
                       ranks.frank[static_cast<std::size_t>(rhs)];
              }
              return lhs < rhs;
            });
  solved.eval = evaluate(instance, solved.sources, solved.priority);
  return solved;
}

SolvedSchedule cfls(const ProblemInstance& instance) {
  return initial_solution(instance);
}

SolvedSchedule bas(const ProblemInstance& instance) {
  const RankTable ranks = compute_ranks(instance);
  SourceSelection sources;
  sources.chosen = ranks.argmin_source;

  const int num_coflows = static_cast<int>(instance.coflows.size());
  const int num_links = static_cast<int>(instance.network.links.size());

  // Transmission seconds each coflow places on each link under the chosen
  // sources.
  std::vector<std::vector<double>> coflow_link_load(
      static_cast<std::size_t>(num_coflows),
      std::vector<double>(static_cast<std::size_t>(num_links), 0.0));
  for (int f = 0; f < instance.total_flows(); ++f) {
    const Flow& flow = instance.flow_at(f);
    const SourceOption& option =
        flow.sources[static_cast<std::size_t>(sources.chosen[static_cast<std::size_t>(f)])];
    for (int hop = 0; hop < static_cast<int>(option.path.size()); ++hop) {
      coflow_link_load[static_cast<std::size_t>(flow.coflow)]
                      [static_cast<std::size_t>(option.path[static_cast<std::size_t>(hop)])] +=
          transmission_time_s(instance.network, flow, option, hop);
    }
  }

  // Fill the coflow sequence from the back: the heaviest contributor at the
  // busiest remaining link goes last.
  std::vector<int> sequence(static_cast<std::size_t>(num_coflows), -1);
  std::vector<char> remaining(static_cast<std::size_t>(num_coflows), 1);
  for (int pos = num_coflows - 1; pos >= 0; --pos) {
    int bottleneck = -1;
    double bottleneck_load = -1.0;
    for (int link = 0; link < num_links; ++link) {
      double load = 0.0;
      for (int i = 0; i < num_coflows; ++i) {
        if (remaining[static_cast<std::size_t>(i)]) {
          load += coflow_link_load[static_cast<std::size_t>(i)][static_cast<std::size_t>(link)];
        }
      }
      if (load > bottleneck_load) {
        bottleneck_load = load;
        bottleneck = link;
      }
    }
    int pick = -1;
    double pick_load = -1.0;
    for (int i = 0; i < num_coflows; ++i) {
      if (!remaining[static_cast<std::size_t>(i)]) continue;
      const double load =
          coflow_link_load[static_cast<std::size_t>(i)][static_cast<std::size_t>(bottleneck)];
      if (load > pick_load) {
        pick_load = load;
        pick = i;
      }
    }
    sequence[static_cast<std::size_t>(pos)] = pick;
    remaining[static_cast<std::size_t>(pick)] = 0;
  }

  SolvedSchedule solved;
  solved.sources = std::move(sources);
  solved.priority.order.reserve(static_cast<std::size_t>(instance.total_flows()));
  for (int coflow : sequence) {
    const int flows = static_cast<int>(
        instance.coflows[static_cast<std::size_t>(coflow)].flows.size());
    std::vector<int> within(static_cast<std::size_t>(flows));
    for (int j = 0; j < flows; ++j) {
      within[static_cast<std::size_t>(j)] = instance.flow_index(coflow, j);
    }
    std::sort(within.begin(), within.end(), [&](int lhs, int rhs) {
      if (ranks.frank[static_cast<std::size_t>(lhs)] !=
          ranks.frank[static_cast<std::size_t>(rhs)]) {
        return ranks.frank[static_cast<std::size_t>(lhs)] <
               ranks.frank[static_cast<std::size_t>(rhs)];
      }
      return lhs < rhs;
    });
    solved.priority.order.insert(solved.priority.order.end(), within.begin(),
                                 within.end());
  }
  solved.eval = evaluate(instance, solved.sources, solved.priority);
  return solved;
}

SolvedSchedule reorder_at_links(const ProblemInstance& instance,
                                SolvedSchedule start) {
  const int num_links = static_cast<int>(instance.network.links.size());

  // Flows crossing each link and the total transmission time placed on it;
  // sources are frozen here, so both are fixed for the whole refinement.
  std::vector<std::vector<int>> flows_on_link(static_cast<std::size_t>(num_links));
  std::vector<double> congestion(static_cast<std::size_t>(num_links), 0.0);
  for (int f = 0; f < instance.total_flows(); ++f) {
    const Flow& flow = instance.flow_at(f);
    const SourceOption& option = flow.sources[static_cast<std::size_t>(
        start.sources.chosen[static_cast<std::size_t>(f)])];
    for (int hop = 0; hop < static_cast<int>(option.path.size()); ++hop) {
      const int link = option.path[static_cast<std::size_t>(hop)];
      flows_on_link[static_cast<std::size_t>(link)].push_back(f);
      congestion[static_cast<std::size_t>(link)] +=
          transmission_time_s(instance.network, flow, option, hop);
    }
  }

  std::vector<int> link_order;
  for (int link = 0; link < num_links; ++link) {
    if (flows_on_link[static_cast<std::size_t>(link)].size() >= 2) {
      link_order.push_back(link);
    }
  }
  std::sort(link_order.begin(), link_order.end(), [&](int lhs, int rhs) {
    if (congestion[static_cast<std::size_t>(lhs)] !=
        congestion[static_cast<std::size_t>(rhs)]) {
      return congestion[static_cast<std::size_t>(lhs)] >
             congestion[static_cast<std::size_t>(rhs)];
    }
    return lhs < rhs;
  });

  std::vector<int> position(start.priority.order.size(), 0);
  const auto refresh_positions = [&]() {
    for (std::size_t pos = 0; pos < start.priority.order.size(); ++pos) {
      position[static_cast<std::size_t>(start.priority.order[pos])] =
          static_cast<int>(pos);
    }
  };
  refresh_positions();

  const int pass_budget = std::max(1, num_links);
  bool improved = true;
  for (int pass = 0; pass < pass_budget && improved; ++pass) {
    improved = false;
    for (int link : link_order) {
      std::vector<int> members = flows_on_link[static_cast<std::size_t>(link)];
      std::sort(members.begin(), members.end(), [&](int lhs, int rhs) {
        return position[static_cast<std::size_t>(lhs)] <
               position[static_cast<std::size_t>(rhs)];
      });
      for (std::size_t k = 0; k + 1 < members.size(); ++k) {
        const int f = members[k];
        const int g = members[k + 1];
        PriorityOrder candidate = start.priority;
        std::swap(candidate.order[static_cast<std::size_t>(position[static_cast<std::size_t>(f)])],
                  candidate.order[static_cast<std::size_t>(position[static_cast<std::size_t>(g)])]);
        EvaluatedSchedule cand_eval = evaluate(instance, start.sources, candidate);
        if (cand_eval.sum_cct_s < start.eval.sum_cct_s) {
          start.priority = std::move(candidate);
          start.eval = std::move(cand_eval);
          refresh_positions();
          std::swap(members[k], members[k + 1]);
          improved = true;
        }
      }
    }
  }
  return start;
}

SolvedSchedule flord(const ProblemInstance& instance) {
  return reorder_at_links(instance, fls(instance));
}

SolvedSchedule scasa_flord(const ProblemInstance& instance) {
  return reorder_at_links(instance, scasa(instance));
}

SolvedSchedule solve_with(const ProblemInstance& instance, SchedulerId id,
                          std::uint64_t seed) {
  switch (id) {
    case SchedulerId::Random: {
      Rng rng(seed);
      return random_schedule(instance, rng);
    }
    case SchedulerId::Fls: return fls(instance);
    case SchedulerId::Cfls: return cfls(instance);
    case SchedulerId::Bas: return bas(instance);
    case SchedulerId::Flord: return flord(instance);
    case SchedulerId::Scasa: return scasa(instance);
    case SchedulerId::ScasaFlord: return scasa_flord(instance);
  }
  throw std::invalid_argument("solve_with: unknown scheduler");
}

}  // namespace coflowsim

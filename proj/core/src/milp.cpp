#include "coflowsim/milp.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>
#include <vector>

namespace coflowsim {

namespace {

std::string num(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

struct FlowKey {
  int coflow;
  int flow;
};

std::string x_name(const FlowKey& f, int s) {
  return "X_" + std::to_string(f.coflow) + "_" + std::to_string(f.flow) + "_" +
         std::to_string(s);
}

std::string ft_name(const FlowKey& f, int hop1) {  // hop1 is 1-based
  return "Ft_" + std::to_string(f.coflow) + "_" + std::to_string(f.flow) + "_" +
         std::to_string(hop1);
}

std::string fct_name(const FlowKey& f) {
  return "FCT_" + std::to_string(f.coflow) + "_" + std::to_string(f.flow);
}

// Y_a__b == 1 means subflow a (flow at hop) finishes before subflow b starts.
std::string y_name(const FlowKey& a, int ah, const FlowKey& b, int bh) {
  return "Y_" + std::to_string(a.coflow) + "_" + std::to_string(a.flow) + "_" +
         std::to_string(ah) + "__" + std::to_string(b.coflow) + "_" +
         std::to_string(b.flow) + "_" + std::to_string(bh);
}

}  // namespace

double milp_big_m(const ProblemInstance& instance) {
  double total = 0.0;
  for (int f = 0; f < instance.total_flows(); ++f) {
    const Flow& flow = instance.flow_at(f);
    double worst = 0.0;
    for (const SourceOption& option : flow.sources) {
      worst = std::max(worst, option.release_s +
                                  path_transmit_total_s(instance.network, flow, option));
    }
    total += worst;
  }
  return total;
}

std::string export_milp(const ProblemInstance& instance) {
  const int total_flows = instance.total_flows();
  const double big_m = milp_big_m(instance);

  std::vector<FlowKey> keys(static_cast<std::size_t>(total_flows));
  std::vector<int> max_hops(static_cast<std::size_t>(total_flows), 0);
  for (int f = 0; f < total_flows; ++f) {
    const Flow& flow = instance.flow_at(f);
    keys[static_cast<std::size_t>(f)] = {flow.coflow, flow.index};
    for (const SourceOption& option : flow.sources) {
      max_hops[static_cast<std::size_t>(f)] = std::max(
          max_hops[static_cast<std::size_t>(f)], static_cast<int>(option.path.size()));
    }
  }

  // Ordering variables exist for every pair of subflows that can land on one
  // physical link under some pair of source choices. Keyed on
  // (flow_a, hop_a, flow_b, hop_b) with flow_a < flow_b; the value lists the
  // (source_a, source_b) combinations that realize the shared link.
  std::map<std::tuple<int, int, int, int>, std::vector<std::pair<int, int>>> pairs;
  for (int fa = 0; fa < total_flows; ++fa) {
    const Flow& flow_a = instance.flow_at(fa);
    for (int fb = fa + 1; fb < total_flows; ++fb) {
      const Flow& flow_b = instance.flow_at(fb);
      for (int sa = 0; sa < static_cast<int>(flow_a.sources.size()); ++sa) {
        const auto& path_a = flow_a.sources[static_cast<std::size_t>(sa)].path;
        for (int sb = 0; sb < static_cast<int>(flow_b.sources.size()); ++sb) {
          const auto& path_b = flow_b.sources[static_cast<std::size_t>(sb)].path;
          for (int ha = 0; ha < static_cast<int>(path_a.size()); ++ha) {
            for (int hb = 0; hb < static_cast<int>(path_b.size()); ++hb) {
              if (path_a[static_cast<std::size_t>(ha)] ==
                  path_b[static_cast<std::size_t>(hb)]) {
                pairs[{fa, ha + 1, fb, hb + 1}].emplace_back(sa, sb);
              }
            }
          }
        }
      }
    }
  }

  std::ostringstream lp;
  lp << "\\ coflowsim MILP export, format version 1\n";
  lp << "\\ Variable naming (all indices 0-based except hop numbers, which are 1-based):\n";
  lp << "\\   X_i_j_s        binary: source s chosen for flow j of coflow i\n";
  lp << "\\   Y_i_j_h__u_v_l binary: flow j of coflow i at hop h finishes before\n";
  lp << "\\                  flow v of coflow u starts its hop l\n";
  lp << "\\   Ft_i_j_h       finish time (seconds) of flow j of coflow i at hop h\n";
  lp << "\\   FCT_i_j, CCT_i flow / coflow completion times (seconds)\n";
  lp << "\\ big-M = " << num(big_m) << "\n";

  lp << "Minimize\n obj:";
  for (std::size_t i = 0; i < instance.coflows.size(); ++i) {
    lp << (i == 0 ? " " : " + ") << "CCT_" << i;
  }
  lp << "\nSubject To\n";

  // Exactly one source per flow.
  for (int f = 0; f < total_flows; ++f) {
    const FlowKey& key = keys[static_cast<std::size_t>(f)];
    lp << " src_" << key.coflow << "_" << key.flow << ":";
    const Flow& flow = instance.flow_at(f);
    for (int s = 0; s < static_cast<int>(flow.sources.size()); ++s) {
      lp << (s == 0 ? " " : " + ") << x_name(key, s);
    }
    lp << " = 1\n";
  }

  // First-hop release bound per source option.
  for (int f = 0; f < total_flows; ++f) {
    const FlowKey& key = keys[static_cast<std::size_t>(f)];
    const Flow& flow = instance.flow_at(f);
    for (int s = 0; s < static_cast<int>(flow.sources.size()); ++s) {
      const SourceOption& option = flow.sources[static_cast<std::size_t>(s)];
      const double bound =
          option.release_s + transmission_time_s(instance.network, flow, option, 0);
      lp << " rel_" << key.coflow << "_" << key.flow << "_" << s << ": "
         << ft_name(key, 1) << " - " << num(bound) << " " << x_name(key, s)
         << " >= 0\n";
    }
  }

  // Hop chaining per source option.
  for (int f = 0; f < total_flows; ++f) {
    const FlowKey& key = keys[static_cast<std::size_t>(f)];
    const Flow& flow = instance.flow_at(f);
    for (int s = 0; s < static_cast<int>(flow.sources.size()); ++s) {
      const SourceOption& option = flow.sources[static_cast<std::size_t>(s)];
      for (int hop = 1; hop < static_cast<int>(option.path.size()); ++hop) {
        const double cost = transmission_time_s(instance.network, flow, option, hop);
        lp << " chain_" << key.coflow << "_" << key.flow << "_" << s << "_"
           << hop + 1 << ": " << ft_name(key, hop + 1) << " - "
           << ft_name(key, hop) << " - " << num(cost) << " " << x_name(key, s)
           << " >= 0\n";
      }
    }
  }

  // Pairwise ordering on potentially shared links, big-M deactivated unless
  // the predecessor direction and the predecessor's source are both selected.
  int ordinal = 0;
  for (const auto& [pair_key, combos] : pairs) {
    const auto [fa, ha, fb, hb] = pair_key;
    const FlowKey& key_a = keys[static_cast<std::size_t>(fa)];
    const FlowKey& key_b = keys[static_cast<std::size_t>(fb)];
    const Flow& flow_a = instance.flow_at(fa);
    const Flow& flow_b = instance.flow_at(fb);
    for (const auto& [sa, sb] : combos) {
      const double cost_a = transmission_time_s(
          instance.network, flow_a, flow_a.sources[static_cast<std::size_t>(sa)], ha - 1);
      const double cost_b = transmission_time_s(
          instance.network, flow_b, flow_b.sources[static_cast<std::size_t>(sb)], hb - 1);
      // b precedes a: Ft_a + M (2 - Y_b__a - X_b_sb) >= cost_a * X_a_sa + Ft_b
      lp << " ord_" << ordinal++ << ": " << ft_name(key_a, ha) << " - "
         << ft_name(key_b, hb) << " - " << num(cost_a) << " " << x_name(key_a, sa)
         << " - " << num(big_m) << " " << y_name(key_b, hb, key_a, ha) << " - "
         << num(big_m) << " " << x_name(key_b, sb) << " >= " << num(-2.0 * big_m)
         << "\n";
      // a precedes b, symmetric.
      lp << " ord_" << ordinal++ << ": " << ft_name(key_b, hb) << " - "
         << ft_name(key_a, ha) << " - " << num(cost_b) << " " << x_name(key_b, sb)
         << " - " << num(big_m) << " " << y_name(key_a, ha, key_b, hb) << " - "
         << num(big_m) << " " << x_name(key_a, sa) << " >= " << num(-2.0 * big_m)
         << "\n";
    }
  }

  // One direction per ordering pair.
  int pair_ordinal = 0;
  for (const auto& [pair_key, combos] : pairs) {
    (void)combos;
    const auto [fa, ha, fb, hb] = pair_key;
    const FlowKey& key_a = keys[static_cast<std::size_t>(fa)];
    const FlowKey& key_b = keys[static_cast<std::size_t>(fb)];
    lp << " pair_" << pair_ordinal++ << ": " << y_name(key_a, ha, key_b, hb)
       << " + " << y_name(key_b, hb, key_a, ha) << " = 1\n";
  }

  // Completion-time envelopes.
  for (int f = 0; f < total_flows; ++f) {
    const FlowKey& key = keys[static_cast<std::size_t>(f)];
    for (int hop = 1; hop <= max_hops[static_cast<std::size_t>(f)]; ++hop) {
      lp << " fct_" << key.coflow << "_" << key.flow << "_" << hop << ": "
         << fct_name(key) << " - " << ft_name(key, hop) << " >= 0\n";
    }
    lp << " cct_" << key.coflow << "_" << key.flow << ": CCT_" << key.coflow
       << " - " << fct_name(key) << " >= 0\n";
  }

  lp << "Binary\n";
  for (int f = 0; f < total_flows; ++f) {
    const FlowKey& key = keys[static_cast<std::size_t>(f)];
    const Flow& flow = instance.flow_at(f);
    for (int s = 0; s < static_cast<int>(flow.sources.size()); ++s) {
      lp << " " << x_name(key, s) << "\n";
    }
  }
  for (const auto& [pair_key, combos] : pairs) {
    (void)combos;
    const auto [fa, ha, fb, hb] = pair_key;
    const FlowKey& key_a = keys[static_cast<std::size_t>(fa)];
    const FlowKey& key_b = keys[static_cast<std::size_t>(fb)];
    lp << " " << y_name(key_a, ha, key_b, hb) << "\n";
    lp << " " << y_name(key_b, hb, key_a, ha) << "\n";
  }
  lp << "End\n";
  return lp.str();
}

}  // namespace coflowsim

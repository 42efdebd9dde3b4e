#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coflowsim/milp.hpp"
#include "coflowsim/scasa.hpp"
#include "coflowsim/schedule.hpp"
#include "coflowsim/serialize.hpp"
#include "doctest.h"
#include "support/oracle.hpp"
#include "support/toys.hpp"

using namespace coflowsim;
using namespace coflowsim::tests;

namespace {

bool is_number(const std::string& token) {
  char* end = nullptr;
  std::strtod(token.c_str(), &end);
  return end != nullptr && *end == '\0' && end != token.c_str();
}

struct LpTerm {
  double coef;
  std::string var;
};

struct LpConstraint {
  std::string name;
  std::vector<LpTerm> terms;
  std::string sense;  // ">=", "<=", "="
  double rhs;
};

struct LpModel {
  std::vector<LpTerm> objective;
  std::vector<LpConstraint> constraints;
  std::set<std::string> binaries;
};

std::vector<LpTerm> parse_terms(const std::vector<std::string>& tokens) {
  std::vector<LpTerm> terms;
  double sign = 1.0;
  bool have_coef = false;
  double coef = 0.0;
  for (const std::string& token : tokens) {
    if (token == "+") {
      sign = 1.0;
      have_coef = false;
    } else if (token == "-") {
      sign = -1.0;
      have_coef = false;
    } else if (is_number(token)) {
      coef = sign * std::stod(token);
      have_coef = true;
    } else {
      terms.push_back({have_coef ? coef : sign, token});
      sign = 1.0;
      have_coef = false;
    }
  }
  return terms;
}

LpModel parse_lp(const std::string& text) {
  LpModel model;
  std::istringstream in(text);
  std::string line;
  enum class Section { None, Objective, Constraints, Binary } section = Section::None;
  std::vector<std::string> objective_tokens;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '\\') continue;
    std::string stripped = line;
    while (!stripped.empty() && (stripped.front() == ' ' || stripped.front() == '\t')) {
      stripped.erase(stripped.begin());
    }
    if (stripped == "Minimize") {
      section = Section::Objective;
      continue;
    }
    if (stripped == "Subject To") {
      model.objective = parse_terms(objective_tokens);
      section = Section::Constraints;
      continue;
    }
    if (stripped == "Binary") {
      section = Section::Binary;
      continue;
    }
    if (stripped == "End") break;

    std::istringstream tok_in(stripped);
    std::vector<std::string> tokens;
    std::string token;
    while (tok_in >> token) tokens.push_back(token);
    if (tokens.empty()) continue;

    if (section == Section::Objective) {
      if (tokens.front().back() == ':') tokens.erase(tokens.begin());
      objective_tokens.insert(objective_tokens.end(), tokens.begin(), tokens.end());
    } else if (section == Section::Constraints) {
      LpConstraint constraint;
      REQUIRE(tokens.front().back() == ':');
      constraint.name = tokens.front().substr(0, tokens.front().size() - 1);
      tokens.erase(tokens.begin());
      std::size_t sense_idx = 0;
      for (; sense_idx < tokens.size(); ++sense_idx) {
        if (tokens[sense_idx] == ">=" || tokens[sense_idx] == "<=" ||
            tokens[sense_idx] == "=") {
          break;
        }
      }
      REQUIRE(sense_idx + 1 < tokens.size());
      constraint.terms = parse_terms(
          std::vector<std::string>(tokens.begin(), tokens.begin() + sense_idx));
      constraint.sense = tokens[sense_idx];
      constraint.rhs = std::stod(tokens[sense_idx + 1]);
      model.constraints.push_back(std::move(constraint));
    } else if (section == Section::Binary) {
      model.binaries.insert(tokens.front());
    }
  }
  return model;
}

std::vector<int> split_indices(const std::string& text) {
  std::vector<int> out;
  std::string cur;
  for (char c : text) {
    if (c == '_') {
      if (!cur.empty()) out.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::stoi(cur));
  return out;
}

/// Assignment of every LP variable for a concrete evaluated schedule; finish
/// times past a chosen path's end hold the last real value.
std::map<std::string, double> build_assignment(const ProblemInstance& instance,
                                               const SolvedSchedule& solved,
                                               const LpModel& model) {
  std::map<std::string, double> value;

  std::vector<int> offsets(static_cast<std::size_t>(instance.total_flows()), 0);
  int vertex = 0;
  for (int f = 0; f < instance.total_flows(); ++f) {
    offsets[static_cast<std::size_t>(f)] = vertex;
    vertex += static_cast<int>(
        instance.flow_at(f)
            .sources[static_cast<std::size_t>(solved.sources.chosen[static_cast<std::size_t>(f)])]
            .path.size());
  }
  const auto extended_ft = [&](int coflow, int flow, int hop1) {
    const int global = instance.flow_index(coflow, flow);
    const int chosen = solved.sources.chosen[static_cast<std::size_t>(global)];
    const int hops = static_cast<int>(
        instance.flow_at(global).sources[static_cast<std::size_t>(chosen)].path.size());
    const int clamped = std::min(hop1, hops);
    return solved.eval.finish_s[static_cast<std::size_t>(
        offsets[static_cast<std::size_t>(global)] + clamped - 1)];
  };

  for (int f = 0; f < instance.total_flows(); ++f) {
    const Flow& flow = instance.flow_at(f);
    for (int s = 0; s < static_cast<int>(flow.sources.size()); ++s) {
      value["X_" + std::to_string(flow.coflow) + "_" + std::to_string(flow.index) +
            "_" + std::to_string(s)] =
          solved.sources.chosen[static_cast<std::size_t>(f)] == s ? 1.0 : 0.0;
    }
    value["FCT_" + std::to_string(flow.coflow) + "_" + std::to_string(flow.index)] =
        solved.eval.fct_s[static_cast<std::size_t>(f)];
  }
  for (std::size_t i = 0; i < instance.coflows.size(); ++i) {
    value["CCT_" + std::to_string(i)] = solved.eval.cct_s[i];
  }

  // Every Ft/Y variable referenced anywhere in the model.
  const auto visit_var = [&](const std::string& var) {
    if (value.count(var)) return;
    if (var.rfind("Ft_", 0) == 0) {
      const std::vector<int> idx = split_indices(var.substr(3));
      REQUIRE(idx.size() == 3);
      value[var] = extended_ft(idx[0], idx[1], idx[2]);
    } else if (var.rfind("Y_", 0) == 0) {
      const std::size_t sep = var.find("__");
      REQUIRE(sep != std::string::npos);
      const std::vector<int> a = split_indices(var.substr(2, sep - 2));
      const std::vector<int> b = split_indices(var.substr(sep + 2));
      REQUIRE(a.size() == 3);
      REQUIRE(b.size() == 3);
      const double ft_a = extended_ft(a[0], a[1], a[2]);
      const double ft_b = extended_ft(b[0], b[1], b[2]);
      const bool a_first = ft_a < ft_b || (ft_a == ft_b && a < b);
      value[var] = a_first ? 1.0 : 0.0;
    }
  };
  for (const LpTerm& term : model.objective) visit_var(term.var);
  for (const LpConstraint& constraint : model.constraints) {
    for (const LpTerm& term : constraint.terms) visit_var(term.var);
  }
  for (const std::string& var : model.binaries) visit_var(var);
  return value;
}

int count_binaries(const LpModel& model, const std::string& prefix) {
  int count = 0;
  for (const std::string& var : model.binaries) {
    if (var.rfind(prefix, 0) == 0) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("single flow, single source: one X, per-hop Ft, no Y") {
  const ProblemInstance instance = chain_instance({0.1, 0.2}, 0.25);
  const std::string lp = export_milp(instance);
  const LpModel model = parse_lp(lp);
  CHECK(count_binaries(model, "X_") == 1);
  CHECK(count_binaries(model, "Y_") == 0);
  CHECK(lp.find("Ft_0_0_1") != std::string::npos);
  CHECK(lp.find("Ft_0_0_2") != std::string::npos);
  CHECK(milp_big_m(instance) == doctest::Approx(0.55));
}

TEST_CASE("two flows with two sources: X and Y counts match the paths") {
  const ProblemInstance instance = collide_instance();
  const LpModel model = parse_lp(export_milp(instance));
  CHECK(count_binaries(model, "X_") == 4);

  // Oracle: shared (hop, hop) pairs across all source combinations.
  std::set<std::array<int, 4>> pairs;
  const Flow& flow_a = instance.flow_at(0);
  const Flow& flow_b = instance.flow_at(1);
  for (const SourceOption& sa : flow_a.sources) {
    for (const SourceOption& sb : flow_b.sources) {
      for (std::size_t ha = 0; ha < sa.path.size(); ++ha) {
        for (std::size_t hb = 0; hb < sb.path.size(); ++hb) {
          if (sa.path[ha] == sb.path[hb]) {
            pairs.insert({0, static_cast<int>(ha), 1, static_cast<int>(hb)});
          }
        }
      }
    }
  }
  CHECK(count_binaries(model, "Y_") == static_cast<int>(2 * pairs.size()));

  int pair_constraints = 0;
  for (const LpConstraint& constraint : model.constraints) {
    if (constraint.name.rfind("pair_", 0) == 0) {
      ++pair_constraints;
      CHECK(constraint.sense == "=");
      CHECK(constraint.rhs == doctest::Approx(1.0));
    }
  }
  CHECK(pair_constraints == static_cast<int>(pairs.size()));
}

TEST_CASE("brute-force optimum satisfies every exported constraint") {
  const ProblemInstance instance = collide_instance();
  const LpModel model = parse_lp(export_milp(instance));

  const BruteForceResult best = brute_force_min(
      instance, [](const ProblemInstance& inst, const SourceSelection& sources,
                   const PriorityOrder& priority) {
        return evaluate(inst, sources, priority).sum_cct_s;
      });
  SolvedSchedule solved;
  solved.sources = best.sources;
  solved.priority = best.priority;
  solved.eval = evaluate(instance, best.sources, best.priority);

  const std::map<std::string, double> assignment =
      build_assignment(instance, solved, model);

  for (const LpConstraint& constraint : model.constraints) {
    double lhs = 0.0;
    for (const LpTerm& term : constraint.terms) {
      lhs += term.coef * assignment.at(term.var);
    }
    CAPTURE(constraint.name);
    if (constraint.sense == ">=") {
      CHECK(lhs >= constraint.rhs - 1e-6);
    } else if (constraint.sense == "<=") {
      CHECK(lhs <= constraint.rhs + 1e-6);
    } else {
      CHECK(lhs == doctest::Approx(constraint.rhs).epsilon(1e-9));
    }
  }

  double objective = 0.0;
  for (const LpTerm& term : model.objective) {
    objective += term.coef * assignment.at(term.var);
  }
  CHECK(objective == doctest::Approx(best.best_sum_cct_s).epsilon(1e-9));
}

TEST_CASE("external MILP solver reproduces the brute-force optimum") {
  const ProblemInstance instance = collide_instance();
  const BruteForceResult best = brute_force_min(
      instance, [](const ProblemInstance& inst, const SourceSelection& sources,
                   const PriorityOrder& priority) {
        return evaluate(inst, sources, priority).sum_cct_s;
      });
  REQUIRE(best.best_sum_cct_s == doctest::Approx(0.45));

  const std::string lp_path = "/tmp/coflowsim_milp_test.lp";
  write_text_file(lp_path, export_milp(instance));

  const std::string command =
      std::string("python3 ") + COFLOWSIM_SUPPORT_DIR + "/solve_lp.py " + lp_path +
      " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buffer[256];
  while (fgets(buffer, sizeof(buffer), pipe) != nullptr) output += buffer;
  const int status = pclose(pipe);
  CAPTURE(output);
  REQUIRE(status == 0);

  const std::size_t pos = output.find("objective ");
  REQUIRE(pos != std::string::npos);
  const double solved = std::stod(output.substr(pos + 10));
  CHECK(solved == doctest::Approx(best.best_sum_cct_s).epsilon(1e-6));
}

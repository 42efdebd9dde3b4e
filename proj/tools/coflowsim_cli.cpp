// Command-line front end: generate instances, solve them with any scheduler,
// validate schedules, export MILP models, run sweeps, and compare results.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "coflowsim/harness.hpp"
#include "coflowsim/milp.hpp"
#include "coflowsim/serialize.hpp"

namespace {

using namespace coflowsim;

std::string format_seconds(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

int run_generate(const GeneratorConfig& config, const std::string& out_path) {
  const ProblemInstance instance = generate_instance(config);
  write_text_file(out_path, instance_to_json(instance));
  std::cout << "wrote " << out_path << ": " << config.num_devices << " devices, "
            << instance.network.links.size() << " links, " << config.num_coflows
            << " coflows, " << instance.total_flows() << " flows\n";
  return 0;
}

int run_solve(const std::string& scheduler_name, const std::string& instance_path,
              const std::string& out_path, std::uint64_t seed) {
  SchedulerId id;
  if (!scheduler_from_string(scheduler_name, id)) {
    std::cerr << "error: unknown scheduler '" << scheduler_name
              << "' (expected one of:";
    for (SchedulerId candidate : all_schedulers()) {
      std::cerr << " " << to_string(candidate);
    }
    std::cerr << ")\n";
    return 1;
  }
  const ProblemInstance instance =
      instance_from_json(read_text_file(instance_path));
  const SolvedSchedule solved = solve_with(instance, id, seed);
  if (!out_path.empty()) {
    write_text_file(out_path, schedule_to_json(solved, instance));
  }
  std::cout << "scheduler: " << to_string(id) << "\n";
  std::cout << "sum CCT: " << format_seconds(solved.eval.sum_cct_s) << " s\n";
  for (std::size_t i = 0; i < solved.eval.cct_s.size(); ++i) {
    std::cout << "coflow " << i << " CCT: " << format_seconds(solved.eval.cct_s[i])
              << " s\n";
  }
  return 0;
}

int run_validate(const std::string& instance_path, const std::string& schedule_path) {
  const ProblemInstance instance =
      instance_from_json(read_text_file(instance_path));
  const SolvedSchedule solved =
      schedule_from_json(read_text_file(schedule_path), instance);
  const std::vector<Violation> report =
      validate(instance, solved.sources, solved.eval);
  if (report.empty()) {
    std::cout << "schedule is feasible\n";
    return 0;
  }
  for (const Violation& violation : report) {
    std::cout << "[" << to_string(violation.kind) << "] " << violation.detail << "\n";
  }
  std::cout << report.size() << " violation(s)\n";
  return 1;
}

int run_export_milp(const std::string& instance_path, const std::string& out_path) {
  const ProblemInstance instance =
      instance_from_json(read_text_file(instance_path));
  write_text_file(out_path, export_milp(instance));
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int run_sweep(const std::string& spec_path, const std::string& out_path,
              const std::string& raw_path, int jobs, bool no_runtime) {
  const SweepSpec spec = sweep_spec_from_json(read_text_file(spec_path));
  const std::vector<ResultRow> rows = run_sweep(spec, jobs, !no_runtime);
  write_text_file(out_path, results_to_csv(rows, !no_runtime));
  std::cout << "wrote " << out_path << ": " << rows.size() << " rows ("
            << spec.values.size() << " values x " << spec.schedulers.size()
            << " schedulers, " << spec.iterations << " iterations)\n";
  if (!raw_path.empty()) {
    write_text_file(raw_path, raw_results_to_csv(rows, !no_runtime));
    std::cout << "wrote " << raw_path << "\n";
  }
  return 0;
}

int run_compare(const std::string& results_path, const std::string& out_path) {
  const std::vector<ResultRow> rows =
      results_from_csv(read_text_file(results_path));
  const std::vector<ComparisonRow> table = compare(rows);
  write_text_file(out_path, comparison_to_csv(table));
  std::cout << "wrote " << out_path << ": " << table.size() << " rows\n";
  for (const ComparisonRow& row : table) {
    std::cout << to_string(row.axis) << "=" << row.value << " vs "
              << to_string(row.other) << ": " << format_seconds(row.reduction_pct)
              << "% reduction\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coflowsim: multi-source coflow scheduling on multi-hop edge networks"};
  app.require_subcommand(1);

  GeneratorConfig config;
  std::string out_path;
  auto* generate = app.add_subcommand("generate", "Generate a random instance file");
  generate->add_option("--devices", config.num_devices, "Total devices")
      ->capture_default_str();
  generate->add_option("--coflows", config.num_coflows, "Requester devices / coflows")
      ->capture_default_str();
  generate->add_option("--flows", config.flows_per_coflow, "Flows per coflow")
      ->capture_default_str();
  generate->add_option("--sources", config.sources_per_flow, "Source options per flow")
      ->capture_default_str();
  generate->add_option("--mean-bandwidth", config.mean_bandwidth_mbps,
                       "Mean link bandwidth (Mbps)")->capture_default_str();
  generate->add_option("--bandwidth-spread", config.bandwidth_spread,
                       "Bandwidth sd as a fraction of the mean")->capture_default_str();
  generate->add_option("--mean-data", config.mean_data_mb, "Mean flow data (Mb)")
      ->capture_default_str();
  generate->add_option("--data-spread", config.data_spread,
                       "Data sd as a fraction of the mean")->capture_default_str();
  generate->add_option("--release-scale", config.release_scale,
                       "Release time scale factor")->capture_default_str();
  generate->add_option("--seed", config.rng_seed, "RNG seed")->capture_default_str();
  generate->add_option("--out", out_path, "Instance file to write")->required();

  std::string scheduler_name;
  std::string instance_path;
  std::string schedule_path;
  std::uint64_t solve_seed = 0;
  auto* solve = app.add_subcommand("solve", "Schedule an instance and report the sum of CCT");
  solve->add_option("--scheduler", scheduler_name,
                    "One of: random, fls, cfls, bas, flord, scasa, scasa_flord")
      ->required();
  solve->add_option("--instance", instance_path, "Instance file")->required();
  solve->add_option("--out", out_path, "Schedule file to write");
  solve->add_option("--seed", solve_seed, "Seed for the random scheduler")
      ->capture_default_str();

  auto* validate_cmd = app.add_subcommand("validate", "Check a schedule file for feasibility");
  validate_cmd->add_option("--instance", instance_path, "Instance file")->required();
  validate_cmd->add_option("--schedule", schedule_path, "Schedule file")->required();

  auto* export_cmd = app.add_subcommand("export-milp",
                                        "Write the instance's MILP model in LP format");
  export_cmd->add_option("--instance", instance_path, "Instance file")->required();
  export_cmd->add_option("--out", out_path, "LP file to write")->required();

  std::string spec_path;
  std::string raw_path;
  int jobs = 1;
  bool no_runtime = false;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep from a spec file");
  sweep->add_option("--spec", spec_path, "Sweep spec file")->required();
  sweep->add_option("--out", out_path, "Results CSV to write")->required();
  sweep->add_option("--raw", raw_path, "Optional per-iteration CSV");
  sweep->add_option("--jobs", jobs, "Parallel sweep cells")->capture_default_str();
  sweep->add_flag("--no-runtime", no_runtime,
                  "Leave runtime cells empty so output is byte-reproducible");

  std::string results_path;
  auto* compare_cmd = app.add_subcommand("compare",
                                         "Reduction of scasa vs the other schedulers in a results CSV");
  compare_cmd->add_option("--results", results_path, "Results CSV from sweep")->required();
  compare_cmd->add_option("--out", out_path, "Comparison CSV to write")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return run_generate(config, out_path);
    if (solve->parsed()) return run_solve(scheduler_name, instance_path, out_path, solve_seed);
    if (validate_cmd->parsed()) return run_validate(instance_path, schedule_path);
    if (export_cmd->parsed()) return run_export_milp(instance_path, out_path);
    if (sweep->parsed()) return run_sweep(spec_path, out_path, raw_path, jobs, no_runtime);
    if (compare_cmd->parsed()) return run_compare(results_path, out_path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const GenerationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

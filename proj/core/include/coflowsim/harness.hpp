#pragma once

#include <string>
#include <vector>

#include "coflowsim/schedulers.hpp"

namespace coflowsim {

enum class SweepAxis {
  Sources,
  Flows,
  Coflows,
  ReleaseScale,
  Devices,
  DevicesAndCoflows2To1,
};

std::string to_string(SweepAxis axis);
bool axis_from_string(const std::string& name, SweepAxis& axis);

struct SweepSpec {
  SweepAxis axis = SweepAxis::Sources;
  std::vector<double> values;  // strictly increasing
  GeneratorConfig base;
  int iterations = 30;
  std::vector<SchedulerId> schedulers;

  void validate() const;  // throws std::invalid_argument
};

struct ResultRow {
  SweepAxis axis = SweepAxis::Sources;
  double value = 0.0;
  SchedulerId scheduler = SchedulerId::Scasa;
  double mean_sum_cct_s = 0.0;
  double ci95_s = 0.0;
  double mean_runtime_s = 0.0;
  int n = 0;
  std::vector<double> raw_sum_cct_s;  // per iteration
  std::vector<double> raw_runtime_s;
};

struct ComparisonRow {
  SweepAxis axis = SweepAxis::Sources;
  double value = 0.0;
  SchedulerId other = SchedulerId::Cfls;
  double mean_other_s = 0.0;
  double mean_scasa_s = 0.0;
  double reduction_pct = 0.0;  // (other - scasa) / other * 100
};

/// Returns the base config with the axis value applied. The devices axis
/// holds coflows constant; the 2:1 axis sets coflows to half the devices.
GeneratorConfig apply_axis(const GeneratorConfig& base, SweepAxis axis,
                           double value);

/// Instance seed for one sweep cell; paired so every scheduler sees the same
/// instance within a cell.
std::uint64_t cell_seed(const SweepSpec& spec, int value_index, int iteration);

/// Runs every (value, iteration) cell, evaluating all schedulers on the same
/// generated instance, and aggregates per (value, scheduler). Cells may run
/// on `jobs` threads; output is ordered and byte-stable regardless.
/// Generation failures abort the sweep with the failing cell identified.
std::vector<ResultRow> run_sweep(const SweepSpec& spec, int jobs = 1,
                                 bool measure_runtime = true);

/// Percentage reduction of the scasa mean against every other scheduler at
/// each axis value. Throws if scasa is missing or scheduler sets differ
/// across values.
std::vector<ComparisonRow> compare(const std::vector<ResultRow>& rows);

/// Sample mean and normal-approximation 95% interval half-width
/// (1.96 * sd / sqrt(n); zero for fewer than two samples).
double mean_of(const std::vector<double>& samples);
double ci95_half_width(const std::vector<double>& samples);

/// header: axis,value,scheduler,mean_sum_cct_s,ci95_s,mean_runtime_s,n
/// With include_runtime false the runtime cells are left empty, which keeps
/// the file byte-stable across runs.
std::string results_to_csv(const std::vector<ResultRow>& rows,
                           bool include_runtime = true);
std::vector<ResultRow> results_from_csv(const std::string& text);

/// Per-iteration values for external plotting.
std::string raw_results_to_csv(const std::vector<ResultRow>& rows,
                               bool include_runtime = true);

std::string comparison_to_csv(const std::vector<ComparisonRow>& rows);

}  // namespace coflowsim

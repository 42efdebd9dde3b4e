#include "coflowsim/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace coflowsim {

namespace {

std::string csv_num(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell.push_back(c);
    }
  }
  cells.push_back(cell);
  return cells;
}

}  // namespace

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Sources: return "sources";
    case SweepAxis::Flows: return "flows";
    case SweepAxis::Coflows: return "coflows";
    case SweepAxis::ReleaseScale: return "release_scale";
    case SweepAxis::Devices: return "devices";
    case SweepAxis::DevicesAndCoflows2To1: return "devices_and_coflows_2to1";
  }
  return "unknown";
}

bool axis_from_string(const std::string& name, SweepAxis& axis) {
  for (SweepAxis candidate :
       {SweepAxis::Sources, SweepAxis::Flows, SweepAxis::Coflows,
        SweepAxis::ReleaseScale, SweepAxis::Devices,
        SweepAxis::DevicesAndCoflows2To1}) {
    if (name == to_string(candidate)) {
      axis = candidate;
      return true;
    }
  }
  return false;
}

void SweepSpec::validate() const {
  if (values.empty()) throw std::invalid_argument("sweep: values must be non-empty");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) {
      throw std::invalid_argument("sweep: values must be strictly increasing");
    }
  }
  if (iterations < 1) throw std::invalid_argument("sweep: iterations must be >= 1");
  if (schedulers.empty()) throw std::invalid_argument("sweep: schedulers must be non-empty");
}

GeneratorConfig apply_axis(const GeneratorConfig& base, SweepAxis axis,
                           double value) {
  GeneratorConfig config = base;
  const int int_value = static_cast<int>(std::llround(value));
  switch (axis) {
    case SweepAxis::Sources: config.sources_per_flow = int_value; break;
    case SweepAxis::Flows: config.flows_per_coflow = int_value; break;
    case SweepAxis::Coflows: config.num_coflows = int_value; break;
    case SweepAxis::ReleaseScale: config.release_scale = value; break;
    case SweepAxis::Devices: config.num_devices = int_value; break;
    case SweepAxis::DevicesAndCoflows2To1:
      config.num_devices = int_value;
      config.num_coflows = int_value / 2;
      break;
  }
  return config;
}

std::uint64_t cell_seed(const SweepSpec& spec, int value_index, int iteration) {
  return mix_seed(spec.base.rng_seed, static_cast<std::uint64_t>(value_index),
                  static_cast<std::uint64_t>(iteration));
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec, int jobs,
                                 bool measure_runtime) {
  spec.validate();
  const int num_values = static_cast<int>(spec.values.size());
  const int num_schedulers = static_cast<int>(spec.schedulers.size());
  const int cells = num_values * spec.iterations;

  // raw[value][scheduler][iteration]
  std::vector<std::vector<std::vector<double>>> raw_cct(
      static_cast<std::size_t>(num_values),
      std::vector<std::vector<double>>(
          static_cast<std::size_t>(num_schedulers),
          std::vector<double>(static_cast<std::size_t>(spec.iterations), 0.0)));
  auto raw_runtime = raw_cct;

  std::atomic<int> next_cell{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::string error_message;

  const auto worker = [&]() {
    while (!failed.load()) {
      const int cell = next_cell.fetch_add(1);
      if (cell >= cells) break;
      const int value_index = cell / spec.iterations;
      const int iteration = cell % spec.iterations;
      try {
        GeneratorConfig config =
            apply_axis(spec.base, spec.axis,
                       spec.values[static_cast<std::size_t>(value_index)]);
        config.rng_seed = cell_seed(spec, value_index, iteration);
        const ProblemInstance instance = generate_instance(config);
        for (int k = 0; k < num_schedulers; ++k) {
          const SchedulerId id = spec.schedulers[static_cast<std::size_t>(k)];
          const std::uint64_t scheduler_seed = mix_seed(
              config.rng_seed, 0x5eedULL, static_cast<std::uint64_t>(id));
          const auto t0 = std::chrono::steady_clock::now();
          const SolvedSchedule solved = solve_with(instance, id, scheduler_seed);
          const auto t1 = std::chrono::steady_clock::now();
          raw_cct[static_cast<std::size_t>(value_index)][static_cast<std::size_t>(k)]
                 [static_cast<std::size_t>(iteration)] = solved.eval.sum_cct_s;
          raw_runtime[static_cast<std::size_t>(value_index)][static_cast<std::size_t>(k)]
                     [static_cast<std::size_t>(iteration)] =
                         measure_runtime
                             ? std::chrono::duration<double>(t1 - t0).count()
                             : 0.0;
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) {
          error_message = "sweep cell (value=" +
                          csv_num(spec.values[static_cast<std::size_t>(value_index)]) +
                          ", iteration=" + std::to_string(iteration) +
                          ") failed: " + e.what();
        }
      }
    }
  };

  const int thread_count = std::max(1, std::min(jobs, cells));
  if (thread_count == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(thread_count));
    for (int t = 0; t < thread_count; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  if (failed.load()) throw GenerationError(error_message);

  std::vector<ResultRow> rows;
  rows.reserve(static_cast<std::size_t>(num_values * num_schedulers));
  for (int a = 0; a < num_values; ++a) {
    for (int k = 0; k < num_schedulers; ++k) {
      ResultRow row;
      row.axis = spec.axis;
      row.value = spec.values[static_cast<std::size_t>(a)];
      row.scheduler = spec.schedulers[static_cast<std::size_t>(k)];
      row.raw_sum_cct_s = raw_cct[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)];
      row.raw_runtime_s =
          raw_runtime[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)];
      row.n = spec.iterations;
      row.mean_sum_cct_s = mean_of(row.raw_sum_cct_s);
      row.ci95_s = ci95_half_width(row.raw_sum_cct_s);
      row.mean_runtime_s = mean_of(row.raw_runtime_s);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<ComparisonRow> compare(const std::vector<ResultRow>& rows) {
  // Group rows by axis value, preserving first-seen order.
  std::vector<double> values;
  for (const ResultRow& row : rows) {
    if (values.empty() || values.back() != row.value) {
      bool seen = false;
      for (double v : values) seen = seen || v == row.value;
      if (!seen) values.push_back(row.value);
    }
  }

  std::vector<ComparisonRow> result;
  std::vector<std::string> reference_set;
  for (std::size_t vi = 0; vi < values.size(); ++vi) {
    const double value = values[vi];
    const ResultRow* scasa_row = nullptr;
    std::vector<const ResultRow*> others;
    std::vector<std::string> this_set;
    for (const ResultRow& row : rows) {
      if (row.value != value) continue;
      this_set.push_back(to_string(row.scheduler));
      if (row.scheduler == SchedulerId::Scasa) {
        scasa_row = &row;
      } else {
        others.push_back(&row);
      }
    }
    if (scasa_row == nullptr) {
      throw std::invalid_argument("compare: no scasa row at value " + csv_num(value));
    }
    if (vi == 0) {
      reference_set = this_set;
    } else if (this_set != reference_set) {
      throw std::invalid_argument("compare: scheduler sets differ across axis values");
    }
    for (const ResultRow* other : others) {
      ComparisonRow cmp;
      cmp.axis = other->axis;
      cmp.value = value;
      cmp.other = other->scheduler;
      cmp.mean_other_s = other->mean_sum_cct_s;
      cmp.mean_scasa_s = scasa_row->mean_sum_cct_s;
      cmp.reduction_pct =
          (other->mean_sum_cct_s - scasa_row->mean_sum_cct_s) /
          other->mean_sum_cct_s * 100.0;
      result.push_back(cmp);
    }
  }
  return result;
}

double mean_of(const std::vector<double>& samples) {
  if (samples.empty()) return 0.0;
  double sum = 0.0;
  for (double x : samples) sum += x;
  return sum / static_cast<double>(samples.size());
}

double ci95_half_width(const std::vector<double>& samples) {
  const std::size_t n = samples.size();
  if (n < 2) return 0.0;
  const double mean = mean_of(samples);
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return 1.96 * sd / std::sqrt(static_cast<double>(n));
}

std::string results_to_csv(const std::vector<ResultRow>& rows,
                           bool include_runtime) {
  std::ostringstream csv;
  csv << "axis,value,scheduler,mean_sum_cct_s,ci95_s,mean_runtime_s,n\n";
  for (const ResultRow& row : rows) {
    csv << to_string(row.axis) << ',' << csv_num(row.value) << ','
        << to_string(row.scheduler) << ',' << csv_num(row.mean_sum_cct_s) << ','
        << csv_num(row.ci95_s) << ','
        << (include_runtime ? csv_num(row.mean_runtime_s) : std::string()) << ','
        << row.n << '\n';
  }
  return csv.str();
}

std::vector<ResultRow> results_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("results csv: empty file");
  }
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != 7) {
      throw std::invalid_argument("results csv: expected 7 columns, got line: " + line);
    }
    ResultRow row;
    if (!axis_from_string(cells[0], row.axis)) {
      throw std::invalid_argument("results csv: unknown axis: " + cells[0]);
    }
    if (!scheduler_from_string(cells[2], row.scheduler)) {
      throw std::invalid_argument("results csv: unknown scheduler: " + cells[2]);
    }
    try {
      row.value = std::stod(cells[1]);
      row.mean_sum_cct_s = std::stod(cells[3]);
      row.ci95_s = std::stod(cells[4]);
      row.mean_runtime_s = cells[5].empty() ? 0.0 : std::stod(cells[5]);
      row.n = std::stoi(cells[6]);
    } catch (const std::exception&) {
      throw std::invalid_argument("results csv: malformed numeric cell in: " + line);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string raw_results_to_csv(const std::vector<ResultRow>& rows,
                               bool include_runtime) {
  std::ostringstream csv;
  csv << "axis,value,scheduler,iteration,sum_cct_s,runtime_s\n";
  for (const ResultRow& row : rows) {
    for (std::size_t t = 0; t < row.raw_sum_cct_s.size(); ++t) {
      csv << to_string(row.axis) << ',' << csv_num(row.value) << ','
          << to_string(row.scheduler) << ',' << t << ','
          << csv_num(row.raw_sum_cct_s[t]) << ','
          << (include_runtime ? csv_num(row.raw_runtime_s[t]) : std::string())
          << '\n';
    }
  }
  return csv.str();
}

std::string comparison_to_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream csv;
  csv << "axis,value,scheduler,mean_sum_cct_s,scasa_mean_sum_cct_s,reduction_pct\n";
  for (const ComparisonRow& row : rows) {
    csv << to_string(row.axis) << ',' << csv_num(row.value) << ','
        << to_string(row.other) << ',' << csv_num(row.mean_other_s) << ','
        << csv_num(row.mean_scasa_s) << ',' << csv_num(row.reduction_pct) << '\n';
  }
  return csv.str();
}

}  // namespace coflowsim

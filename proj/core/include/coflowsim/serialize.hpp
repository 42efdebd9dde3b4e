#pragma once

#include <stdexcept>
#include <string>

#include "coflowsim/harness.hpp"
#include "coflowsim/schedule.hpp"

namespace coflowsim {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Instance file: a versioned JSON document with the generating config, the
/// network (devices, links, bandwidths), and every coflow with its flows and
/// source options, paths spelled out as device sequences. Round-trips
/// losslessly.
std::string instance_to_json(const ProblemInstance& instance);
ProblemInstance instance_from_json(const std::string& text);

/// Schedule file: chosen source index per flow, the global priority order as
/// (coflow, flow) pairs, and the evaluated start/finish/FCT/CCT times.
std::string schedule_to_json(const SolvedSchedule& solved,
                             const ProblemInstance& instance);
/// Binds a schedule file to its instance; shapes are checked. A file without
/// an evaluation section is evaluated on load.
SolvedSchedule schedule_from_json(const std::string& text,
                                  const ProblemInstance& instance);

/// Sweep spec file: axis, values, iterations, scheduler list, base config.
std::string sweep_spec_to_json(const SweepSpec& spec);
SweepSpec sweep_spec_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace coflowsim

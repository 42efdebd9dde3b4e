#include "coflowsim/serialize.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace coflowsim {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

json checked_parse(const std::string& text, const char* expected_format) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != expected_format) {
    throw ParseError(std::string("not a ") + expected_format + " document");
  }
  if (doc.value("version", 0) != kFormatVersion) {
    throw ParseError(std::string("unsupported ") + expected_format + " version");
  }
  return doc;
}

template <class T>
T require(const json& obj, const char* key) {
  if (!obj.contains(key)) {
    throw ParseError(std::string("missing field: ") + key);
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("malformed field: ") + key);
  }
}

json config_to_json(const GeneratorConfig& config) {
  return json{{"num_devices", config.num_devices},
              {"num_coflows", config.num_coflows},
              {"flows_per_coflow", config.flows_per_coflow},
              {"sources_per_flow", config.sources_per_flow},
              {"mean_bandwidth_mbps", config.mean_bandwidth_mbps},
              {"bandwidth_spread", config.bandwidth_spread},
              {"mean_data_mb", config.mean_data_mb},
              {"data_spread", config.data_spread},
              {"release_scale", config.release_scale},
              {"rng_seed", config.rng_seed}};
}

GeneratorConfig config_from_json(const json& obj) {
  GeneratorConfig config;
  config.num_devices = require<int>(obj, "num_devices");
  config.num_coflows = require<int>(obj, "num_coflows");
  config.flows_per_coflow = require<int>(obj, "flows_per_coflow");
  config.sources_per_flow = require<int>(obj, "sources_per_flow");
  config.mean_bandwidth_mbps = require<double>(obj, "mean_bandwidth_mbps");
  config.bandwidth_spread = require<double>(obj, "bandwidth_spread");
  config.mean_data_mb = require<double>(obj, "mean_data_mb");
  config.data_spread = require<double>(obj, "data_spread");
  config.release_scale = require<double>(obj, "release_scale");
  config.rng_seed = require<std::uint64_t>(obj, "rng_seed");
  return config;
}

/// Device sequence (source ... requester) for a path stored as link ids.
std::vector<int> path_devices(const NetworkGraph& network, int start,
                              const std::vector<int>& links) {
  std::vector<int> devices{start};
  int cur = start;
  for (int link_id : links) {
    const Link& link = network.links[static_cast<std::size_t>(link_id)];
    cur = link.a == cur ? link.b : link.a;
    devices.push_back(cur);
  }
  return devices;
}

}  // namespace

std::string instance_to_json(const ProblemInstance& instance) {
  json devices = json::array();
  for (const Device& device : instance.network.devices) {
    devices.push_back(
        {{"id", device.id},
         {"x", device.x},
         {"y", device.y},
         {"kind", device.kind == DeviceKind::Requester ? "requester" : "generator"}});
  }
  json links = json::array();
  for (const Link& link : instance.network.links) {
    links.push_back({{"id", link.id},
                     {"a", link.a},
                     {"b", link.b},
                     {"bandwidth_mbps", link.bandwidth_mbps}});
  }
  json coflows = json::array();
  for (const Coflow& coflow : instance.coflows) {
    json flows = json::array();
    for (const Flow& flow : coflow.flows) {
      json sources = json::array();
      for (const SourceOption& option : flow.sources) {
        sources.push_back(
            {{"device", option.device},
             {"release_s", option.release_s},
             {"path_devices", path_devices(instance.network, option.device, option.path)}});
      }
      flows.push_back({{"data_mb", flow.data_mb}, {"sources", sources}});
    }
    coflows.push_back({{"requester", coflow.requester}, {"flows", flows}});
  }
  const json doc{{"format", "coflowsim-instance"},
                 {"version", kFormatVersion},
                 {"config", config_to_json(instance.config)},
                 {"network", json{{"devices", devices}, {"links", links}}},
                 {"coflows", coflows}};
  return doc.dump(2) + "\n";
}

ProblemInstance instance_from_json(const std::string& text) {
  const json doc = checked_parse(text, "coflowsim-instance");
  ProblemInstance instance;
  instance.config = config_from_json(require<json>(doc, "config"));

  const json network = require<json>(doc, "network");
  for (const json& item : require<json>(network, "devices")) {
    Device device;
    device.id = require<int>(item, "id");
    device.x = require<double>(item, "x");
    device.y = require<double>(item, "y");
    const std::string kind = require<std::string>(item, "kind");
    if (kind == "requester") {
      device.kind = DeviceKind::Requester;
    } else if (kind == "generator") {
      device.kind = DeviceKind::Generator;
    } else {
      throw ParseError("unknown device kind: " + kind);
    }
    if (device.id != static_cast<int>(instance.network.devices.size())) {
      throw ParseError("device ids must be contiguous from 0");
    }
    instance.network.devices.push_back(device);
  }
  for (const json& item : require<json>(network, "links")) {
    Link link;
    link.id = require<int>(item, "id");
    link.a = require<int>(item, "a");
    link.b = require<int>(item, "b");
    link.bandwidth_mbps = require<double>(item, "bandwidth_mbps");
    if (link.id != static_cast<int>(instance.network.links.size())) {
      throw ParseError("link ids must be contiguous from 0");
    }
    if (link.a < 0 || link.b < 0 ||
        link.a >= static_cast<int>(instance.network.devices.size()) ||
        link.b >= static_cast<int>(instance.network.devices.size()) ||
        link.a >= link.b) {
      throw ParseError("link endpoints malformed");
    }
    if (link.bandwidth_mbps <= 0.0) {
      throw ParseError("link bandwidth must be positive");
    }
    instance.network.links.push_back(link);
  }
  instance.network.rebuild_adjacency();

  int coflow_index = 0;
  for (const json& coflow_doc : require<json>(doc, "coflows")) {
    Coflow coflow;
    coflow.requester = require<int>(coflow_doc, "requester");
    int flow_index = 0;
    for (const json& flow_doc : require<json>(coflow_doc, "flows")) {
      Flow flow;
      flow.coflow = coflow_index;
      flow.index = flow_index++;
      flow.data_mb = require<double>(flow_doc, "data_mb");
      if (flow.data_mb <= 0.0) throw ParseError("flow data_mb must be positive");
      for (const json& source_doc : require<json>(flow_doc, "sources")) {
        SourceOption option;
        option.device = require<int>(source_doc, "device");
        option.release_s = require<double>(source_doc, "release_s");
        if (option.release_s < 0.0) throw ParseError("release_s must be >= 0");
        const std::vector<int> devices =
            require<std::vector<int>>(source_doc, "path_devices");
        if (devices.size() < 2 || devices.front() != option.device ||
            devices.back() != coflow.requester) {
          throw ParseError("path_devices must run from the source to the requester");
        }
        for (std::size_t i = 0; i + 1 < devices.size(); ++i) {
          const int link = instance.network.link_between(devices[i], devices[i + 1]);
          if (link < 0) {
            throw ParseError("path_devices uses a link absent from the network");
          }
          option.path.push_back(link);
        }
        flow.sources.push_back(std::move(option));
      }
      if (flow.sources.empty()) throw ParseError("every flow needs a source option");
      coflow.flows.push_back(std::move(flow));
    }
    if (coflow.flows.empty()) throw ParseError("every coflow needs a flow");
    instance.coflows.push_back(std::move(coflow));
    ++coflow_index;
  }
  if (instance.coflows.empty()) throw ParseError("instance has no coflows");
  instance.rebuild_index();
  return instance;
}

std::string schedule_to_json(const SolvedSchedule& solved,
                             const ProblemInstance& instance) {
  json sources = json::array();
  for (const Coflow& coflow : instance.coflows) {
    json per_coflow = json::array();
    for (const Flow& flow : coflow.flows) {
      per_coflow.push_back(
          solved.sources.chosen[static_cast<std::size_t>(
              instance.flow_index(flow.coflow, flow.index))]);
    }
    sources.push_back(per_coflow);
  }

  json priority = json::array();
  for (int f : solved.priority.order) {
    const Flow& flow = instance.flow_at(f);
    priority.push_back(json::array({flow.coflow, flow.index}));
  }

  json flows = json::array();
  int vertex = 0;
  for (int f = 0; f < instance.total_flows(); ++f) {
    const Flow& flow = instance.flow_at(f);
    const SourceOption& option = flow.sources[static_cast<std::size_t>(
        solved.sources.chosen[static_cast<std::size_t>(f)])];
    json hops = json::array();
    for (std::size_t hop = 0; hop < option.path.size(); ++hop) {
      hops.push_back({{"start_s", solved.eval.start_s[static_cast<std::size_t>(vertex)]},
                      {"finish_s", solved.eval.finish_s[static_cast<std::size_t>(vertex)]}});
      ++vertex;
    }
    flows.push_back({{"coflow", flow.coflow},
                     {"flow", flow.index},
                     {"fct_s", solved.eval.fct_s[static_cast<std::size_t>(f)]},
                     {"hops", hops}});
  }

  const json doc{{"format", "coflowsim-schedule"},
                 {"version", kFormatVersion},
                 {"sources", sources},
                 {"priority", priority},
                 {"evaluation", json{{"sum_cct_s", solved.eval.sum_cct_s},
                                     {"coflow_cct_s", solved.eval.cct_s},
                                     {"flows", flows}}}};
  return doc.dump(2) + "\n";
}

SolvedSchedule schedule_from_json(const std::string& text,
                                  const ProblemInstance& instance) {
  const json doc = checked_parse(text, "coflowsim-schedule");
  SolvedSchedule solved;

  const json sources = require<json>(doc, "sources");
  if (sources.size() != instance.coflows.size()) {
    throw ParseError("schedule sources do not match the instance's coflows");
  }
  solved.sources.chosen.resize(static_cast<std::size_t>(instance.total_flows()));
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const Coflow& coflow = instance.coflows[i];
    if (sources[i].size() != coflow.flows.size()) {
      throw ParseError("schedule sources do not match a coflow's flows");
    }
    for (std::size_t j = 0; j < sources[i].size(); ++j) {
      int chosen;
      try {
        chosen = sources[i][j].get<int>();
      } catch (const json::exception&) {
        throw ParseError("schedule sources must be integers");
      }
      if (chosen < 0 || chosen >= static_cast<int>(coflow.flows[j].sources.size())) {
        throw ParseError("schedule names a source index the flow does not have");
      }
      solved.sources.chosen[static_cast<std::size_t>(
          instance.flow_index(static_cast<int>(i), static_cast<int>(j)))] = chosen;
    }
  }

  const json priority = require<json>(doc, "priority");
  if (static_cast<int>(priority.size()) != instance.total_flows()) {
    throw ParseError("schedule priority does not cover every flow");
  }
  std::vector<char> seen(static_cast<std::size_t>(instance.total_flows()), 0);
  for (const json& entry : priority) {
    if (!entry.is_array() || entry.size() != 2) {
      throw ParseError("priority entries must be [coflow, flow] pairs");
    }
    const int coflow = entry[0].get<int>();
    const int flow = entry[1].get<int>();
    if (coflow < 0 || coflow >= static_cast<int>(instance.coflows.size()) ||
        flow < 0 ||
        flow >= static_cast<int>(
                    instance.coflows[static_cast<std::size_t>(coflow)].flows.size())) {
      throw ParseError("priority names an unknown flow");
    }
    const int global = instance.flow_index(coflow, flow);
    if (seen[static_cast<std::size_t>(global)]) {
      throw ParseError("priority lists a flow twice");
    }
    seen[static_cast<std::size_t>(global)] = 1;
    solved.priority.order.push_back(global);
  }

  if (!doc.contains("evaluation")) {
    solved.eval = evaluate(instance, solved.sources, solved.priority);
    return solved;
  }

  const json evaluation = require<json>(doc, "evaluation");
  solved.eval.sum_cct_s = require<double>(evaluation, "sum_cct_s");
  solved.eval.cct_s = require<std::vector<double>>(evaluation, "coflow_cct_s");
  if (solved.eval.cct_s.size() != instance.coflows.size()) {
    throw ParseError("evaluation coflow_cct_s does not match the instance");
  }
  const json flows = require<json>(evaluation, "flows");
  if (static_cast<int>(flows.size()) != instance.total_flows()) {
    throw ParseError("evaluation flows do not cover every flow");
  }

  // Canonical subflow layout (flow-major, hop-minor) under the chosen sources;
  // entries are placed by (coflow, flow) so file order does not matter.
  std::vector<int> offsets(static_cast<std::size_t>(instance.total_flows()), 0);
  int total_subflows = 0;
  for (int f = 0; f < instance.total_flows(); ++f) {
    offsets[static_cast<std::size_t>(f)] = total_subflows;
    total_subflows += static_cast<int>(
        instance.flow_at(f)
            .sources[static_cast<std::size_t>(solved.sources.chosen[static_cast<std::size_t>(f)])]
            .path.size());
  }
  solved.eval.start_s.assign(static_cast<std::size_t>(total_subflows), 0.0);
  solved.eval.finish_s.assign(static_cast<std::size_t>(total_subflows), 0.0);
  solved.eval.fct_s.resize(static_cast<std::size_t>(instance.total_flows()));
  std::vector<char> filled(static_cast<std::size_t>(instance.total_flows()), 0);
  for (const json& flow_doc : flows) {
    const int coflow = require<int>(flow_doc, "coflow");
    const int flow = require<int>(flow_doc, "flow");
    if (coflow < 0 || coflow >= static_cast<int>(instance.coflows.size()) ||
        flow < 0 ||
        flow >= static_cast<int>(
                    instance.coflows[static_cast<std::size_t>(coflow)].flows.size())) {
      throw ParseError("evaluation names an unknown flow");
    }
    const int global = instance.flow_index(coflow, flow);
    if (filled[static_cast<std::size_t>(global)]) {
      throw ParseError("evaluation lists a flow twice");
    }
    filled[static_cast<std::size_t>(global)] = 1;
    solved.eval.fct_s[static_cast<std::size_t>(global)] =
        require<double>(flow_doc, "fct_s");
    const SourceOption& option = instance.flow_at(global).sources[static_cast<std::size_t>(
        solved.sources.chosen[static_cast<std::size_t>(global)])];
    const json hops = require<json>(flow_doc, "hops");
    if (hops.size() != option.path.size()) {
      throw ParseError("evaluation hop count does not match the chosen path");
    }
    int vertex = offsets[static_cast<std::size_t>(global)];
    for (const json& hop_doc : hops) {
      solved.eval.start_s[static_cast<std::size_t>(vertex)] =
          require<double>(hop_doc, "start_s");
      solved.eval.finish_s[static_cast<std::size_t>(vertex)] =
          require<double>(hop_doc, "finish_s");
      ++vertex;
    }
  }
  return solved;
}

std::string sweep_spec_to_json(const SweepSpec& spec) {
  json schedulers = json::array();
  for (SchedulerId id : spec.schedulers) schedulers.push_back(to_string(id));
  const json doc{{"format", "coflowsim-sweep"},
                 {"version", kFormatVersion},
                 {"axis", to_string(spec.axis)},
                 {"values", spec.values},
                 {"iterations", spec.iterations},
                 {"schedulers", schedulers},
                 {"base", config_to_json(spec.base)}};
  return doc.dump(2) + "\n";
}

SweepSpec sweep_spec_from_json(const std::string& text) {
  const json doc = checked_parse(text, "coflowsim-sweep");
  SweepSpec spec;
  const std::string axis = require<std::string>(doc, "axis");
  if (!axis_from_string(axis, spec.axis)) {
    throw ParseError("unknown sweep axis: " + axis);
  }
  spec.values = require<std::vector<double>>(doc, "values");
  spec.iterations = require<int>(doc, "iterations");
  for (const std::string& name : require<std::vector<std::string>>(doc, "schedulers")) {
    SchedulerId id;
    if (!scheduler_from_string(name, id)) {
      throw ParseError("unknown scheduler: " + name);
    }
    spec.schedulers.push_back(id);
  }
  spec.base = config_from_json(require<json>(doc, "base"));
  spec.validate();
  return spec;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << content;
  if (!out) throw ParseError("write failed: " + path);
}

}  // namespace coflowsim

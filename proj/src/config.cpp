#include "waitgo/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace waitgo {

namespace {

[[noreturn]] void bad_value(const std::string& what, const std::string& value,
                            const std::string& valid) {
  throw std::invalid_argument("invalid " + what + " '" + value +
                              "' (expected " + valid + ")");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = item.find_last_not_of(" \t");
    parts.push_back(item.substr(first, last - first + 1));
  }
  if (parts.empty()) throw std::invalid_argument("empty value list '" + s + "'");
  return parts;
}

long long parse_int(const std::string& s, const std::string& what) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    bad_value(what, s, "an integer");
  return v;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t consumed = 0;
    const double v = std::stod(s, &consumed);
    if (consumed != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    bad_value(what, s, "a number");
  }
}

}  // namespace

ScenarioName parse_scenario(const std::string& s) {
  if (s == "out") return ScenarioName::out;
  if (s == "out_in") return ScenarioName::out_in;
  if (s == "in_out") return ScenarioName::in_out;
  bad_value("scenario", s, "out, out_in or in_out");
}

WorldKind parse_world(const std::string& s) {
  if (s == "stable") return WorldKind::stable;
  if (s == "changing") return WorldKind::changing;
  bad_value("world", s, "stable or changing");
}

PolicyKind parse_policy(const std::string& s) {
  if (s == "learn") return PolicyKind::learn;
  if (s == "wait") return PolicyKind::wait;
  if (s == "go") return PolicyKind::go;
  if (s == "random") return PolicyKind::random;
  if (s == "oracle") return PolicyKind::oracle;
  bad_value("policy", s, "learn, wait, go, random, oracle or all");
}

EstimatorKind parse_estimator(const std::string& s) {
  if (s == "linear") return EstimatorKind::linear;
  if (s == "tree") return EstimatorKind::tree;
  if (s == "bayesian") return EstimatorKind::bayesian;
  bad_value("estimator", s, "linear, tree or bayesian");
}

ResetMode parse_reset(const std::string& s) {
  if (s == "none") return ResetMode::none;
  if (s == "reset1") return ResetMode::reset1;
  if (s == "reset2") return ResetMode::reset2;
  bad_value("reset", s, "none, reset1 or reset2");
}

FeatureMode parse_features(const std::string& s) {
  if (s == "coords") return FeatureMode::coords;
  if (s == "id") return FeatureMode::id;
  bad_value("features", s, "coords or id");
}

std::optional<int> parse_memory_cap(const std::string& s) {
  if (s == "inf") return std::nullopt;
  const long long v = parse_int(s, "H");
  if (v <= 0) bad_value("H", s, "a positive integer or inf");
  return static_cast<int>(v);
}

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::learn: return "learn";
    case PolicyKind::wait: return "wait";
    case PolicyKind::go: return "go";
    case PolicyKind::random: return "random";
    case PolicyKind::oracle: return "oracle";
  }
  return "?";
}

std::string to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::linear: return "linear";
    case EstimatorKind::tree: return "tree";
    case EstimatorKind::bayesian: return "bayesian";
  }
  return "?";
}

std::string to_string(ResetMode mode) {
  switch (mode) {
    case ResetMode::none: return "none";
    case ResetMode::reset1: return "reset1";
    case ResetMode::reset2: return "reset2";
  }
  return "?";
}

std::string to_string(FeatureMode mode) {
  return mode == FeatureMode::coords ? "coords" : "id";
}

std::string memory_cap_string(const std::optional<int>& cap) {
  return cap ? std::to_string(*cap) : "inf";
}

void RunConfig::validate() const {
  timing.validate();
  kin.validate();
  if (scenarios.empty() || policies.empty() || estimators.empty() ||
      memory_caps.empty() || resets.empty() || proc_times.empty())
    throw std::invalid_argument("every sweep axis needs at least one value");
  if (num_traces <= 0) throw std::invalid_argument("traces must be > 0");
  if (days < 0) throw std::invalid_argument("days must be >= 0");
  for (double proc : proc_times)
    if (!(proc > 0.0)) throw std::invalid_argument("procT must be > 0");
  if (out_dir.empty()) throw std::invalid_argument("out_dir must not be empty");
}

void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value) {
  if (key == "scenario") {
    config.scenarios.clear();
    for (const auto& item : split_list(value))
      config.scenarios.push_back(parse_scenario(item));
  } else if (key == "world") {
    config.world = parse_world(value);
  } else if (key == "policy") {
    config.policies.clear();
    if (value == "all") {
      config.policies = {PolicyKind::learn, PolicyKind::wait, PolicyKind::go,
                         PolicyKind::random, PolicyKind::oracle};
    } else {
      for (const auto& item : split_list(value))
        config.policies.push_back(parse_policy(item));
    }
  } else if (key == "estimator") {
    config.estimators.clear();
    for (const auto& item : split_list(value))
      config.estimators.push_back(parse_estimator(item));
  } else if (key == "H") {
    config.memory_caps.clear();
    for (const auto& item : split_list(value))
      config.memory_caps.push_back(parse_memory_cap(item));
  } else if (key == "reset") {
    config.resets.clear();
    for (const auto& item : split_list(value))
      config.resets.push_back(parse_reset(item));
  } else if (key == "procT") {
    config.proc_times.clear();
    for (const auto& item : split_list(value))
      config.proc_times.push_back(parse_double(item, "procT"));
  } else if (key == "days") {
    config.days = static_cast<int>(parse_int(value, "days"));
  } else if (key == "traces") {
    config.num_traces = static_cast<int>(parse_int(value, "traces"));
  } else if (key == "seed") {
    config.seed = static_cast<std::uint64_t>(parse_int(value, "seed"));
  } else if (key == "out_dir") {
    config.out_dir = value;
  } else if (key == "svg") {
    if (value == "true" || value == "1") config.svg = true;
    else if (value == "false" || value == "0") config.svg = false;
    else bad_value("svg", value, "true or false");
  } else if (key == "features") {
    config.features = parse_features(value);
  } else if (key == "senseT") {
    config.timing.sense_s = parse_double(value, "senseT");
  } else if (key == "actionT") {
    config.timing.action_s = parse_double(value, "actionT");
  } else if (key == "cruise") {
    config.kin.cruise_speed = parse_double(value, "cruise");
  } else if (key == "accel") {
    config.kin.accel = parse_double(value, "accel");
  } else if (key == "takeoffT") {
    config.kin.takeoff_time = parse_double(value, "takeoffT");
  } else if (key == "landT") {
    config.kin.land_time = parse_double(value, "landT");
  } else if (key == "turnaroundT") {
    config.kin.turnaround_overhead = parse_double(value, "turnaroundT");
  } else {
    throw std::invalid_argument(
        "unknown config key '" + key +
        "' (valid: scenario, world, policy, estimator, H, reset, procT, days, "
        "traces, seed, out_dir, svg, features, senseT, actionT, cruise, accel, "
        "takeoffT, landT, turnaroundT)");
  }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("config file " + path.string() + " not found");
  std::string line;
  int line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                  ": expected key = value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      const auto b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                  ": expected key = value");
    try {
      apply_config_entry(config, key, value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                  ": " + e.what());
    }
  }
}

}  // namespace waitgo

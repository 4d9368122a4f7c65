#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "waitgo/regression.hpp"
#include "waitgo/scenario.hpp"
#include "waitgo/sim.hpp"

namespace waitgo {

// One experiment invocation. Vector-valued fields are sweep axes; the run
// executes their cross product. An empty optional in memory_caps means an
// unbounded history.
struct RunConfig {
  std::vector<ScenarioName> scenarios = {ScenarioName::out};
  WorldKind world = WorldKind::stable;
  std::vector<PolicyKind> policies = {PolicyKind::learn};
  std::vector<EstimatorKind> estimators = {EstimatorKind::tree};
  std::vector<std::optional<int>> memory_caps = {12};
  std::vector<ResetMode> resets = {ResetMode::none};
  std::vector<double> proc_times = {10.0};
  int days = 0;  // 0 = automatic: 31 for a stable world, 41 for a changing one
  int num_traces = 20;
  std::uint64_t seed = 42;
  std::string out_dir = "out";
  bool svg = false;
  FeatureMode features = FeatureMode::coords;
  TimingParams timing;  // proc_s is taken from proc_times per sweep point
  KinematicParams kin;

  int effective_days() const {
    if (days > 0) return days;
    return world == WorldKind::changing ? 41 : 31;
  }

  void validate() const;  // throws std::invalid_argument
};

// Enum <-> string conversions shared by the CLI, config files and CSV.
ScenarioName parse_scenario(const std::string& s);
WorldKind parse_world(const std::string& s);
PolicyKind parse_policy(const std::string& s);
EstimatorKind parse_estimator(const std::string& s);
ResetMode parse_reset(const std::string& s);
FeatureMode parse_features(const std::string& s);
std::optional<int> parse_memory_cap(const std::string& s);  // "inf" -> empty

std::string to_string(PolicyKind kind);
std::string to_string(EstimatorKind kind);
std::string to_string(ResetMode mode);
std::string to_string(FeatureMode mode);
std::string memory_cap_string(const std::optional<int>& cap);

// Applies `key = value` assignments from a config file (# starts a comment).
// Keys mirror the CLI flags (scenario, world, policy, estimator, H, reset,
// procT, days, traces, seed, out_dir, svg, features) plus timing/kinematic
// overrides (senseT, actionT, cruise, accel, takeoffT, landT, turnaroundT).
// Unknown keys raise std::invalid_argument naming the offender and the valid
// set; list-valued keys accept comma-separated sweeps.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

// Applies one key=value assignment (the config-file and CLI back end).
void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value);

}  // namespace waitgo

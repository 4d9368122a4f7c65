#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "waitgo/decision.hpp"
#include "waitgo/experience.hpp"
#include "waitgo/kinematics.hpp"
#include "waitgo/regression.hpp"
#include "waitgo/trace.hpp"
#include "waitgo/world.hpp"

namespace waitgo {

// Fixed per-visit durations.
struct TimingParams {
  double sense_s = 1.0;    // on-site data capture
  double proc_s = 10.0;    // on-board processing of the captured data
  double action_s = 10.0;  // extra stay when processing finds an event

  void validate() const;  // throws std::invalid_argument
};

// Throws std::invalid_argument unless proc_s is strictly shorter than the
// flight time of every leg on which a wait/go decision is made (all legs
// departing an interior waypoint). The initial home departure makes no
// decision and is exempt.
void validate_proc_constraint(const MissionPlan& plan, const TimingParams& timing,
                              const KinematicParams& kin);

// What happened at one interior waypoint.
struct VisitRecord {
  int wp_id = 0;
  int hour = 0;              // hour of day when sensing completed
  Decision choice = Decision::wait;
  int event = 0;
  double visit_s = 0.0;      // sensing through arrival readiness at next leg
  double penalty_s = 0.0;    // > 0 only when departing proved wrong
  double gain_s = 0.0;       // processing time saved by a correct departure
};

struct MissionReport {
  int day = 0;
  PolicyKind policy = PolicyKind::wait;
  double mission_time_s = 0.0;
  double takeoff_s = 0.0, first_leg_s = 0.0, land_s = 0.0;
  std::vector<VisitRecord> visits;
  double total_penalty_s = 0.0;
  int go_count = 0, wait_count = 0, event_count = 0;
};

// Probability estimate for (waypoint, hour); empty = no knowledge.
using ProbeFn = std::function<std::optional<double>(const Waypoint&, int)>;

// Simulates one mission day against pre-drawn events. The probe supplies
// p_hat to the policy (pass nullptr for policies that ignore it). Mission
// time decomposes exactly as takeoff + first leg + sum of visit times +
// landing.
MissionReport run_mission(const MissionPlan& plan, const TimingParams& timing,
                          const KinematicParams& kin, Policy& policy,
                          const ProbeFn& probe, const Trace& trace, int day);

// Expected mission time under the true event probabilities, summing the
// two-outcome branch of every visit analytically (the clock advances by
// expected visit durations, which pins each visit's hour). Supports the
// fixed policies, the coin-flip policy (expectation over the coin), and the
// clairvoyant policy; throws std::invalid_argument for the learning policy.
double expected_mission_time(const MissionPlan& plan, const WorldModel& world,
                             const TimingParams& timing, const KinematicParams& kin,
                             PolicyKind policy, int day);

enum class ResetMode { none, reset1, reset2 };

// Full multi-day run configuration for one policy on one trace.
struct ExperimentSettings {
  PolicyKind policy = PolicyKind::learn;
  EstimatorKind estimator = EstimatorKind::tree;
  std::optional<int> memory_capacity = 12;  // per-(waypoint, hour) history cap
  ResetMode reset = ResetMode::none;
  int days = 31;
  std::uint64_t policy_seed = 0;  // coin-flip policy stream base
  std::uint64_t reset_seed = 0;   // outlier-detector forest stream base
  TimingParams timing;
  KinematicParams kin;
  FeatureMode features = FeatureMode::coords;
  RegressionParams regression;
  int op_hours = 2;  // hours of day one mission can span
  // When non-empty, experience and the penalty log round-trip through files
  // in this directory between simulated days.
  std::filesystem::path persist_dir;

  void validate() const;
};

struct DayOutcome {
  int day = 0;
  double mission_s = 0.0;
  double penalty_s = 0.0;
  double oracle_s = 0.0;  // clairvoyant mission time on the same events
  double ri = 0.0;        // (mission_s - oracle_s) / oracle_s
  bool reset_checked = false;
  bool reset_fired = false;
};

struct Scenario;  // see scenario.hpp

// Runs `settings.days` consecutive mission days of one policy on one trace.
// The learning policy starts with an empty memory (day 0 therefore waits
// everywhere), refits its estimator before each day on the relevant slice of
// memory, records outcomes after each day, and applies the configured change
// detector. Every day also runs the clairvoyant policy on the same events to
// baseline the day's relative increase.
std::vector<DayOutcome> run_policy_on_trace(const Scenario& scenario,
                                            const ExperimentSettings& settings,
                                            const Trace& trace);

}  // namespace waitgo

#include "waitgo/sim.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>

#include "waitgo/rng.hpp"
#include "waitgo/scenario.hpp"

namespace waitgo {

void TimingParams::validate() const {
  if (!(sense_s > 0.0)) throw std::invalid_argument("sense_s must be > 0");
  if (!(proc_s > 0.0)) throw std::invalid_argument("proc_s must be > 0");
  if (!(action_s > 0.0)) throw std::invalid_argument("action_s must be > 0");
}

namespace {

double leg_distance(const Waypoint& a, const Waypoint& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

int hour_of_day(double clock_s) {
  const int hour = static_cast<int>(std::floor(clock_s / 3600.0));
  return ((hour % 24) + 24) % 24;
}

}  // namespace

void validate_proc_constraint(const MissionPlan& plan, const TimingParams& timing,
                              const KinematicParams& kin) {
  plan.validate();
  timing.validate();
  kin.validate();
  // Decisions are made when departing waypoints[1] .. waypoints[N-2].
  for (std::size_t i = 1; i + 1 < plan.waypoints.size(); ++i) {
    const double d = leg_distance(plan.waypoints[i], plan.waypoints[i + 1]);
    if (!(timing.proc_s < flight_time(d, kin)))
      throw std::invalid_argument(
          "processing time " + std::to_string(timing.proc_s) +
          " s does not finish before the " + std::to_string(d) +
          " m leg departing waypoint " + std::to_string(plan.waypoints[i].id) +
          " completes; decisions would be meaningless");
  }
}

MissionReport run_mission(const MissionPlan& plan, const TimingParams& timing,
                          const KinematicParams& kin, Policy& policy,
                          const ProbeFn& probe, const Trace& trace, int day) {
  plan.validate();
  timing.validate();
  kin.validate();
  if (trace.plan_digest() != 0 && trace.plan_digest() != plan_hash(plan))
    throw std::runtime_error(
        "trace was generated for a different plan; regenerate traces");

  MissionReport report;
  report.day = day;
  report.policy = policy.kind();

  double clock_s = plan.start_hour * 3600.0;  // seconds from midnight
  report.takeoff_s = kin.takeoff_time;
  report.first_leg_s =
      flight_time(leg_distance(plan.waypoints[0], plan.waypoints[1]), kin);
  clock_s += report.takeoff_s + report.first_leg_s;
  double mission_s = report.takeoff_s + report.first_leg_s;

  const std::size_t n = plan.waypoints.size();
  report.visits.reserve(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Waypoint& wp = plan.waypoints[i];
    const double next_leg = leg_distance(wp, plan.waypoints[i + 1]);

    // Sense, then read the clock: outcomes are tied to the hour in which
    // sensing completed.
    clock_s += timing.sense_s;
    const int hour = hour_of_day(clock_s);
    const int event = trace.event(day, wp.id, hour);

    DecisionInputs inputs;
    inputs.penalty_s = penalty_time(next_leg, timing.proc_s, kin);
    inputs.proc_s = timing.proc_s;
    if (probe) inputs.p_hat = probe(wp, hour);
    const Decision choice = policy.decide(inputs);

    VisitRecord visit;
    visit.wp_id = wp.id;
    visit.hour = hour;
    visit.choice = choice;
    visit.event = event;
    const int d = choice == Decision::go ? 1 : 0;
    visit.penalty_s = (d && event) ? inputs.penalty_s : 0.0;
    visit.gain_s = (d && !event) ? timing.proc_s : 0.0;
    visit.visit_s = timing.sense_s + timing.proc_s + flight_time(next_leg, kin) +
                    visit.penalty_s - visit.gain_s +
                    (event ? timing.action_s : 0.0);

    clock_s += visit.visit_s - timing.sense_s;  // sensing already added
    mission_s += visit.visit_s;
    report.total_penalty_s += visit.penalty_s;
    report.go_count += d;
    report.wait_count += 1 - d;
    report.event_count += event;
    report.visits.push_back(visit);
  }

  report.land_s = kin.land_time;
  mission_s += report.land_s;
  report.mission_time_s = mission_s;
  return report;
}

double expected_mission_time(const MissionPlan& plan, const WorldModel& world,
                             const TimingParams& timing, const KinematicParams& kin,
                             PolicyKind policy, int day) {
  plan.validate();
  timing.validate();
  kin.validate();
  if (policy == PolicyKind::learn)
    throw std::invalid_argument(
        "expected_mission_time: the learning policy has no closed-form expectation");

  double clock_s = plan.start_hour * 3600.0;
  double total =
      kin.takeoff_time +
      flight_time(leg_distance(plan.waypoints[0], plan.waypoints[1]), kin);
  clock_s += total;

  const std::size_t n = plan.waypoints.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Waypoint& wp = plan.waypoints[i];
    const double next_leg = leg_distance(wp, plan.waypoints[i + 1]);

    clock_s += timing.sense_s;
    const int hour = hour_of_day(clock_s);
    const double p = world.true_prob(wp, day, hour);
    const double penalty = penalty_time(next_leg, timing.proc_s, kin);

    double depart_prob = 0.0;  // expectation of the go indicator
    switch (policy) {
      case PolicyKind::wait:
        break;
      case PolicyKind::go:
        depart_prob = 1.0;
        break;
      case PolicyKind::random:
        depart_prob = 0.5;
        break;
      case PolicyKind::oracle: {
        DecisionInputs inputs;
        inputs.p_hat = p;
        inputs.penalty_s = penalty;
        inputs.proc_s = timing.proc_s;
        depart_prob =
            expected_saving(Decision::go, inputs) >
                    expected_saving(Decision::wait, inputs)
                ? 1.0
                : 0.0;
        break;
      }
      case PolicyKind::learn:
        break;  // rejected above
    }

    const double expected_visit =
        timing.sense_s + timing.proc_s + flight_time(next_leg, kin) +
        p * depart_prob * penalty - (1.0 - p) * depart_prob * timing.proc_s +
        p * timing.action_s;
    clock_s += expected_visit - timing.sense_s;
    total += expected_visit;
  }
  return total + kin.land_time;
}

void ExperimentSettings::validate() const {
  timing.validate();
  kin.validate();
  if (days <= 0) throw std::invalid_argument("days must be > 0");
  if (memory_capacity && *memory_capacity <= 0)
    throw std::invalid_argument("memory capacity must be positive");
  if (reset != ResetMode::none && !memory_capacity)
    throw std::invalid_argument(
        "change detectors need a finite memory capacity for their window");
  if (op_hours < 1 || op_hours > 24)
    throw std::invalid_argument("op_hours must lie in [1, 24]");
}

std::vector<DayOutcome> run_policy_on_trace(const Scenario& scenario,
                                            const ExperimentSettings& settings,
                                            const Trace& trace) {
  settings.validate();
  const MissionPlan& plan = scenario.plan;
  validate_proc_constraint(plan, settings.timing, settings.kin);
  if (trace.days() < settings.days)
    throw std::runtime_error("trace covers " + std::to_string(trace.days()) +
                             " days, run needs " + std::to_string(settings.days));

  const bool learning = settings.policy == PolicyKind::learn;
  const FeatureEncoder encoder(plan, settings.features);

  MissionContext ctx;
  for (const Waypoint& wp : plan.pois()) ctx.waypoint_ids.insert(wp.id);
  ctx.start_hour = hour_of_day(plan.start_hour * 3600.0);
  ctx.op_hours = settings.op_hours;

  std::map<int, const Waypoint*> poi_by_id;
  for (const Waypoint& wp : plan.pois()) poi_by_id[wp.id] = &wp;

  ExperienceMemory memory(settings.memory_capacity);
  PenaltyLog penalty_log;

  std::filesystem::path memory_path, log_path;
  const bool persist = !settings.persist_dir.empty();
  if (persist) {
    std::filesystem::create_directories(settings.persist_dir);
    memory_path = settings.persist_dir / "experience.csv";
    log_path = settings.persist_dir / "penalty_log.csv";
  }

  std::vector<DayOutcome> outcomes;
  outcomes.reserve(static_cast<std::size_t>(settings.days));
  int epoch_first_day = 1;  // day 0 is the no-knowledge day

  for (int day = 0; day < settings.days; ++day) {
    if (persist && day > 0) {
      // The files are the only carrier of knowledge between days.
      memory = ExperienceMemory(settings.memory_capacity);
      memory.load(memory_path);
      penalty_log = PenaltyLog();
      penalty_log.load(log_path);
    }

    Policy policy =
        settings.policy == PolicyKind::random
            ? Policy::random(rng::mix3(settings.policy_seed, trace.seed(),
                                       static_cast<std::uint64_t>(day)))
            : Policy::make(settings.policy);

    ProbeFn probe;  // null for the fixed policies
    std::unique_ptr<ProbEstimator> estimator;
    if (learning) {
      const auto entries = memory.relevant_entries(ctx);
      std::vector<TrainingSample> samples;
      samples.reserve(entries.size());
      for (const ExperienceEntry& e : entries)
        samples.push_back(TrainingSample{
            encoder.encode(*poi_by_id.at(e.wp_id), e.hour),
            static_cast<double>(e.event)});
      estimator = fit_estimator(settings.estimator, samples, settings.regression);
      if (estimator) {
        probe = [&encoder, est = estimator.get()](const Waypoint& wp, int hour) {
          return std::optional<double>(est->predict(encoder.encode(wp, hour)));
        };
      } else {
        probe = [](const Waypoint&, int) { return std::optional<double>(); };
      }
    } else if (settings.policy == PolicyKind::oracle) {
      probe = [&scenario, day](const Waypoint& wp, int hour) {
        return std::optional<double>(scenario.world.true_prob(wp, day, hour));
      };
    }

    const MissionReport report = run_mission(plan, settings.timing, settings.kin,
                                             policy, probe, trace, day);

    double oracle_s = report.mission_time_s;
    if (settings.policy != PolicyKind::oracle) {
      Policy oracle = Policy::oracle();
      const ProbeFn truth = [&scenario, day](const Waypoint& wp, int hour) {
        return std::optional<double>(scenario.world.true_prob(wp, day, hour));
      };
      oracle_s = run_mission(plan, settings.timing, settings.kin, oracle, truth,
                             trace, day)
                     .mission_time_s;
    }

    DayOutcome outcome;
    outcome.day = day;
    outcome.mission_s = report.mission_time_s;
    outcome.penalty_s = report.total_penalty_s;
    outcome.oracle_s = oracle_s;
    outcome.ri = (report.mission_time_s - oracle_s) / oracle_s;

    if (learning) {
      for (const VisitRecord& v : report.visits)
        memory.record(v.wp_id, v.hour, v.event, day);
      penalty_log.add(day, report.total_penalty_s);

      if (settings.reset == ResetMode::reset1) {
        const int window = *settings.memory_capacity;
        outcome.reset_checked = day >= epoch_first_day + window;
        if (outcome.reset_checked &&
            reset1_check(penalty_log, day, window, epoch_first_day)) {
          outcome.reset_fired = true;
          memory.reset(day);
          epoch_first_day = day + 1;  // re-establish the baseline
        }
      } else if (settings.reset == ResetMode::reset2) {
        const int window = *settings.memory_capacity;
        outcome.reset_checked = day >= window - 1;
        if (outcome.reset_checked &&
            reset2_check(penalty_log, day, window,
                         rng::mix3(settings.reset_seed, trace.seed(),
                                   static_cast<std::uint64_t>(day)))) {
          outcome.reset_fired = true;
          memory.reset(day);
        }
      }

      if (persist) {
        memory.save(memory_path);
        penalty_log.save(log_path);
      }
    }

    outcomes.push_back(outcome);
  }
  return outcomes;
}

}  // namespace waitgo

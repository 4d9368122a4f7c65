#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <vector>

#include "waitgo/scenario.hpp"
#include "waitgo/sim.hpp"

using namespace waitgo;
namespace fs = std::filesystem;

namespace {

// Minimal tour: home, one waypoint 50 m out, home. Both legs 50 m.
MissionPlan single_poi_plan(double start_hour = 8.0) {
  MissionPlan plan;
  plan.waypoints = {{0, 0.0, 0.0}, {1, 50.0, 0.0}, {0, 0.0, 0.0}};
  plan.start_hour = start_hour;
  plan.name = "single";
  return plan;
}

// Trace for the single-waypoint plan with one fixed outcome per (day, hour).
Trace single_poi_trace(const std::vector<std::vector<int>>& events_by_day) {
  std::vector<std::uint8_t> events;
  for (const auto& day : events_by_day) {
    REQUIRE(day.size() == 24);
    for (int e : day) events.push_back(static_cast<std::uint8_t>(e));
  }
  return Trace(0, static_cast<int>(events_by_day.size()), {1}, std::move(events),
               0, "test");
}

std::vector<std::vector<int>> constant_days(int days, int event) {
  return std::vector<std::vector<int>>(static_cast<std::size_t>(days),
                                       std::vector<int>(24, event));
}

}  // namespace

TEST_CASE("mission accounting: hand-computed single-waypoint missions") {
  const MissionPlan plan = single_poi_plan();
  const TimingParams timing;
  const KinematicParams kin;
  // takeoff 8 + leg 14.5 + visit + land 10; flight(50) = 14.5, penalty = 16.

  SUBCASE("waiting, no event: 58 s") {
    Policy wait = Policy::always_wait();
    const Trace t = single_poi_trace(constant_days(1, 0));
    const MissionReport r = run_mission(plan, timing, kin, wait, nullptr, t, 0);
    CHECK(r.mission_time_s == doctest::Approx(58.0).epsilon(1e-12));
    CHECK(r.total_penalty_s == 0.0);
    CHECK(r.visits[0].visit_s == doctest::Approx(25.5));
  }

  SUBCASE("waiting, event: action time added, 68 s") {
    Policy wait = Policy::always_wait();
    const Trace t = single_poi_trace(constant_days(1, 1));
    const MissionReport r = run_mission(plan, timing, kin, wait, nullptr, t, 0);
    CHECK(r.mission_time_s == doctest::Approx(68.0).epsilon(1e-12));
    CHECK(r.total_penalty_s == 0.0);
    CHECK(r.visits[0].gain_s == 0.0);
  }

  SUBCASE("departing, no event: processing hidden in flight, 48 s") {
    Policy go = Policy::always_go();
    const Trace t = single_poi_trace(constant_days(1, 0));
    const MissionReport r = run_mission(plan, timing, kin, go, nullptr, t, 0);
    CHECK(r.mission_time_s == doctest::Approx(48.0).epsilon(1e-12));
    CHECK(r.visits[0].gain_s == doctest::Approx(10.0));
    CHECK(r.total_penalty_s == 0.0);
  }

  SUBCASE("departing, event: called back, 84 s") {
    Policy go = Policy::always_go();
    const Trace t = single_poi_trace(constant_days(1, 1));
    const MissionReport r = run_mission(plan, timing, kin, go, nullptr, t, 0);
    CHECK(r.mission_time_s == doctest::Approx(84.0).epsilon(1e-12));
    CHECK(r.total_penalty_s == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(r.visits[0].penalty_s == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(r.visits[0].gain_s == 0.0);
  }
}

TEST_CASE("visit invariants: penalties and gains are mutually exclusive") {
  const Scenario s = builtin_scenario(ScenarioName::out_in, WorldKind::stable);
  const TimingParams timing;
  const KinematicParams kin;
  const Trace trace = generate_trace(s.world, s.plan, 3, 11, "stable");
  for (PolicyKind kind : {PolicyKind::go, PolicyKind::random, PolicyKind::oracle}) {
    Policy policy = kind == PolicyKind::random ? Policy::random(5)
                                               : Policy::make(kind);
    ProbeFn probe;
    if (kind == PolicyKind::oracle) {
      probe = [&s](const Waypoint& wp, int hour) {
        return std::optional<double>(s.world.true_prob(wp, 0, hour));
      };
    }
    const MissionReport r = run_mission(s.plan, timing, kin, policy, probe, trace, 0);
    for (const VisitRecord& v : r.visits) {
      if (v.penalty_s > 0.0) {
        CHECK(v.choice == Decision::go);
        CHECK(v.event == 1);
      }
      if (v.gain_s > 0.0) {
        CHECK(v.choice == Decision::go);
        CHECK(v.event == 0);
        CHECK(v.gain_s == doctest::Approx(timing.proc_s));
      }
      CHECK(!(v.penalty_s > 0.0 && v.gain_s > 0.0));
    }
  }
}

TEST_CASE("mission time decomposes exactly into its accounting identity") {
  // Re-derive every component independently and compare, across randomized
  // policies and traces.
  const TimingParams timing;
  const KinematicParams kin;
  for (ScenarioName name :
       {ScenarioName::out, ScenarioName::out_in, ScenarioName::in_out}) {
    const Scenario s = builtin_scenario(name, WorldKind::stable);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const Trace trace = generate_trace(s.world, s.plan, 2, 100 + seed, "stable");
      Policy policy = Policy::random(seed);
      const MissionReport r =
          run_mission(s.plan, timing, kin, policy, nullptr, trace, 1);

      double expected = kin.takeoff_time;
      expected += flight_time(std::hypot(s.plan.waypoints[1].x - s.plan.waypoints[0].x,
                                         s.plan.waypoints[1].y - s.plan.waypoints[0].y),
                              kin);
      REQUIRE(r.visits.size() == s.plan.pois().size());
      for (std::size_t i = 0; i < r.visits.size(); ++i) {
        const VisitRecord& v = r.visits[i];
        const Waypoint& here = s.plan.waypoints[i + 1];
        const Waypoint& next = s.plan.waypoints[i + 2];
        const double leg = std::hypot(next.x - here.x, next.y - here.y);
        const int d = v.choice == Decision::go ? 1 : 0;
        const int e = v.event;
        const double visit =
            timing.sense_s + timing.proc_s + flight_time(leg, kin) +
            e * d * penalty_time(leg, timing.proc_s, kin) -
            (1 - e) * d * timing.proc_s + e * timing.action_s;
        CHECK(v.visit_s == doctest::Approx(visit).epsilon(1e-12));
        expected += visit;
      }
      expected += kin.land_time;
      CHECK(r.mission_time_s == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("visit hour is the hour in which sensing completes") {
  // Start at 8:59:42; takeoff (8 s) + 50 m leg (14.5 s) + sensing (1 s) ends
  // at 9:00:05.5, so the visit belongs to hour 9.
  const MissionPlan plan = single_poi_plan(8.0 + 3582.0 / 3600.0);
  std::vector<std::vector<int>> events = constant_days(1, 0);
  events[0][9] = 1;  // only hour 9 carries an event
  const Trace t = single_poi_trace(events);
  Policy wait = Policy::always_wait();
  const MissionReport r = run_mission(plan, TimingParams{}, KinematicParams{},
                                      wait, nullptr, t, 0);
  CHECK(r.visits[0].hour == 9);
  CHECK(r.visits[0].event == 1);
}

TEST_CASE("replaying the same trace reproduces the mission exactly") {
  const Scenario s = builtin_scenario(ScenarioName::in_out, WorldKind::stable);
  const Trace trace = generate_trace(s.world, s.plan, 2, 77, "stable");
  Policy a = Policy::random(3);
  Policy b = Policy::random(3);
  const MissionReport ra =
      run_mission(s.plan, TimingParams{}, KinematicParams{}, a, nullptr, trace, 1);
  const MissionReport rb =
      run_mission(s.plan, TimingParams{}, KinematicParams{}, b, nullptr, trace, 1);
  CHECK(ra.mission_time_s == rb.mission_time_s);
  CHECK(ra.total_penalty_s == rb.total_penalty_s);
  REQUIRE(ra.visits.size() == rb.visits.size());
  for (std::size_t i = 0; i < ra.visits.size(); ++i)
    CHECK(ra.visits[i].visit_s == rb.visits[i].visit_s);
}

TEST_CASE("under the waiting policy, traces only differ via action time") {
  const Scenario s = builtin_scenario(ScenarioName::out, WorldKind::stable);
  Policy wait = Policy::always_wait();
  const Trace t1 = generate_trace(s.world, s.plan, 1, 5, "stable");
  const Trace t2 = generate_trace(s.world, s.plan, 1, 6, "stable");
  const MissionReport r1 =
      run_mission(s.plan, TimingParams{}, KinematicParams{}, wait, nullptr, t1, 0);
  const MissionReport r2 =
      run_mission(s.plan, TimingParams{}, KinematicParams{}, wait, nullptr, t2, 0);
  const double dt = r1.mission_time_s - r2.mission_time_s;
  CHECK(dt == doctest::Approx(10.0 * (r1.event_count - r2.event_count)).epsilon(1e-12));
}

TEST_CASE("clairvoyant expected time never exceeds any other policy's") {
  const TimingParams timing;
  const KinematicParams kin;
  for (ScenarioName name :
       {ScenarioName::out, ScenarioName::out_in, ScenarioName::in_out}) {
    for (WorldKind kind : {WorldKind::stable, WorldKind::changing}) {
      const Scenario s = builtin_scenario(name, kind);
      for (int day : {0, 21, 30}) {
        const double oracle = expected_mission_time(s.plan, s.world, timing, kin,
                                                    PolicyKind::oracle, day);
        for (PolicyKind other :
             {PolicyKind::wait, PolicyKind::go, PolicyKind::random}) {
          const double t =
              expected_mission_time(s.plan, s.world, timing, kin, other, day);
          CHECK(oracle <= t + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("expected mission time rejects the learning policy") {
  const Scenario s = builtin_scenario(ScenarioName::out, WorldKind::stable);
  CHECK_THROWS_AS(expected_mission_time(s.plan, s.world, TimingParams{},
                                        KinematicParams{}, PolicyKind::learn, 0),
                  std::invalid_argument);
}

TEST_CASE("processing must finish before every decision leg completes") {
  const MissionPlan plan = single_poi_plan();
  TimingParams timing;
  timing.proc_s = 14.5;  // equals the 50 m leg flight time
  CHECK_THROWS_AS(validate_proc_constraint(plan, timing, KinematicParams{}),
                  std::invalid_argument);
  timing.proc_s = 14.4;
  CHECK_NOTHROW(validate_proc_constraint(plan, timing, KinematicParams{}));
}

TEST_CASE("experiment loop: day 0 of the learning policy waits everywhere") {
  const Scenario s = builtin_scenario(ScenarioName::out, WorldKind::stable);
  const Trace trace = generate_trace(s.world, s.plan, 3, 9, "stable");
  ExperimentSettings learn;
  learn.policy = PolicyKind::learn;
  learn.days = 1;
  ExperimentSettings wait = learn;
  wait.policy = PolicyKind::wait;
  const auto a = run_policy_on_trace(s, learn, trace);
  const auto b = run_policy_on_trace(s, wait, trace);
  CHECK(a[0].mission_s == doctest::Approx(b[0].mission_s).epsilon(1e-12));
}

TEST_CASE("experiment loop: relative increase is measured against the oracle") {
  const Scenario s = builtin_scenario(ScenarioName::out_in, WorldKind::stable);
  const Trace trace = generate_trace(s.world, s.plan, 2, 13, "stable");
  ExperimentSettings settings;
  settings.policy = PolicyKind::go;
  settings.days = 2;
  const auto outcomes = run_policy_on_trace(s, settings, trace);
  for (const DayOutcome& o : outcomes) {
    CHECK(o.oracle_s > 0.0);
    CHECK(o.ri == doctest::Approx((o.mission_s - o.oracle_s) / o.oracle_s));
    CHECK(o.mission_s + 1e-9 >= o.oracle_s);  // oracle is optimal per event
  }
  // The oracle policy's own RI is identically zero.
  ExperimentSettings oracle_settings;
  oracle_settings.policy = PolicyKind::oracle;
  oracle_settings.days = 2;
  for (const DayOutcome& o : run_policy_on_trace(s, oracle_settings, trace))
    CHECK(o.ri == 0.0);
}

TEST_CASE("experiment loop: learning beats the fixed policies once trained") {
  // One trace, stable world: after the memory warms up the learned decisions
  // should outperform always-wait on most days.
  const Scenario s = builtin_scenario(ScenarioName::out_in, WorldKind::stable);
  const Trace trace = generate_trace(s.world, s.plan, 20, 21, "stable");
  ExperimentSettings learn;
  learn.policy = PolicyKind::learn;
  learn.estimator = EstimatorKind::tree;
  learn.memory_capacity = 12;
  learn.days = 20;
  ExperimentSettings wait = learn;
  wait.policy = PolicyKind::wait;
  const auto a = run_policy_on_trace(s, learn, trace);
  const auto b = run_policy_on_trace(s, wait, trace);
  double learn_total = 0.0, wait_total = 0.0;
  for (int day = 12; day < 20; ++day) {
    learn_total += a[static_cast<std::size_t>(day)].mission_s;
    wait_total += b[static_cast<std::size_t>(day)].mission_s;
  }
  CHECK(learn_total < wait_total);
}

TEST_CASE("experiment loop: reset bookkeeping flags are coherent") {
  const Scenario s = builtin_scenario(ScenarioName::out, WorldKind::changing);
  const Trace trace = generate_trace(s.world, s.plan, 30, 31, "changing");
  ExperimentSettings settings;
  settings.policy = PolicyKind::learn;
  settings.memory_capacity = 6;
  settings.reset = ResetMode::reset1;
  settings.days = 30;
  const auto outcomes = run_policy_on_trace(s, settings, trace);
  int fired_days = 0;
  for (const DayOutcome& o : outcomes) {
    if (o.day < 7) CHECK(!o.reset_checked);  // first epoch arms at day 7
    if (o.reset_fired) {
      CHECK(o.reset_checked);
      ++fired_days;
    }
  }
  // The day-21 flip produces a penalty spike that the detector must catch.
  CHECK(fired_days >= 1);

  ExperimentSettings no_reset = settings;
  no_reset.reset = ResetMode::none;
  for (const DayOutcome& o : run_policy_on_trace(s, no_reset, trace)) {
    CHECK(!o.reset_checked);
    CHECK(!o.reset_fired);
  }
}

TEST_CASE("experiment loop: file persistence between days changes nothing") {
  const Scenario s = builtin_scenario(ScenarioName::out_in, WorldKind::stable);
  const Trace trace = generate_trace(s.world, s.plan, 8, 33, "stable");
  ExperimentSettings in_memory;
  in_memory.policy = PolicyKind::learn;
  in_memory.memory_capacity = 4;
  in_memory.days = 8;
  ExperimentSettings on_disk = in_memory;
  on_disk.persist_dir =
      fs::temp_directory_path() / "waitgo_sim_tests" / "persist";
  fs::remove_all(on_disk.persist_dir);

  const auto a = run_policy_on_trace(s, in_memory, trace);
  const auto b = run_policy_on_trace(s, on_disk, trace);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].mission_s == b[i].mission_s);
    CHECK(a[i].penalty_s == b[i].penalty_s);
  }
  CHECK(fs::exists(on_disk.persist_dir / "experience.csv"));
  CHECK(fs::exists(on_disk.persist_dir / "penalty_log.csv"));
}

TEST_CASE("experiment loop: settings and traces are validated") {
  const Scenario s = builtin_scenario(ScenarioName::out, WorldKind::stable);
  const Trace trace = generate_trace(s.world, s.plan, 2, 3, "stable");

  ExperimentSettings settings;
  settings.days = 5;  // more days than the trace has
  CHECK_THROWS_AS(run_policy_on_trace(s, settings, trace), std::runtime_error);

  settings.days = 2;
  settings.reset = ResetMode::reset1;
  settings.memory_capacity = std::nullopt;  // detector without a window
  CHECK_THROWS_AS(run_policy_on_trace(s, settings, trace), std::invalid_argument);

  // A trace generated for a different plan geometry is rejected. The shift
  // is small enough to keep the waypoint inside its probability region and
  // every leg longer than the processing time, so only the digest differs.
  Scenario other = s;
  other.plan.waypoints[10].x += 1.0;
  ExperimentSettings ok;
  ok.days = 2;
  CHECK_THROWS_AS(run_policy_on_trace(other, ok, trace), std::runtime_error);
}

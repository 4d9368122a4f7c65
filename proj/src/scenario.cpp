#include "waitgo/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace waitgo {

std::string to_string(ScenarioName name) {
  switch (name) {
    case ScenarioName::out: return "out";
    case ScenarioName::out_in: return "out_in";
    case ScenarioName::in_out: return "in_out";
  }
  throw std::invalid_argument("unknown scenario");
}

std::string to_string(WorldKind kind) {
  return kind == WorldKind::stable ? "stable" : "changing";
}

namespace {

constexpr int kCols = 10;
constexpr int kRows = 5;
constexpr double kSpacing = 50.0;  // m
constexpr double kLowProb = 0.1;
constexpr double kHighProb = 0.6;
// Sweep-order position (1-based) where the block region starts; the block
// spans half the grid (25 waypoints), so the sweep covers most of the belt,
// then the whole block, then the rest. The two regions run on opposite
// schedules: the belt sits at 0.1 all day and rises to 0.6 during the window,
// while the block sits at 0.6 all day and drops to 0.1 during the window.
constexpr int kBlockStart = 19;
constexpr int kBlockEnd = 43;  // inclusive

// Grid cell of a 1-based sweep position (row-major, alternating direction).
struct Cell { int row, col; };
Cell cell_of_position(int pos) {
  const int row = (pos - 1) / kCols;
  const int offset = (pos - 1) % kCols;
  const int col = row % 2 == 0 ? offset : kCols - 1 - offset;
  return {row, col};
}

MissionPlan make_grid_plan() {
  MissionPlan plan;
  const Waypoint home{0, -30.0, 0.0};
  plan.waypoints.push_back(home);
  for (int pos = 1; pos <= kCols * kRows; ++pos) {
    const Cell c = cell_of_position(pos);
    plan.waypoints.push_back(Waypoint{pos, c.col * kSpacing, c.row * kSpacing});
  }
  plan.waypoints.push_back(home);
  plan.name = "grid10x5";
  plan.validate();
  return plan;
}

// Tiles a row segment [col_lo, col_hi] with a half-spacing halo.
Rect row_rect(int row, int col_lo, int col_hi) {
  return Rect{col_lo * kSpacing - kSpacing / 2, row * kSpacing - kSpacing / 2,
              col_hi * kSpacing + kSpacing / 2, row * kSpacing + kSpacing / 2};
}

ProbabilityField make_field(bool flipped) {
  // Collect the block region as row segments of grid cells.
  struct Segment { int row, col_lo, col_hi; bool high; };
  std::vector<Segment> segments;
  for (int row = 0; row < kRows; ++row) {
    // Which columns of this row fall inside the block?
    int lo = kCols, hi = -1;
    for (int col = 0; col < kCols; ++col) {
      const int offset = row % 2 == 0 ? col : kCols - 1 - col;
      const int pos = row * kCols + offset + 1;
      if (pos >= kBlockStart && pos <= kBlockEnd) {
        lo = std::min(lo, col);
        hi = std::max(hi, col);
      }
    }
    if (hi < 0) {
      segments.push_back({row, 0, kCols - 1, false});
    } else {
      if (lo > 0) segments.push_back({row, 0, lo - 1, false});
      segments.push_back({row, lo, hi, true});
      if (hi < kCols - 1) segments.push_back({row, hi + 1, kCols - 1, false});
    }
  }

  ProbabilityField field;
  for (const Segment& s : segments) {
    Region region;
    region.rect = row_rect(s.row, s.col_lo, s.col_hi);
    const double base = s.high ? kHighProb : kLowProb;
    const double window = s.high ? kLowProb : kHighProb;
    region.base_prob = flipped ? 0.7 - base : base;
    region.window_prob = flipped ? 0.7 - window : window;
    field.regions.push_back(region);
  }
  return field;
}

// Start hour such that half of the expected optimally-flown mission lies on
// each side of `boundary_hour`. Solved by bisection on
// g(s) = s + T(s) / (2 * 3600) - boundary, where T is piecewise constant in
// s (visit hours quantize), so the result is exact to the solver tolerance.
double solve_start_hour(MissionPlan plan, const WorldModel& world,
                        const TimingParams& timing, const KinematicParams& kin,
                        double boundary_hour) {
  const auto g = [&](double s) {
    plan.start_hour = s;
    const double t = expected_mission_time(plan, world, timing, kin,
                                           PolicyKind::oracle, 0);
    return s + t / (2.0 * 3600.0) - boundary_hour;
  };
  double lo = boundary_hour - 1.0;
  double hi = boundary_hour - 1e-3;
  if (!(g(lo) < 0.0) || !(g(hi) > 0.0))
    throw std::logic_error("start-hour solve: no sign change in bracket");
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Scenario builtin_scenario(ScenarioName name, WorldKind kind,
                          const TimingParams& timing, const KinematicParams& kin) {
  timing.validate();
  kin.validate();

  Scenario scenario;
  scenario.name = name;
  scenario.kind = kind;
  scenario.plan = make_grid_plan();

  scenario.world.before = make_field(false);
  scenario.world.after = make_field(true);
  scenario.world.before.validate_covers(scenario.plan);
  scenario.world.after.validate_covers(scenario.plan);
  if (kind == WorldKind::changing) scenario.world.change_day = kChangeDay;

  switch (name) {
    case ScenarioName::out:
      scenario.plan.start_hour = 8.0;
      break;
    case ScenarioName::out_in:
      scenario.plan.start_hour = solve_start_hour(
          scenario.plan, scenario.world, timing, kin,
          scenario.world.before.window_start_hour);
      break;
    case ScenarioName::in_out:
      scenario.plan.start_hour = solve_start_hour(
          scenario.plan, scenario.world, timing, kin,
          scenario.world.before.window_end_hour);
      break;
  }
  validate_proc_constraint(scenario.plan, timing, kin);
  return scenario;
}

}  // namespace waitgo

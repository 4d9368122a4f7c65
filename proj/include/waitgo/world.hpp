#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace waitgo {

struct Waypoint {
  int id = 0;
  double x = 0.0;  // m
  double y = 0.0;  // m
};

// Closed tour over a set of survey waypoints: home, each point of interest
// exactly once, home again.
struct MissionPlan {
  std::vector<Waypoint> waypoints;  // first and last are the home position
  double start_hour = 8.0;          // fractional hour of day in [0, 24)
  std::string name;

  // Interior waypoints (everything between the two home entries).
  std::span<const Waypoint> pois() const {
    return std::span<const Waypoint>(waypoints).subspan(1, waypoints.size() - 2);
  }

  // Throws std::invalid_argument unless: at least one interior waypoint,
  // first == last (same id and coordinates), interior ids unique and distinct
  // from the home id, start_hour in [0, 24).
  void validate() const;
};

// Order-independent digest of the plan geometry (ids and coordinates).
// Event traces record it so a trace can detect being replayed against a
// different plan. Start hour is excluded: plans that differ only in start
// time share the same event traces.
std::uint64_t plan_hash(const MissionPlan& plan);

// Axis-aligned rectangle, inclusive bounds.
struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
  bool contains(double x, double y) const {
    return x >= x0 && x <= x1 && y >= y0 && y <= y1;
  }
};

// A rectangular region with a baseline event probability and an elevated (or
// lowered) probability during the field's active window.
struct Region {
  Rect rect;
  double base_prob = 0.0;
  double window_prob = 0.0;
};

// Spatial map of event probabilities with a daily active window
// [window_start_hour, window_end_hour).
struct ProbabilityField {
  std::vector<Region> regions;
  int window_start_hour = 12;
  int window_end_hour = 16;

  bool in_window(int hour) const {
    return hour >= window_start_hour && hour < window_end_hour;
  }

  // Probability of an event at `wp` during `hour`. Throws
  // std::invalid_argument when the waypoint lies in no region (the field does
  // not cover the plan) and std::domain_error for hours outside [0, 23].
  double prob_at(const Waypoint& wp, int hour) const;

  // Throws std::invalid_argument unless every interior waypoint of `plan`
  // lies in exactly one region.
  void validate_covers(const MissionPlan& plan) const;
};

// Ground truth used by trace generation and by the clairvoyant policy. When
// `change_day` is set, `after` replaces `before` from that day onward.
struct WorldModel {
  ProbabilityField before;
  ProbabilityField after;
  std::optional<int> change_day;  // >= 1 when set

  double true_prob(const Waypoint& wp, int day, int hour) const;

  const ProbabilityField& field_on(int day) const {
    return (change_day && day >= *change_day) ? after : before;
  }
};

}  // namespace waitgo

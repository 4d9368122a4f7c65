#include "waitgo/world.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace waitgo {

void MissionPlan::validate() const {
  if (waypoints.size() < 3)
    throw std::invalid_argument("plan needs home, at least one waypoint, home");
  const Waypoint& first = waypoints.front();
  const Waypoint& last = waypoints.back();
  if (first.id != last.id || first.x != last.x || first.y != last.y)
    throw std::invalid_argument("plan must start and end at the same home waypoint");
  std::unordered_set<int> ids;
  ids.insert(first.id);
  for (const Waypoint& wp : pois()) {
    if (!ids.insert(wp.id).second)
      throw std::invalid_argument("duplicate waypoint id " + std::to_string(wp.id));
  }
  if (!(start_hour >= 0.0) || !(start_hour < 24.0))
    throw std::invalid_argument("start_hour must lie in [0, 24)");
}

namespace {

std::uint64_t fnv1a_bytes(std::uint64_t h, const void* data, std::size_t n) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a_double(std::uint64_t h, double v) {
  std::uint64_t bits;
  static_assert(sizeof bits == sizeof v);
  std::memcpy(&bits, &v, sizeof bits);
  return fnv1a_bytes(h, &bits, sizeof bits);
}

}  // namespace

std::uint64_t plan_hash(const MissionPlan& plan) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const Waypoint& wp : plan.waypoints) {
    std::int64_t id = wp.id;
    h = fnv1a_bytes(h, &id, sizeof id);
    h = fnv1a_double(h, wp.x);
    h = fnv1a_double(h, wp.y);
  }
  return h;
}

double ProbabilityField::prob_at(const Waypoint& wp, int hour) const {
  if (hour < 0 || hour > 23)
    throw std::domain_error("prob_at: hour " + std::to_string(hour) +
                            " outside [0, 23]");
  for (const Region& region : regions) {
    if (region.rect.contains(wp.x, wp.y))
      return in_window(hour) ? region.window_prob : region.base_prob;
  }
  throw std::invalid_argument("waypoint " + std::to_string(wp.id) +
                              " at (" + std::to_string(wp.x) + ", " +
                              std::to_string(wp.y) + ") lies in no region");
}

void ProbabilityField::validate_covers(const MissionPlan& plan) const {
  for (const Waypoint& wp : plan.pois()) {
    int hits = 0;
    for (const Region& region : regions)
      if (region.rect.contains(wp.x, wp.y)) ++hits;
    if (hits != 1)
      throw std::invalid_argument(
          "waypoint " + std::to_string(wp.id) + " lies in " +
          std::to_string(hits) + " regions (expected exactly 1)");
  }
}

double WorldModel::true_prob(const Waypoint& wp, int day, int hour) const {
  if (day < 0) throw std::domain_error("true_prob: negative day");
  return field_on(day).prob_at(wp, hour);
}

}  // namespace waitgo

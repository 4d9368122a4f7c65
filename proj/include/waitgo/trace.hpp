#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "waitgo/world.hpp"

namespace waitgo {

// Pre-drawn event outcomes: one binary event per (day, waypoint, hour).
// Traces decouple world sampling from mission simulation, so every policy
// replays the exact same sequence of events. A trace knows nothing about the
// world model that produced it beyond a descriptive tag.
class Trace {
 public:
  Trace() = default;

  // `events` must have days * ids.size() * 24 entries, laid out as
  // [day][id index][hour] with ids ascending.
  Trace(std::uint64_t seed, int days, std::vector<int> waypoint_ids,
        std::vector<std::uint8_t> events, std::uint64_t plan_digest,
        std::string world_tag);

  // Event outcome (0 or 1). Throws std::out_of_range for a (day, wp_id, hour)
  // the trace does not cover.
  int event(int day, int wp_id, int hour) const;

  std::uint64_t seed() const { return seed_; }
  int days() const { return days_; }
  const std::vector<int>& waypoint_ids() const { return ids_; }
  std::uint64_t plan_digest() const { return plan_digest_; }
  const std::string& world_tag() const { return world_tag_; }

 private:
  std::uint64_t seed_ = 0;
  int days_ = 0;
  std::vector<int> ids_;             // ascending
  std::vector<std::uint8_t> events_; // [day][id index][hour]
  std::uint64_t plan_digest_ = 0;
  std::string world_tag_;
};

// Draws events for every (day, interior waypoint, hour) of `plan` under the
// true probabilities of `world`. Each outcome is a pure function of
// (seed, day, wp_id, hour): outcomes are independent of generation order and
// identical across runs and platforms.
Trace generate_trace(const WorldModel& world, const MissionPlan& plan,
                     int days, std::uint64_t seed, std::string world_tag = {});

// Line-oriented trace file:
//   # header lines `key=value` (seed, days, world, plan)
//   day,wp_id,hour,event   -- one row per outcome, sorted by (day, wp_id, hour)
void write_trace_file(const Trace& trace, const std::filesystem::path& path);

// Throws std::runtime_error with an actionable message when the file is
// missing or malformed.
Trace read_trace_file(const std::filesystem::path& path);

}  // namespace waitgo

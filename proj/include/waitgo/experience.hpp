#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "waitgo/isolation_forest.hpp"

namespace waitgo {

// One observed sensing outcome.
struct ExperienceEntry {
  int wp_id = 0;
  int hour = 0;   // hour of day when sensing completed, 0..23
  int event = 0;  // 0 or 1
  int day = 0;    // mission day the observation was made
};

// Which slice of memory is relevant to an upcoming mission.
struct MissionContext {
  std::set<int> waypoint_ids;
  int start_hour = 0;  // whole hour the mission starts in
  int op_hours = 2;    // hours of day the mission can span, >= 1

  // True when `hour` falls inside [start_hour, start_hour + op_hours),
  // wrapping around midnight.
  bool covers_hour(int hour) const;
};

// Bounded per-(waypoint, hour) history of sensing outcomes. Each key keeps
// its own FIFO window of the most recent `capacity` observations (unbounded
// when capacity is empty), so one slot's churn never evicts another's.
class ExperienceMemory {
 public:
  explicit ExperienceMemory(std::optional<int> capacity = std::nullopt);

  void record(int wp_id, int hour, int event, int day);

  // Entries whose waypoint belongs to the context and whose hour the context
  // covers, ordered by (wp_id, hour, age).
  std::vector<ExperienceEntry> relevant_entries(const MissionContext& ctx) const;

  // Drops everything except entries recorded on `keep_day`.
  void reset(int keep_day);

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::optional<int> capacity() const { return capacity_; }

  // Line-oriented persistence: `day,wp_id,hour,event` rows. Save is atomic
  // (write-temp-then-rename). Load replaces the current contents.
  void save(const std::filesystem::path& path) const;
  void load(const std::filesystem::path& path);

 private:
  std::optional<int> capacity_;
  std::map<std::pair<int, int>, std::deque<ExperienceEntry>> slots_;
};

// Per-day sum of turn-back penalties incurred, in seconds.
class PenaltyLog {
 public:
  void add(int day, double penalty_s);
  std::optional<double> total(int day) const;
  bool empty() const { return totals_.empty(); }

  // Persistence: `day,total_penalty_s` rows, atomic save.
  void save(const std::filesystem::path& path) const;
  void load(const std::filesystem::path& path);

 private:
  std::map<int, double> totals_;
};

// Change detector 1 — penalty ceiling. Fires when the current day's penalty
// total strictly exceeds the maximum total observed during the first
// `window_days` learning days of the current epoch (days
// [epoch_first_day, epoch_first_day + window_days)). Not armed — returns
// false — until `current_day >= epoch_first_day + window_days` or when any
// baseline day is missing from the log. Missing totals count as 0.
bool reset1_check(const PenaltyLog& log, int current_day, int window_days,
                  int epoch_first_day);

// Change detector 2 — penalty outlier. Fits an isolation forest on the daily
// totals of the trailing window [current_day - window_days + 1, current_day]
// and fires when the current day's total is flagged as an outlier. Not armed
// until the window is fully populated. `seed` drives forest construction
// only.
bool reset2_check(const PenaltyLog& log, int current_day, int window_days,
                  std::uint64_t seed, const IsolationForestParams& params = {});

}  // namespace waitgo

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace waitgo {

// Day after which the learning policy is considered converged; aggregate
// statistics average from this day onward (and, in a changing world, restart
// the clock at the change day).
inline constexpr int kConvergedDay = 12;

// One simulated day of one configuration, as serialized to results.csv.
// Columns (in order): scenario, world, policy, estimator, H, reset,
// trace_seed, day, mission_time_s, total_penalty_s, ri, procT,
// reset_checked, reset_fired. Fields that do not apply to a policy
// (estimator, H, reset for the non-learning ones) hold "-".
struct ResultRow {
  std::string scenario;
  std::string world;
  std::string policy;
  std::string estimator;
  std::string memory;  // H value or "inf" or "-"
  std::string reset;
  std::uint64_t trace_seed = 0;
  int day = 0;
  double mission_time_s = 0.0;
  double total_penalty_s = 0.0;
  double ri = 0.0;
  double proc_s = 0.0;
  bool reset_checked = false;
  bool reset_fired = false;
};

// Atomic (write-temp-then-rename) CSV writer; byte-stable for equal inputs.
void write_results_csv(const std::vector<ResultRow>& rows,
                       const std::filesystem::path& path);

// Throws std::runtime_error with an actionable message on missing or
// malformed files.
std::vector<ResultRow> read_results_csv(const std::filesystem::path& path);

// Aggregate statistics of one configuration (all rows sharing everything but
// trace_seed and day).
struct GroupSummary {
  std::string scenario, world, policy, estimator, memory, reset;
  double proc_s = 0.0;
  long day_count = 0;           // converged-day rows aggregated
  double mean_ri = 0.0;         // converged days (pre-change in a changing world)
  double mean_ri_post = 0.0;    // changing world, days >= change day
  bool has_post = false;
  double mean_mission_minutes = 0.0;  // converged days
  long reset_checks = 0;        // across ALL days
  long reset_fires = 0;
  double fpr() const {
    return reset_checks > 0 ? static_cast<double>(reset_fires) / reset_checks : 0.0;
  }
};

// Groups rows by configuration and computes the summary statistics above.
// Converged means day >= kConvergedDay; in a changing world the pre-change
// statistic covers [kConvergedDay, change_day) and the post statistic
// [change_day, end). `change_day` only matters for rows tagged "changing".
std::vector<GroupSummary> summarize_results(const std::vector<ResultRow>& rows,
                                            int change_day);

// Fixed-width text table of the summaries (one line per configuration).
std::string render_summary_table(const std::vector<GroupSummary>& summaries);

// summary.csv serialization of the same aggregates.
void write_summary_csv(const std::vector<GroupSummary>& summaries,
                       const std::filesystem::path& path);

}  // namespace waitgo

#include "waitgo/experience.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace waitgo {

bool MissionContext::covers_hour(int hour) const {
  if (op_hours >= 24) return true;
  const int offset = ((hour - start_hour) % 24 + 24) % 24;
  return offset < op_hours;
}

ExperienceMemory::ExperienceMemory(std::optional<int> capacity)
    : capacity_(capacity) {
  if (capacity_ && *capacity_ <= 0)
    throw std::invalid_argument("experience capacity must be positive");
}

void ExperienceMemory::record(int wp_id, int hour, int event, int day) {
  if (hour < 0 || hour > 23) throw std::domain_error("experience hour outside [0, 23]");
  if (event != 0 && event != 1) throw std::invalid_argument("event must be 0 or 1");
  auto& slot = slots_[{wp_id, hour}];
  slot.push_back(ExperienceEntry{wp_id, hour, event, day});
  if (capacity_ && slot.size() > static_cast<std::size_t>(*capacity_))
    slot.pop_front();
}

std::vector<ExperienceEntry> ExperienceMemory::relevant_entries(
    const MissionContext& ctx) const {
  std::vector<ExperienceEntry> out;
  for (const auto& [key, slot] : slots_) {
    if (!ctx.waypoint_ids.contains(key.first)) continue;
    if (!ctx.covers_hour(key.second)) continue;
    out.insert(out.end(), slot.begin(), slot.end());
  }
  return out;
}

void ExperienceMemory::reset(int keep_day) {
  for (auto it = slots_.begin(); it != slots_.end();) {
    auto& slot = it->second;
    std::deque<ExperienceEntry> kept;
    for (const ExperienceEntry& e : slot)
      if (e.day == keep_day) kept.push_back(e);
    if (kept.empty()) {
      it = slots_.erase(it);
    } else {
      slot = std::move(kept);
      ++it;
    }
  }
}

std::size_t ExperienceMemory::size() const {
  std::size_t n = 0;
  for (const auto& [key, slot] : slots_) n += slot.size();
  return n;
}

namespace {

void atomic_write(const std::filesystem::path& path, const std::string& body) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << body;
    if (!f.flush()) throw std::runtime_error("failed writing " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

void ExperienceMemory::save(const std::filesystem::path& path) const {
  std::ostringstream out;
  out << "day,wp_id,hour,event\n";
  for (const auto& [key, slot] : slots_)
    for (const ExperienceEntry& e : slot)
      out << e.day << ',' << e.wp_id << ',' << e.hour << ',' << e.event << '\n';
  atomic_write(path, out.str());
}

void ExperienceMemory::load(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("experience file " + path.string() + " not found");
  slots_.clear();
  std::string line;
  if (!std::getline(f, line) || line != "day,wp_id,hour,event")
    throw std::runtime_error("experience file " + path.string() + ": bad header");
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    int day, wp_id, hour, event;
    if (std::sscanf(line.c_str(), "%d,%d,%d,%d", &day, &wp_id, &hour, &event) != 4)
      throw std::runtime_error("experience file " + path.string() +
                               ": malformed row '" + line + "'");
    record(wp_id, hour, event, day);
  }
}

void PenaltyLog::add(int day, double penalty_s) {
  if (penalty_s < 0.0) throw std::invalid_argument("penalty total must be >= 0");
  totals_[day] += penalty_s;
}

std::optional<double> PenaltyLog::total(int day) const {
  auto it = totals_.find(day);
  if (it == totals_.end()) return std::nullopt;
  return it->second;
}

void PenaltyLog::save(const std::filesystem::path& path) const {
  std::ostringstream out;
  out << "day,total_penalty_s\n";
  char buf[64];
  for (const auto& [day, total] : totals_) {
    std::snprintf(buf, sizeof buf, "%d,%.6f\n", day, total);
    out << buf;
  }
  atomic_write(path, out.str());
}

void PenaltyLog::load(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("penalty log " + path.string() + " not found");
  totals_.clear();
  std::string line;
  if (!std::getline(f, line) || line != "day,total_penalty_s")
    throw std::runtime_error("penalty log " + path.string() + ": bad header");
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    int day;
    double total;
    if (std::sscanf(line.c_str(), "%d,%lf", &day, &total) != 2)
      throw std::runtime_error("penalty log " + path.string() +
                               ": malformed row '" + line + "'");
    totals_[day] = total;
  }
}

bool reset1_check(const PenaltyLog& log, int current_day, int window_days,
                  int epoch_first_day) {
  if (window_days <= 0) throw std::invalid_argument("window_days must be > 0");
  if (current_day < epoch_first_day + window_days) return false;  // not armed yet
  double baseline_max = 0.0;
  for (int day = epoch_first_day; day < epoch_first_day + window_days; ++day)
    baseline_max = std::max(baseline_max, log.total(day).value_or(0.0));
  return log.total(current_day).value_or(0.0) > baseline_max;
}

bool reset2_check(const PenaltyLog& log, int current_day, int window_days,
                  std::uint64_t seed, const IsolationForestParams& params) {
  if (window_days < 2) throw std::invalid_argument("window_days must be >= 2");
  std::vector<double> window;
  window.reserve(static_cast<std::size_t>(window_days));
  for (int day = current_day - window_days + 1; day <= current_day; ++day) {
    const auto total = log.total(day);
    if (!total) return false;  // window not fully populated yet
    window.push_back(*total);
  }
  IsolationForest forest;
  forest.fit(window, seed, params);
  return forest.is_outlier(window.back());
}

}  // namespace waitgo

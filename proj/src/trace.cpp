#include "waitgo/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "waitgo/rng.hpp"

namespace waitgo {

namespace {

// Counter key for one (day, waypoint, hour) slot.
constexpr std::uint64_t event_key(int day, int wp_id, int hour) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(day)) << 32) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(wp_id)) << 8) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(hour));
}

}  // namespace

Trace::Trace(std::uint64_t seed, int days, std::vector<int> waypoint_ids,
             std::vector<std::uint8_t> events, std::uint64_t plan_digest,
             std::string world_tag)
    : seed_(seed),
      days_(days),
      ids_(std::move(waypoint_ids)),
      events_(std::move(events)),
      plan_digest_(plan_digest),
      world_tag_(std::move(world_tag)) {
  if (!std::is_sorted(ids_.begin(), ids_.end()))
    throw std::invalid_argument("trace waypoint ids must be ascending");
  if (events_.size() != static_cast<std::size_t>(days_) * ids_.size() * 24)
    throw std::invalid_argument("trace event table has the wrong size");
}

int Trace::event(int day, int wp_id, int hour) const {
  if (day < 0 || day >= days_)
    throw std::out_of_range("trace covers days [0, " + std::to_string(days_ - 1) +
                            "], asked for day " + std::to_string(day));
  if (hour < 0 || hour > 23)
    throw std::out_of_range("trace hour " + std::to_string(hour) + " outside [0, 23]");
  auto it = std::lower_bound(ids_.begin(), ids_.end(), wp_id);
  if (it == ids_.end() || *it != wp_id)
    throw std::out_of_range("trace has no waypoint " + std::to_string(wp_id));
  const std::size_t idx =
      (static_cast<std::size_t>(day) * ids_.size() +
       static_cast<std::size_t>(it - ids_.begin())) * 24 +
      static_cast<std::size_t>(hour);
  return events_[idx];
}

Trace generate_trace(const WorldModel& world, const MissionPlan& plan,
                     int days, std::uint64_t seed, std::string world_tag) {
  plan.validate();
  if (days <= 0) throw std::invalid_argument("trace needs at least one day");

  std::vector<int> ids;
  ids.reserve(plan.pois().size());
  for (const Waypoint& wp : plan.pois()) ids.push_back(wp.id);
  std::sort(ids.begin(), ids.end());

  std::vector<const Waypoint*> by_id(ids.size());
  for (const Waypoint& wp : plan.pois()) {
    auto it = std::lower_bound(ids.begin(), ids.end(), wp.id);
    by_id[static_cast<std::size_t>(it - ids.begin())] = &wp;
  }

  std::vector<std::uint8_t> events;
  events.reserve(static_cast<std::size_t>(days) * ids.size() * 24);
  for (int day = 0; day < days; ++day) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const Waypoint& wp = *by_id[i];
      for (int hour = 0; hour < 24; ++hour) {
        const double p = world.true_prob(wp, day, hour);
        const double u = rng::uniform01(rng::mix(seed, event_key(day, wp.id, hour)));
        events.push_back(u < p ? 1 : 0);
      }
    }
  }
  return Trace(seed, days, std::move(ids), std::move(events), plan_hash(plan),
               std::move(world_tag));
}

void write_trace_file(const Trace& trace, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "# event-trace v1\n";
  out << "# seed=" << trace.seed() << "\n";
  out << "# days=" << trace.days() << "\n";
  out << "# world=" << trace.world_tag() << "\n";
  char digest[32];
  std::snprintf(digest, sizeof digest, "%016llx",
                static_cast<unsigned long long>(trace.plan_digest()));
  out << "# plan=" << digest << "\n";
  out << "day,wp_id,hour,event\n";
  for (int day = 0; day < trace.days(); ++day)
    for (int wp_id : trace.waypoint_ids())
      for (int hour = 0; hour < 24; ++hour)
        out << day << ',' << wp_id << ',' << hour << ','
            << trace.event(day, wp_id, hour) << '\n';

  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write trace file " + path.string());
    f << out.str();
    if (!f.flush()) throw std::runtime_error("failed writing trace file " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace {

[[noreturn]] void trace_error(const std::filesystem::path& path, const std::string& what) {
  throw std::runtime_error("trace file " + path.string() + ": " + what);
}

long long parse_ll(const std::string& s, const std::filesystem::path& path) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    trace_error(path, "malformed integer '" + s + "'");
  return v;
}

}  // namespace

Trace read_trace_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f)
    throw std::runtime_error("trace file " + path.string() +
                             " not found; generate traces first (gen-traces)");

  std::uint64_t seed = 0, plan_digest = 0;
  int days = -1;
  std::string world_tag;
  std::string line;
  bool saw_columns = false;

  // Header.
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;  // banner line
      std::string key = line.substr(1, eq - 1);
      std::string value = line.substr(eq + 1);
      key.erase(0, key.find_first_not_of(' '));
      key.erase(key.find_last_not_of(' ') + 1);
      if (key == "seed")
        seed = static_cast<std::uint64_t>(parse_ll(value, path));
      else if (key == "days")
        days = static_cast<int>(parse_ll(value, path));
      else if (key == "world")
        world_tag = value;
      else if (key == "plan")
        plan_digest = std::stoull(value, nullptr, 16);
      continue;
    }
    if (line == "day,wp_id,hour,event") {
      saw_columns = true;
      break;
    }
    trace_error(path, "unexpected line before column header: '" + line + "'");
  }
  if (!saw_columns) trace_error(path, "missing column header");
  if (days <= 0) trace_error(path, "missing or invalid days in header");

  struct Row { int day, wp_id, hour, event; };
  std::vector<Row> rows;
  std::vector<int> ids;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    Row r{};
    int fields = std::sscanf(line.c_str(), "%d,%d,%d,%d",
                             &r.day, &r.wp_id, &r.hour, &r.event);
    if (fields != 4) trace_error(path, "malformed row '" + line + "'");
    if (r.event != 0 && r.event != 1)
      trace_error(path, "event must be 0 or 1 in row '" + line + "'");
    rows.push_back(r);
    if (r.day == 0 && r.hour == 0) ids.push_back(r.wp_id);
  }
  if (ids.empty()) trace_error(path, "no event rows");
  if (!std::is_sorted(ids.begin(), ids.end()))
    trace_error(path, "waypoint ids not ascending");
  if (rows.size() != static_cast<std::size_t>(days) * ids.size() * 24)
    trace_error(path, "expected " + std::to_string(days * ids.size() * 24) +
                          " rows, found " + std::to_string(rows.size()));

  std::vector<std::uint8_t> events(rows.size());
  std::size_t k = 0;
  for (int day = 0; day < days; ++day) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (int hour = 0; hour < 24; ++hour, ++k) {
        const Row& r = rows[k];
        if (r.day != day || r.wp_id != ids[i] || r.hour != hour)
          trace_error(path, "rows out of order near line for day " +
                                std::to_string(r.day) + ", wp " +
                                std::to_string(r.wp_id));
        events[k] = static_cast<std::uint8_t>(r.event);
      }
    }
  }
  return Trace(seed, days, std::move(ids), std::move(events), plan_digest,
               std::move(world_tag));
}

}  // namespace waitgo

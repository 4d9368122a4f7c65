#include "waitgo/report.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace waitgo {

namespace {

constexpr const char* kHeader =
    "scenario,world,policy,estimator,H,reset,trace_seed,day,mission_time_s,"
    "total_penalty_s,ri,procT,reset_checked,reset_fired";

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

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

void write_results_csv(const std::vector<ResultRow>& rows,
                       const std::filesystem::path& path) {
  std::ostringstream out;
  out << kHeader << '\n';
  char buf[256];
  for (const ResultRow& r : rows) {
    std::snprintf(buf, sizeof buf,
                  "%s,%s,%s,%s,%s,%s,%" PRIu64 ",%d,%.6f,%.6f,%.9f,%g,%d,%d\n",
                  r.scenario.c_str(), r.world.c_str(), r.policy.c_str(),
                  r.estimator.c_str(), r.memory.c_str(), r.reset.c_str(),
                  r.trace_seed, r.day, r.mission_time_s, r.total_penalty_s,
                  r.ri, r.proc_s, r.reset_checked ? 1 : 0, r.reset_fired ? 1 : 0);
    out << buf;
  }
  atomic_write(path, out.str());
}

std::vector<ResultRow> read_results_csv(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f)
    throw std::runtime_error("results file " + path.string() +
                             " not found; run an experiment first");
  std::string line;
  if (!std::getline(f, line) || line != kHeader)
    throw std::runtime_error("results file " + path.string() +
                             ": unexpected header (wrong or stale format?)");
  std::vector<ResultRow> rows;
  int line_no = 1;
  while (std::getline(f, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 14)
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected 14 fields, found " +
                               std::to_string(fields.size()));
    try {
      ResultRow r;
      r.scenario = fields[0];
      r.world = fields[1];
      r.policy = fields[2];
      r.estimator = fields[3];
      r.memory = fields[4];
      r.reset = fields[5];
      r.trace_seed = std::stoull(fields[6]);
      r.day = std::stoi(fields[7]);
      r.mission_time_s = std::stod(fields[8]);
      r.total_penalty_s = std::stod(fields[9]);
      r.ri = std::stod(fields[10]);
      r.proc_s = std::stod(fields[11]);
      r.reset_checked = fields[12] == "1";
      r.reset_fired = fields[13] == "1";
      rows.push_back(std::move(r));
    } catch (const std::exception&) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": malformed row");
    }
  }
  return rows;
}

std::vector<GroupSummary> summarize_results(const std::vector<ResultRow>& rows,
                                            int change_day) {
  using Key = std::tuple<std::string, std::string, std::string, std::string,
                         std::string, std::string, double>;
  struct Acc {
    long pre_n = 0;
    double pre_ri = 0.0, pre_mission = 0.0;
    long post_n = 0;
    double post_ri = 0.0;
    long checks = 0, fires = 0;
  };
  std::map<Key, Acc> groups;
  for (const ResultRow& r : rows) {
    Acc& acc = groups[{r.scenario, r.world, r.policy, r.estimator, r.memory,
                       r.reset, r.proc_s}];
    const bool changing = r.world == "changing";
    if (r.day >= kConvergedDay && (!changing || r.day < change_day)) {
      ++acc.pre_n;
      acc.pre_ri += r.ri;
      acc.pre_mission += r.mission_time_s;
    }
    if (changing && r.day >= change_day) {
      ++acc.post_n;
      acc.post_ri += r.ri;
    }
    acc.checks += r.reset_checked ? 1 : 0;
    acc.fires += r.reset_fired ? 1 : 0;
  }

  std::vector<GroupSummary> out;
  out.reserve(groups.size());
  for (const auto& [key, acc] : groups) {
    GroupSummary s;
    std::tie(s.scenario, s.world, s.policy, s.estimator, s.memory, s.reset,
             s.proc_s) = key;
    s.day_count = acc.pre_n;
    if (acc.pre_n > 0) {
      s.mean_ri = acc.pre_ri / acc.pre_n;
      s.mean_mission_minutes = acc.pre_mission / acc.pre_n / 60.0;
    }
    if (acc.post_n > 0) {
      s.has_post = true;
      s.mean_ri_post = acc.post_ri / acc.post_n;
    }
    s.reset_checks = acc.checks;
    s.reset_fires = acc.fires;
    out.push_back(std::move(s));
  }
  return out;
}

std::string render_summary_table(const std::vector<GroupSummary>& summaries) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-8s %-8s %-7s %-9s %-5s %-7s %-6s %9s %9s %9s %12s\n",
                "scenario", "world", "policy", "estimator", "H", "reset",
                "procT", "ri%", "ri_post%", "min/day", "reset_fpr%");
  out << buf;
  for (const GroupSummary& s : summaries) {
    char post[16], fpr[16];
    if (s.has_post)
      std::snprintf(post, sizeof post, "%9.2f", 100.0 * s.mean_ri_post);
    else
      std::snprintf(post, sizeof post, "%9s", "-");
    if (s.reset_checks > 0)
      std::snprintf(fpr, sizeof fpr, "%12.2f", 100.0 * s.fpr());
    else
      std::snprintf(fpr, sizeof fpr, "%12s", "-");
    std::snprintf(buf, sizeof buf, "%-8s %-8s %-7s %-9s %-5s %-7s %-6g %9.2f %s %9.1f %s\n",
                  s.scenario.c_str(), s.world.c_str(), s.policy.c_str(),
                  s.estimator.c_str(), s.memory.c_str(), s.reset.c_str(),
                  s.proc_s, 100.0 * s.mean_ri, post, s.mean_mission_minutes, fpr);
    out << buf;
  }
  return out.str();
}

void write_summary_csv(const std::vector<GroupSummary>& summaries,
                       const std::filesystem::path& path) {
  std::ostringstream out;
  out << "scenario,world,policy,estimator,H,reset,procT,days,mean_ri,"
         "mean_ri_post,mean_mission_minutes,reset_checks,reset_fires,reset_fpr\n";
  char buf[256];
  for (const GroupSummary& s : summaries) {
    std::snprintf(buf, sizeof buf, "%s,%s,%s,%s,%s,%s,%g,%ld,%.9f,%s,%.6f,%ld,%ld,%.9f\n",
                  s.scenario.c_str(), s.world.c_str(), s.policy.c_str(),
                  s.estimator.c_str(), s.memory.c_str(), s.reset.c_str(),
                  s.proc_s, s.day_count, s.mean_ri,
                  s.has_post ? (std::to_string(s.mean_ri_post)).c_str() : "-",
                  s.mean_mission_minutes, s.reset_checks, s.reset_fires, s.fpr());
    out << buf;
  }
  atomic_write(path, out.str());
}

}  // namespace waitgo

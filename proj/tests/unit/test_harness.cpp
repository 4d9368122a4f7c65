#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "waitgo/config.hpp"
#include "waitgo/report.hpp"
#include "waitgo/svg.hpp"

using namespace waitgo;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "waitgo_harness_tests";
  fs::create_directories(dir);
  return dir / name;
}

ResultRow make_row(const std::string& scenario, const std::string& world,
                   const std::string& policy, std::uint64_t seed, int day,
                   double ri) {
  ResultRow r;
  r.scenario = scenario;
  r.world = world;
  r.policy = policy;
  r.estimator = policy == "learn" ? "tree" : "-";
  r.memory = policy == "learn" ? "12" : "-";
  r.reset = policy == "learn" ? "none" : "-";
  r.trace_seed = seed;
  r.day = day;
  r.mission_time_s = 1200.0 + day;
  r.total_penalty_s = 16.0 * (day % 3);
  r.ri = ri;
  r.proc_s = 10.0;
  return r;
}

}  // namespace

TEST_CASE("enum names round-trip through their parsers") {
  for (PolicyKind k : {PolicyKind::learn, PolicyKind::wait, PolicyKind::go,
                       PolicyKind::random, PolicyKind::oracle})
    CHECK(parse_policy(to_string(k)) == k);
  for (EstimatorKind k :
       {EstimatorKind::linear, EstimatorKind::tree, EstimatorKind::bayesian})
    CHECK(parse_estimator(to_string(k)) == k);
  for (ResetMode m : {ResetMode::none, ResetMode::reset1, ResetMode::reset2})
    CHECK(parse_reset(to_string(m)) == m);
  for (FeatureMode m : {FeatureMode::coords, FeatureMode::id})
    CHECK(parse_features(to_string(m)) == m);
  for (ScenarioName n :
       {ScenarioName::out, ScenarioName::out_in, ScenarioName::in_out})
    CHECK(parse_scenario(to_string(n)) == n);
  for (WorldKind k : {WorldKind::stable, WorldKind::changing})
    CHECK(parse_world(to_string(k)) == k);

  CHECK_THROWS_AS(parse_policy("sometimes"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scenario("inside"), std::invalid_argument);
  CHECK_THROWS_AS(parse_world("shifting"), std::invalid_argument);
  CHECK_THROWS_AS(parse_estimator("forest"), std::invalid_argument);
  CHECK_THROWS_AS(parse_reset("reset3"), std::invalid_argument);
}

TEST_CASE("memory capacity parses numbers and the unbounded marker") {
  CHECK(parse_memory_cap("12") == std::optional<int>(12));
  CHECK(parse_memory_cap("inf") == std::nullopt);
  CHECK(memory_cap_string(std::optional<int>(8)) == "8");
  CHECK(memory_cap_string(std::nullopt) == "inf");
  CHECK_THROWS_AS(parse_memory_cap("0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_memory_cap("-3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_memory_cap("many"), std::invalid_argument);
}

TEST_CASE("config entries populate sweep axes") {
  RunConfig cfg;
  apply_config_entry(cfg, "scenario", "out, in_out");
  REQUIRE(cfg.scenarios.size() == 2);
  CHECK(cfg.scenarios[1] == ScenarioName::in_out);

  apply_config_entry(cfg, "policy", "all");
  CHECK(cfg.policies.size() == 5);

  apply_config_entry(cfg, "H", "8,12,inf");
  REQUIRE(cfg.memory_caps.size() == 3);
  CHECK(cfg.memory_caps[0] == std::optional<int>(8));
  CHECK(!cfg.memory_caps[2].has_value());

  apply_config_entry(cfg, "procT", "8,10,12");
  REQUIRE(cfg.proc_times.size() == 3);
  CHECK(cfg.proc_times[2] == 12.0);

  apply_config_entry(cfg, "world", "changing");
  apply_config_entry(cfg, "days", "41");
  apply_config_entry(cfg, "traces", "5");
  apply_config_entry(cfg, "seed", "99");
  apply_config_entry(cfg, "svg", "true");
  apply_config_entry(cfg, "features", "id");
  CHECK(cfg.world == WorldKind::changing);
  CHECK(cfg.days == 41);
  CHECK(cfg.num_traces == 5);
  CHECK(cfg.seed == 99);
  CHECK(cfg.svg);
  CHECK(cfg.features == FeatureMode::id);

  apply_config_entry(cfg, "cruise", "5.5");
  CHECK(cfg.kin.cruise_speed == 5.5);

  CHECK_THROWS_WITH_AS(apply_config_entry(cfg, "speed", "4"),
                       doctest::Contains("unknown config key 'speed'"),
                       std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entry(cfg, "days", "soon"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entry(cfg, "svg", "maybe"), std::invalid_argument);
}

TEST_CASE("config files are parsed with comments and error locations") {
  const fs::path path = temp_file("good.cfg");
  {
    std::ofstream f(path);
    f << "# experiment sweep\n"
         "scenario = out_in\n"
         "\n"
         "H = 12, inf   # two history settings\n"
         "procT=8\n";
  }
  RunConfig cfg;
  apply_config_file(cfg, path);
  REQUIRE(cfg.scenarios.size() == 1);
  CHECK(cfg.scenarios[0] == ScenarioName::out_in);
  REQUIRE(cfg.memory_caps.size() == 2);
  CHECK(!cfg.memory_caps[1].has_value());
  CHECK(cfg.proc_times == std::vector<double>{8.0});

  const fs::path bad = temp_file("bad.cfg");
  {
    std::ofstream f(bad);
    f << "scenario = out\nnot a key value pair\n";
  }
  RunConfig cfg2;
  CHECK_THROWS_WITH_AS(apply_config_file(cfg2, bad), doctest::Contains(":2:"),
                       std::invalid_argument);

  const fs::path unknown = temp_file("unknown.cfg");
  {
    std::ofstream f(unknown);
    f << "motor = fast\n";
  }
  RunConfig cfg3;
  CHECK_THROWS_WITH_AS(apply_config_file(cfg3, unknown),
                       doctest::Contains("unknown config key"),
                       std::invalid_argument);

  RunConfig cfg4;
  CHECK_THROWS_AS(apply_config_file(cfg4, temp_file("missing.cfg")),
                  std::runtime_error);
}

TEST_CASE("day counts default per world kind") {
  RunConfig cfg;
  CHECK(cfg.effective_days() == 31);
  cfg.world = WorldKind::changing;
  CHECK(cfg.effective_days() == 41);
  cfg.days = 7;
  CHECK(cfg.effective_days() == 7);
}

TEST_CASE("run configuration rejects invalid settings") {
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.num_traces = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = RunConfig{};
  cfg.scenarios.clear();
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = RunConfig{};
  cfg.proc_times = {0.0};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = RunConfig{};
  cfg.out_dir.clear();
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("result rows round-trip through the CSV file") {
  std::vector<ResultRow> rows;
  rows.push_back(make_row("out", "stable", "learn", 42, 0, 0.0123456789));
  rows.push_back(make_row("in_out", "changing", "wait", 43, 21, 0.25));
  rows.back().reset_checked = true;
  rows.back().reset_fired = true;
  rows.push_back(make_row("out_in", "stable", "oracle", 44, 30, 0.0));

  const fs::path path = temp_file("results.csv");
  write_results_csv(rows, path);
  CHECK(!fs::exists(path.string() + ".tmp"));  // temp file was renamed away

  {
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    CHECK(header ==
          "scenario,world,policy,estimator,H,reset,trace_seed,day,"
          "mission_time_s,total_penalty_s,ri,procT,reset_checked,reset_fired");
  }

  const std::vector<ResultRow> back = read_results_csv(path);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].scenario == rows[i].scenario);
    CHECK(back[i].world == rows[i].world);
    CHECK(back[i].policy == rows[i].policy);
    CHECK(back[i].estimator == rows[i].estimator);
    CHECK(back[i].memory == rows[i].memory);
    CHECK(back[i].reset == rows[i].reset);
    CHECK(back[i].trace_seed == rows[i].trace_seed);
    CHECK(back[i].day == rows[i].day);
    CHECK(back[i].mission_time_s == doctest::Approx(rows[i].mission_time_s));
    CHECK(back[i].ri == doctest::Approx(rows[i].ri).epsilon(1e-9));
    CHECK(back[i].reset_checked == rows[i].reset_checked);
    CHECK(back[i].reset_fired == rows[i].reset_fired);
  }

  // Writing the same rows twice produces byte-identical files.
  const fs::path again = temp_file("results2.csv");
  write_results_csv(rows, again);
  std::ifstream a(path, std::ios::binary), b(again, std::ios::binary);
  const std::string bytes_a((std::istreambuf_iterator<char>(a)), {});
  const std::string bytes_b((std::istreambuf_iterator<char>(b)), {});
  CHECK(bytes_a == bytes_b);
}

TEST_CASE("malformed results files are rejected with locations") {
  CHECK_THROWS_AS(read_results_csv(temp_file("absent.csv")), std::runtime_error);

  const fs::path stale = temp_file("stale.csv");
  {
    std::ofstream f(stale);
    f << "scenario,world,policy\nout,stable,wait\n";
  }
  CHECK_THROWS_WITH_AS(read_results_csv(stale), doctest::Contains("header"),
                       std::runtime_error);

  const fs::path short_row = temp_file("short.csv");
  {
    std::ofstream f(short_row);
    f << "scenario,world,policy,estimator,H,reset,trace_seed,day,mission_time_s,"
         "total_penalty_s,ri,procT,reset_checked,reset_fired\n"
         "out,stable,wait\n";
  }
  CHECK_THROWS_WITH_AS(read_results_csv(short_row), doctest::Contains(":2:"),
                       std::runtime_error);
}

TEST_CASE("summaries aggregate converged days and split at the change day") {
  std::vector<ResultRow> rows;
  // Stable learn config over two traces, 31 days, ri = day number. Converged
  // days 12..30 have mean 21.
  for (std::uint64_t seed : {100u, 101u})
    for (int day = 0; day < 31; ++day) {
      ResultRow r = make_row("out", "stable", "learn", seed, day, day);
      r.reset_checked = day >= 13;            // 18 checked days per trace
      r.reset_fired = (day == 20 || day == 25);  // 2 fires per trace
      rows.push_back(r);
    }
  // Changing wait config, one trace, 41 days: ri = 0.1 before the change at
  // day 21, 0.5 afterwards.
  for (int day = 0; day < 41; ++day)
    rows.push_back(
        make_row("out", "changing", "wait", 200, day, day < 21 ? 0.1 : 0.5));

  const auto summaries = summarize_results(rows, 21);
  REQUIRE(summaries.size() == 2);

  const GroupSummary* learn = nullptr;
  const GroupSummary* wait = nullptr;
  for (const GroupSummary& s : summaries)
    (s.policy == "learn" ? learn : wait) = &s;
  REQUIRE(learn != nullptr);
  REQUIRE(wait != nullptr);

  CHECK(learn->day_count == 2 * 19);
  CHECK(learn->mean_ri == doctest::Approx(21.0));
  CHECK(!learn->has_post);
  CHECK(learn->reset_checks == 2 * 18);
  CHECK(learn->reset_fires == 2 * 2);
  CHECK(learn->fpr() == doctest::Approx(4.0 / 36.0));
  // mission_time_s = 1200 + day, converged days 12..30 -> mean 1221 s.
  CHECK(learn->mean_mission_minutes == doctest::Approx(1221.0 / 60.0));

  CHECK(wait->day_count == 9);  // days 12..20
  CHECK(wait->mean_ri == doctest::Approx(0.1));
  CHECK(wait->has_post);
  CHECK(wait->mean_ri_post == doctest::Approx(0.5));
  CHECK(wait->reset_checks == 0);
  CHECK(wait->fpr() == 0.0);
}

TEST_CASE("different processing times form separate summary groups") {
  std::vector<ResultRow> rows;
  ResultRow a = make_row("out", "stable", "learn", 1, 15, 0.01);
  ResultRow b = a;
  b.proc_s = 12.0;
  rows = {a, b};
  CHECK(summarize_results(rows, 21).size() == 2);
}

TEST_CASE("summary table and CSV carry one line per configuration") {
  std::vector<ResultRow> rows;
  for (int day = 0; day < 20; ++day)
    rows.push_back(make_row("in_out", "stable", "learn", 7, day, 0.015));
  const auto summaries = summarize_results(rows, 21);

  const std::string table = render_summary_table(summaries);
  CHECK(table.find("in_out") != std::string::npos);
  CHECK(table.find("learn") != std::string::npos);
  CHECK(table.find("ri%") != std::string::npos);
  CHECK(std::count(table.begin(), table.end(), '\n') ==
        static_cast<long>(summaries.size()) + 1);

  const fs::path path = temp_file("summary.csv");
  write_summary_csv(summaries, path);
  std::ifstream f(path);
  std::string header, row;
  REQUIRE(std::getline(f, header));
  CHECK(header.rfind("scenario,world,policy", 0) == 0);
  REQUIRE(std::getline(f, row));
  CHECK(row.find("in_out,stable,learn,tree,12,none,10") == 0);
}

TEST_CASE("line charts render as self-contained SVG") {
  ChartSpec spec;
  spec.title = "Wait & go";
  spec.x_label = "day";
  spec.y_label = "relative increase";
  ChartSeries s1{"learn H=12", {{0, 0.4}, {1, 0.2}, {2, 0.05}}};
  ChartSeries s2{"wait", {{0, 0.12}, {1, 0.11}, {2, 0.13}}};
  const std::string svg = render_line_chart(spec, {s1, s2});

  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("Wait &amp; go") != std::string::npos);  // escaped title
  CHECK(svg.find("learn H=12") != std::string::npos);
  CHECK(svg.find("wait") != std::string::npos);
  CHECK(std::count(svg.begin(), svg.end(), '\n') > 5);
  // One polyline per series.
  std::size_t polylines = 0;
  for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1))
    ++polylines;
  CHECK(polylines == 2);
  // No unescaped ampersands survive.
  for (std::size_t pos = svg.find('&'); pos != std::string::npos;
       pos = svg.find('&', pos + 1))
    CHECK(svg.compare(pos, 5, "&amp;") == 0);
}

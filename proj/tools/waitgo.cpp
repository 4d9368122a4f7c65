// Command-line front end: generate event traces, run experiment sweeps, and
// summarize result files.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "waitgo/config.hpp"
#include "waitgo/report.hpp"
#include "waitgo/rng.hpp"
#include "waitgo/scenario.hpp"
#include "waitgo/sim.hpp"
#include "waitgo/svg.hpp"
#include "waitgo/trace.hpp"

namespace fs = std::filesystem;
using namespace waitgo;

namespace {

fs::path trace_dir(const RunConfig& config, WorldKind world) {
  return fs::path(config.out_dir) / "traces" / to_string(world);
}

fs::path trace_path(const RunConfig& config, WorldKind world, std::uint64_t seed) {
  return trace_dir(config, world) / ("trace_" + std::to_string(seed) + ".csv");
}

// Writes the trace files for `config.num_traces` seeds. Returns the paths.
std::vector<fs::path> generate_trace_files(const RunConfig& config,
                                           WorldKind world, int days) {
  const Scenario scenario =
      builtin_scenario(ScenarioName::out, world, config.timing, config.kin);
  fs::create_directories(trace_dir(config, world));
  std::vector<fs::path> paths;
  for (int i = 0; i < config.num_traces; ++i) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(i);
    const Trace trace = generate_trace(scenario.world, scenario.plan, days,
                                       seed, to_string(world));
    const fs::path path = trace_path(config, world, seed);
    write_trace_file(trace, path);
    paths.push_back(path);
  }
  return paths;
}

// Loads the run's traces, generating them first when absent.
std::vector<Trace> load_traces(const RunConfig& config, int days) {
  bool all_present = true;
  for (int i = 0; i < config.num_traces; ++i)
    if (!fs::exists(trace_path(config, config.world,
                               config.seed + static_cast<std::uint64_t>(i))))
      all_present = false;
  if (!all_present) {
    std::printf("traces missing under %s; generating %d trace(s)\n",
                trace_dir(config, config.world).string().c_str(),
                config.num_traces);
    generate_trace_files(config, config.world, days);
  }
  std::vector<Trace> traces;
  traces.reserve(static_cast<std::size_t>(config.num_traces));
  for (int i = 0; i < config.num_traces; ++i) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(i);
    Trace trace = read_trace_file(trace_path(config, config.world, seed));
    if (trace.days() < days)
      throw std::runtime_error(
          "trace " + trace_path(config, config.world, seed).string() +
          " covers only " + std::to_string(trace.days()) +
          " day(s); regenerate with gen-traces --days " + std::to_string(days));
    traces.push_back(std::move(trace));
  }
  return traces;
}

int cmd_gen_traces(const RunConfig& config, const std::string& worlds) {
  std::vector<WorldKind> kinds;
  if (worlds == "both")
    kinds = {WorldKind::stable, WorldKind::changing};
  else
    kinds = {parse_world(worlds)};
  for (WorldKind kind : kinds) {
    const int days = config.days > 0
                         ? config.days
                         : (kind == WorldKind::changing ? 41 : 31);
    const auto paths = generate_trace_files(config, kind, days);
    std::printf("wrote %zu %s trace file(s) (%d days each) under %s\n",
                paths.size(), to_string(kind).c_str(), days,
                trace_dir(config, kind).string().c_str());
  }
  return 0;
}

std::string group_label(const ResultRow& row) {
  std::string label = row.policy;
  if (row.policy == "learn") {
    label += " " + row.estimator + " H=" + row.memory;
    if (row.reset != "none") label += " " + row.reset;
  }
  return label;
}

void write_charts(const std::vector<ResultRow>& rows, const fs::path& dir) {
  // Mean RI per day, one chart per (scenario, world, procT).
  using PanelKey = std::tuple<std::string, std::string, double>;
  std::map<PanelKey, std::map<std::string, std::map<int, std::pair<double, long>>>>
      panels;
  for (const ResultRow& r : rows) {
    auto& acc = panels[{r.scenario, r.world, r.proc_s}][group_label(r)][r.day];
    acc.first += r.ri;
    acc.second += 1;
  }
  for (const auto& [key, groups] : panels) {
    const auto& [scenario, world, proc] = key;
    std::vector<ChartSeries> series;
    for (const auto& [label, days] : groups) {
      ChartSeries s;
      s.label = label;
      for (const auto& [day, acc] : days)
        s.points.emplace_back(day, 100.0 * acc.first / acc.second);
      series.push_back(std::move(s));
    }
    char proc_tag[32];
    std::snprintf(proc_tag, sizeof proc_tag, "%g", proc);
    ChartSpec spec;
    spec.title = "Relative increase vs day — " + scenario + ", " + world +
                 " world, procT=" + proc_tag + "s";
    spec.x_label = "day";
    spec.y_label = "relative increase over clairvoyant (%)";
    const fs::path path =
        dir / ("ri_" + scenario + "_" + world + "_procT" + proc_tag + ".svg");
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << render_line_chart(spec, series);
    std::printf("wrote %s\n", path.string().c_str());
  }
}

int cmd_run(const RunConfig& config) {
  config.validate();
  const int days = config.effective_days();
  const std::vector<Trace> traces = load_traces(config, days);
  const std::uint64_t policy_seed = rng::mix(config.seed, 0x706f6cULL);
  const std::uint64_t reset_seed = rng::mix(config.seed, 0x727374ULL);

  std::vector<ResultRow> rows;
  int configs_run = 0;
  for (ScenarioName scenario_name : config.scenarios) {
    for (double proc : config.proc_times) {
      TimingParams timing = config.timing;
      timing.proc_s = proc;
      const Scenario scenario =
          builtin_scenario(scenario_name, config.world, timing, config.kin);

      // The non-learning policies ignore estimator/H/reset; run each once.
      struct Combo {
        PolicyKind policy;
        EstimatorKind estimator;
        std::optional<int> memory;
        ResetMode reset;
        bool learning;
      };
      std::vector<Combo> combos;
      for (PolicyKind policy : config.policies) {
        if (policy != PolicyKind::learn) {
          combos.push_back({policy, EstimatorKind::tree, std::nullopt,
                            ResetMode::none, false});
          continue;
        }
        for (EstimatorKind estimator : config.estimators)
          for (const std::optional<int>& memory : config.memory_caps)
            for (ResetMode reset : config.resets) {
              if (reset != ResetMode::none && !memory) {
                std::printf("skipping learn/%s H=inf %s: change detectors "
                            "need a finite H\n",
                            to_string(estimator).c_str(),
                            to_string(reset).c_str());
                continue;
              }
              combos.push_back({PolicyKind::learn, estimator, memory, reset, true});
            }
      }

      for (const Combo& combo : combos) {
        ExperimentSettings settings;
        settings.policy = combo.policy;
        settings.estimator = combo.estimator;
        settings.memory_capacity = combo.memory;
        settings.reset = combo.reset;
        settings.days = days;
        settings.policy_seed = policy_seed;
        settings.reset_seed = reset_seed;
        settings.timing = timing;
        settings.kin = config.kin;
        settings.features = config.features;

        for (const Trace& trace : traces) {
          const auto outcomes = run_policy_on_trace(scenario, settings, trace);
          for (const DayOutcome& o : outcomes) {
            ResultRow r;
            r.scenario = to_string(scenario_name);
            r.world = to_string(config.world);
            r.policy = to_string(combo.policy);
            r.estimator = combo.learning ? to_string(combo.estimator) : "-";
            r.memory = combo.learning ? memory_cap_string(combo.memory) : "-";
            r.reset = combo.learning ? to_string(combo.reset) : "-";
            r.trace_seed = trace.seed();
            r.day = o.day;
            r.mission_time_s = o.mission_s;
            r.total_penalty_s = o.penalty_s;
            r.ri = o.ri;
            r.proc_s = proc;
            r.reset_checked = o.reset_checked;
            r.reset_fired = o.reset_fired;
            rows.push_back(std::move(r));
          }
        }
        ++configs_run;
      }
    }
  }

  fs::create_directories(config.out_dir);
  const fs::path results_path = fs::path(config.out_dir) / "results.csv";
  write_results_csv(rows, results_path);
  std::printf("ran %d configuration(s) x %d trace(s) x %d day(s)\n",
              configs_run, config.num_traces, days);
  std::printf("wrote %s (%zu rows)\n", results_path.string().c_str(), rows.size());

  const auto summaries = summarize_results(rows, kChangeDay);
  std::fputs(render_summary_table(summaries).c_str(), stdout);

  if (config.svg) write_charts(rows, config.out_dir);
  return 0;
}

int cmd_report(const fs::path& results_path, const fs::path& summary_out) {
  const auto rows = read_results_csv(results_path);
  if (rows.empty()) {
    std::fprintf(stderr, "no rows in %s\n", results_path.string().c_str());
    return 1;
  }
  const auto summaries = summarize_results(rows, kChangeDay);
  std::fputs(render_summary_table(summaries).c_str(), stdout);
  const fs::path out = summary_out.empty()
                           ? results_path.parent_path() / "summary.csv"
                           : summary_out;
  write_summary_csv(summaries, out);
  std::printf("wrote %s\n", out.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Mission simulator for the hover-or-depart decision problem: a survey "
      "drone that senses at each waypoint either hovers until on-board "
      "processing finishes or flies on and risks being called back."};
  app.require_subcommand(1);

  RunConfig config;
  std::string config_file;
  std::map<std::string, std::string> pending;  // CLI values, applied over file

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_file, "key = value configuration file");
    cmd->add_option_function<std::string>(
        "--traces", [&](const std::string& v) { pending["traces"] = v; },
        "number of traces");
    cmd->add_option_function<std::string>(
        "--seed", [&](const std::string& v) { pending["seed"] = v; },
        "base seed; trace i uses seed + i");
    cmd->add_option_function<std::string>(
        "--days", [&](const std::string& v) { pending["days"] = v; },
        "days per run (default: 31 stable, 41 changing)");
    cmd->add_option_function<std::string>(
        "--out-dir", [&](const std::string& v) { pending["out_dir"] = v; },
        "output directory");
  };

  CLI::App* gen = app.add_subcommand("gen-traces", "generate event trace files");
  std::string gen_world = "both";
  gen->add_option("--world", gen_world, "stable, changing or both");
  add_common(gen);

  CLI::App* run = app.add_subcommand("run", "run an experiment sweep");
  add_common(run);
  for (const auto& [flag, help] :
       std::initializer_list<std::pair<const char*, const char*>>{
           {"--scenario", "out, out_in, in_out (comma list sweeps)"},
           {"--world", "stable or changing"},
           {"--policy", "learn, wait, go, random, oracle or all"},
           {"--estimator", "linear, tree, bayesian (comma list sweeps)"},
           {"--H", "per-(waypoint,hour) history cap; integers or inf"},
           {"--reset", "none, reset1, reset2 (comma list sweeps)"},
           {"--procT", "processing seconds (comma list sweeps)"},
           {"--features", "coords or id"}}) {
    const std::string key = std::string(flag).substr(2);
    run->add_option_function<std::string>(
        flag, [&pending, key](const std::string& v) { pending[key] = v; }, help);
  }
  bool svg_flag = false;
  run->add_flag("--svg", svg_flag, "write RI-vs-day charts");

  CLI::App* rep = app.add_subcommand("report", "summarize a results.csv");
  std::string results_file = "out/results.csv";
  std::string summary_file;
  rep->add_option("results", results_file, "path to results.csv");
  rep->add_option("--out", summary_file, "summary.csv destination");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_file.empty()) apply_config_file(config, config_file);
    for (const auto& [key, value] : pending) apply_config_entry(config, key, value);
    if (svg_flag) config.svg = true;

    if (gen->parsed()) return cmd_gen_traces(config, gen_world);
    if (run->parsed()) return cmd_run(config);
    return cmd_report(results_file, summary_file);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

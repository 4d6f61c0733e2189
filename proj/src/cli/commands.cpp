// Copyright 2026 The gpulane Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "gpulane/cli/commands.hpp"

#include <functional>
#include <ostream>

#include "CLI11.hpp"
#include "gpulane/cli/output.hpp"
#include "gpulane/engine/engine.hpp"
#include "gpulane/engine/progressive.hpp"
#include "gpulane/errors.hpp"
#include "gpulane/metrics/csv.hpp"
#include "gpulane/metrics/report.hpp"
#include "gpulane/units.hpp"
#include "gpulane/workload/catalog.hpp"
#include "gpulane/workload/synth.hpp"
#include "gpulane/workload/trace.hpp"

namespace gpulane::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::string trace;
  std::string synth;
  std::string policy;
  std::string capacity = "16GiB";
  std::string switch_overhead = "5ms";
  std::string interference = "linear";
  std::string bandwidth = "30GB/s";
  std::uint64_t seed = 0;
  std::string out;
};

// Flag values are parsed after CLI11 so unit errors surface as usage errors.
template <typename F>
auto flag_value(const char* flag, F&& parse) {
  try {
    return parse();
  } catch (const std::exception& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

std::vector<workload::JobSpec> load_jobs(const std::string& trace, const std::string& synth,
                                         std::uint64_t seed) {
  if (!trace.empty()) return workload::load_trace_file(trace);
  workload::SynthConfig config =
      flag_value("--synth", [&] { return workload::parse_synth_config(synth, &seed); });
  return workload::synth_trace(config, seed);
}

int cmd_run(const RunOptions& o, std::ostream& out) {
  if (o.trace.empty() == o.synth.empty()) {
    throw UsageError("run: exactly one of --trace or --synth is required");
  }
  engine::EngineConfig config;
  config.capacity = flag_value("--capacity", [&] { return parse_bytes(o.capacity); });
  config.switch_overhead =
      flag_value("--switch-overhead", [&] { return parse_seconds(o.switch_overhead); });
  config.interference =
      flag_value("--interference", [&] { return engine::parse_interference(o.interference); });
  config.bandwidth = flag_value("--bandwidth", [&] { return parse_bandwidth(o.bandwidth); });
  config.seed = o.seed;
  flag_value("run", [&] {
    engine::validate(config);
    return 0;
  });
  const sched::PolicyKind policy = flag_value("--policy", [&] { return sched::parse_policy(o.policy); });

  const auto jobs = load_jobs(o.trace, o.synth, o.seed);
  const engine::RunResult result = engine::run(jobs, policy, config);
  const metrics::SimReport report = metrics::compute_report(result.log);
  metrics::write_outputs(o.out, result.log, report);
  out << format_summary(report);
  return kOk;
}

int cmd_synth(const std::string& synth, std::uint64_t seed, const std::string& path,
              std::ostream& out) {
  const auto jobs = load_jobs("", synth, seed);
  const std::string text = workload::serialize_trace(jobs);
  if (path.empty()) {
    out << text;
  } else {
    metrics::write_file_atomic(path, text);
  }
  return kOk;
}

int cmd_deadlock_demo(const std::string& capacity, bool lanes, std::ostream& out) {
  const Bytes bytes = flag_value("--capacity", [&] { return parse_bytes(capacity); });
  const auto report = engine::run_progressive(engine::interleaved_growth_scenario(), bytes, lanes);
  out << format_deadlock_report(report);
  return kOk;
}

int cmd_report(const std::string& log_path, const std::string& dir, std::ostream& out) {
  const engine::RunLog log = engine::RunLog::read_file(log_path);
  const metrics::SimReport report = metrics::compute_report(log);
  metrics::write_report_files(dir, report);
  out << format_summary(report);
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete-event simulator of GPU sharing with memory lanes", "gpulane"};
  app.require_subcommand(1);
  std::function<int()> action;

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Simulate a trace and write the run log and metric CSVs");
  auto* trace_opt = run_cmd->add_option("--trace", run.trace, "Trace file, one JSON job per line");
  auto* synth_opt =
      run_cmd->add_option("--synth", run.synth, "Synthetic trace parameters, e.g. count=100,seed=7");
  trace_opt->excludes(synth_opt);
  run_cmd->add_option("--policy", run.policy, "Scheduling policy")
      ->required()
      ->check(CLI::IsMember({"fifo", "srtf", "pack", "fair"}, CLI::ignore_case));
  run_cmd->add_option("--capacity", run.capacity, "GPU memory, e.g. 16GiB or raw bytes")
      ->capture_default_str();
  run_cmd->add_option("--switch-overhead", run.switch_overhead, "Cost of switching jobs in a lane")
      ->capture_default_str();
  run_cmd->add_option("--interference", run.interference, "Cross-lane compute model")
      ->check(CLI::IsMember({"none", "linear"}, CLI::ignore_case))
      ->capture_default_str();
  run_cmd->add_option("--bandwidth", run.bandwidth, "Host-device bandwidth for swap-in costs")
      ->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "Seed for --synth when it has no seed key")
      ->capture_default_str();
  run_cmd->add_option("--out", run.out, "Output directory")->required();
  run_cmd->callback([&] { action = [&] { return cmd_run(run, out); }; });

  std::string synth_params;
  std::uint64_t synth_seed = 0;
  std::string synth_out;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic trace");
  synth_cmd->add_option("--synth", synth_params, "Generator parameters, e.g. count=100,seed=7")
      ->required();
  synth_cmd->add_option("--seed", synth_seed, "Seed when --synth has no seed key");
  synth_cmd->add_option("--out", synth_out, "Trace file (default: standard output)");
  synth_cmd->callback([&] { action = [&] { return cmd_synth(synth_params, synth_seed, synth_out, out); }; });

  std::string demo_capacity = "12GiB";
  bool demo_lanes = false;
  auto* demo_cmd =
      app.add_subcommand("deadlock-demo", "Replay two jobs growing scratch memory in lockstep");
  demo_cmd->add_option("--capacity", demo_capacity, "GPU memory")->capture_default_str();
  demo_cmd->add_flag("--lanes", demo_lanes, "Admit the jobs through memory lanes");
  demo_cmd->callback([&] { action = [&] { return cmd_deadlock_demo(demo_capacity, demo_lanes, out); }; });

  auto* catalog_cmd = app.add_subcommand("catalog", "Print the built-in workload catalog as CSV");
  catalog_cmd->callback([&] {
    action = [&] {
      out << workload::catalog_csv(workload::Catalog::builtin());
      return kOk;
    };
  });

  std::string report_log;
  std::string report_out;
  auto* report_cmd = app.add_subcommand("report", "Recompute the metric CSVs from a run log");
  report_cmd->add_option("--log", report_log, "run_log.jsonl from a previous run")->required();
  report_cmd->add_option("--out", report_out, "Output directory")->required();
  report_cmd->callback([&] { action = [&] { return cmd_report(report_log, report_out, out); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "Run with --help for usage.\n";
    return kUsage;
  }

  try {
    return action ? action() : kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnschedulableError& e) {
    err << "error: job " << e.job() << " is unschedulable: " << e.what() << "\n";
    return kUnschedulable;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace gpulane::cli

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


#include "gpulane/engine/engine.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <string>
#include <tuple>

#include "gpulane/errors.hpp"
#include "gpulane/lane/gpu_state.hpp"
#include "gpulane/sched/scheduler.hpp"

namespace gpulane::engine {

std::string_view to_string(Interference model) {
  return model == Interference::none ? "none" : "linear";
}

Interference parse_interference(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  if (lower == "none") return Interference::none;
  if (lower == "linear") return Interference::linear;
  throw ConfigError("unknown interference model '" + std::string(text) +
                    "' (expected none or linear)");
}

void validate(const EngineConfig& config) {
  if (config.capacity <= 0) throw ConfigError("capacity must be positive");
  if (!(config.switch_overhead >= 0.0)) throw ConfigError("switch overhead must be >= 0");
  if (!(config.bandwidth > 0.0)) throw ConfigError("bandwidth must be positive");
}

Seconds effective_iteration_duration(const workload::JobSpec& job,
                                     const std::vector<workload::JobSpec>& concurrent,
                                     const EngineConfig& config) {
  if (config.interference == Interference::none) return job.iteration_duration;
  double load = 0.0;
  for (const auto& other : concurrent) load += other.compute_fraction;
  return job.iteration_duration * std::max(1.0, load);
}

namespace {

using nlohmann::ordered_json;
using sched::JobState;

// Tie order at equal times: finishes free memory before arrivals claim it.
enum class EventKind { job_finish = 0, lane_moved = 1, job_arrive = 2, iteration_end = 3 };

struct Event {
  Seconds t;
  EventKind kind;
  JobId job;
  std::uint64_t seq;
  LaneId lane;

  auto key() const { return std::make_tuple(t, int(kind), job, seq); }
  bool operator>(const Event& other) const { return key() > other.key(); }
};

struct Running {
  JobId job;
  Seconds elapsed;
};

class Simulation {
 public:
  Simulation(const std::vector<workload::JobSpec>& trace, sched::PolicyKind policy,
             const EngineConfig& config)
      : trace_(trace), policy_(policy), config_(config), scheduler_(policy), gpu_(config.capacity) {}

  RunResult run();

 private:
  void log(Seconds t, const char* kind, std::optional<JobId> job, std::optional<LaneId> lane,
           ordered_json detail = ordered_json::object()) {
    result_.log.append({t, kind, job, lane, std::move(detail)});
  }
  void push(Seconds t, EventKind kind, JobId job, LaneId lane) {
    queue_.push({t, kind, job, seq_++, lane});
  }

  void on_arrive(const Event& event);
  void on_iteration_end(const Event& event);
  void settle(Seconds t);
  void dispatch(Seconds t);
  void flush(Seconds t);
  const char* reason() const;

  const std::vector<workload::JobSpec>& trace_;
  sched::PolicyKind policy_;
  EngineConfig config_;
  sched::Scheduler scheduler_;
  lane::GpuState gpu_;
  sched::JobTable jobs_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue_;
  std::uint64_t seq_ = 0;
  std::map<LaneId, Running> running_;
  std::map<LaneId, JobId> last_job_;
  RunResult result_;
};

const char* Simulation::reason() const {
  switch (policy_) {
    case sched::PolicyKind::srtf:
      return "least_remaining";
    case sched::PolicyKind::fair:
      return "least_service";
    default:
      return "earliest_arrival";
  }
}

void Simulation::flush(Seconds t) {
  for (const lane::LaneEvent& e : gpu_.drain_events()) {
    switch (e.kind) {
      case lane::LaneEventKind::lane_created:
        log(t, "LaneCreated", std::nullopt, e.lane, {{"size_bytes", e.bytes}, {"base_offset", e.to}});
        break;
      case lane::LaneEventKind::lane_deleted:
        log(t, "LaneDeleted", std::nullopt, e.lane,
            {{"size_bytes", e.bytes}, {"base_offset", e.from}});
        break;
      case lane::LaneEventKind::lane_moved:
        log(t, "LaneMoved", std::nullopt, e.lane,
            {{"size_bytes", e.bytes}, {"from_offset", e.from}, {"to_offset", e.to}});
        break;
      case lane::LaneEventKind::lane_resized:
        log(t, "LaneResized", std::nullopt, e.lane,
            {{"from_bytes", e.from}, {"to_bytes", e.to}});
        break;
      case lane::LaneEventKind::job_assigned: {
        sched::JobProgress& p = result_.progress.at(*e.job);
        p.state = JobState::waiting;
        std::optional<Seconds> floor;
        if (gpu_.lanes().count(*e.lane) != 0) {
          for (JobId other : gpu_.lane(*e.lane).resident_jobs) {
            const sched::JobProgress& q = result_.progress.at(other);
            if (other == *e.job || (q.state != JobState::waiting && q.state != JobState::running)) {
              continue;
            }
            // A running resident is charged for its current iteration up front.
            Seconds level = q.fair_service;
            if (auto r = running_.find(*e.lane); r != running_.end() && r->second.job == other) {
              level += r->second.elapsed;
            }
            floor = floor ? std::min(*floor, level) : level;
          }
        }
        if (floor) p.fair_service = std::max(p.fair_service, *floor);
        log(t, "JobAssigned", e.job, e.lane,
            {{"persistent_bytes", e.bytes},
             {"outcome", std::string(lane::to_string(e.outcome.value_or(lane::Outcome::queued)))}});
        break;
      }
      case lane::LaneEventKind::job_queued:
        break;
      case lane::LaneEventKind::job_released:
        log(t, "JobReleased", e.job, e.lane, {{"persistent_bytes", e.bytes}});
        break;
      case lane::LaneEventKind::job_evicted: {
        sched::JobProgress& p = result_.progress.at(*e.job);
        p.state = JobState::queued;
        p.swapped_out = true;
        log(t, "JobEvicted", e.job, e.lane, {{"persistent_bytes", e.bytes}});
        break;
      }
    }
  }
}

void Simulation::on_arrive(const Event& event) {
  const workload::JobSpec& job = jobs_.at(event.job);
  result_.progress[job.id] = sched::JobProgress{job.id};
  log(event.t, "JobArrive", job.id, std::nullopt,
      {{"name", job.name},
       {"kind", std::string(workload::to_string(job.kind))},
       {"batch", workload::batch_size(job.name)},
       {"persistent_bytes", job.persistent_bytes},
       {"ephemeral_bytes", job.ephemeral_bytes},
       {"iteration_duration_s", job.iteration_duration},
       {"iteration_count", job.iteration_count},
       {"compute_fraction", job.compute_fraction}});
  const lane::LaneDecision decision = scheduler_.admit(gpu_, job, result_.progress);
  flush(event.t);
  if (!decision.assigned()) {
    log(event.t, "JobQueued", job.id, std::nullopt,
        {{"waiting_for", policy_ == sched::PolicyKind::fifo && scheduler_.fifo_waiting() > 0
                             ? "gpu"
                             : "memory"}});
  }
}

void Simulation::on_iteration_end(const Event& event) {
  const Running run = running_.at(event.lane);
  running_.erase(event.lane);
  gpu_.set_active(event.lane, false);
  const workload::JobSpec& job = jobs_.at(run.job);
  sched::JobProgress& p = result_.progress.at(run.job);
  p = sched::update_service(p, run.elapsed);
  p.state = JobState::waiting;
  const bool final = event.kind == EventKind::job_finish;
  log(event.t, "IterationEnd", job.id, event.lane,
      {{"iteration", p.iterations_done},
       {"elapsed", run.elapsed},
       {"ephemeral_bytes", job.ephemeral_bytes},
       {"final", final}});
  if (!final) return;
  p.state = JobState::finished;
  log(event.t, "JobFinish", job.id, event.lane,
      {{"iterations", p.iterations_done}, {"service_s", p.service_time}});
  gpu_.job_finish(job.id);
  flush(event.t);
}

void Simulation::dispatch(Seconds t) {
  std::vector<std::pair<LaneId, JobId>> picks;
  for (const auto& [id, lane] : gpu_.lanes()) {
    if (running_.count(id) != 0) continue;
    if (auto next = sched::select_next(policy_, lane, jobs_, result_.progress)) {
      picks.emplace_back(id, *next);
    }
  }
  if (picks.empty()) return;

  std::vector<workload::JobSpec> concurrent;
  for (const auto& [lane, r] : running_) concurrent.push_back(jobs_.at(r.job));
  for (const auto& [lane, job] : picks) concurrent.push_back(jobs_.at(job));

  for (const auto& [lane, id] : picks) {
    const workload::JobSpec& job = jobs_.at(id);
    sched::JobProgress& p = result_.progress.at(id);
    const Seconds duration = effective_iteration_duration(job, concurrent, config_);
    auto last = last_job_.find(lane);
    const bool switched = last != last_job_.end() && last->second != id;
    const Seconds overhead = switched ? config_.switch_overhead : 0.0;
    const Seconds swap_in =
        p.swapped_out ? workload::min_transfer_time(job.persistent_bytes, config_.bandwidth) : 0.0;
    p.swapped_out = false;
    const Seconds elapsed = duration + overhead + swap_in;
    const bool final = p.iterations_done + 1 == job.iteration_count;

    log(t, "IterationStart", id, lane,
        {{"iteration", p.iterations_done + 1},
         {"ephemeral_bytes", job.ephemeral_bytes},
         {"reason", reason()},
         {"switched", switched},
         {"duration", duration},
         {"switch_overhead", overhead},
         {"swap_in", swap_in},
         {"elapsed", elapsed}});
    push(t + elapsed, final ? EventKind::job_finish : EventKind::iteration_end, id, lane);
    gpu_.set_active(lane, true);
    last_job_[lane] = id;
    running_[lane] = Running{id, elapsed};
    p.state = JobState::running;
    result_.lane_busy[lane] += elapsed;
  }
}

void Simulation::settle(Seconds t) {
  // Iteration boundary: idle lanes carry no live ephemeral data and can move.
  gpu_.compact_idle();
  flush(t);
  scheduler_.rebalance(gpu_, jobs_, result_.progress);
  flush(t);
  gpu_.process_requests();
  flush(t);
  dispatch(t);
  if (!gpu_.check_safety() || !gpu_.check_layout()) {
    throw ContractViolation("GPU memory invariant broken at t=" + std::to_string(t));
  }
}

RunResult Simulation::run() {
  validate(config_);
  for (const auto& job : trace_) {
    workload::validate(job);
    if (!jobs_.emplace(job.id, job).second) {
      throw ValidationError("duplicate job id " + std::to_string(job.id));
    }
  }
  log(0.0, "RunStart", std::nullopt, std::nullopt,
      {{"capacity_bytes", config_.capacity},
       {"policy", std::string(sched::to_string(policy_))},
       {"switch_overhead_s", config_.switch_overhead},
       {"interference", std::string(to_string(config_.interference))},
       {"bandwidth", config_.bandwidth},
       {"seed", config_.seed},
       {"jobs", trace_.size()}});
  for (const auto& [id, job] : jobs_) push(job.arrival_time, EventKind::job_arrive, id, -1);

  while (!queue_.empty()) {
    const Seconds t = queue_.top().t;
    while (!queue_.empty() && queue_.top().t == t) {
      const Event event = queue_.top();
      queue_.pop();
      if (event.kind == EventKind::job_arrive) {
        on_arrive(event);
      } else {
        on_iteration_end(event);
      }
    }
    settle(t);
    result_.end_time = t;
  }

  for (const auto& [id, p] : result_.progress) {
    if (p.state != JobState::finished) {
      throw StateError("simulation stalled with job " + std::to_string(id) + " unfinished");
    }
  }
  return std::move(result_);
}

}  // namespace

RunResult run(const std::vector<workload::JobSpec>& trace, sched::PolicyKind policy,
              const EngineConfig& config) {
  Simulation simulation(trace, policy, config);
  return simulation.run();
}

}  // namespace gpulane::engine

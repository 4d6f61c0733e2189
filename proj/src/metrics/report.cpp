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


#include "gpulane/metrics/report.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "gpulane/errors.hpp"
#include "gpulane/workload/job.hpp"

namespace gpulane::metrics {

namespace {

Bytes detail_bytes(const engine::LogEvent& event, const char* key) {
  auto it = event.detail.find(key);
  if (it == event.detail.end() || !it->is_number_integer()) {
    throw ValidationError(event.kind + " at t=" + std::to_string(event.t) + " lacks '" + key + "'");
  }
  return it->get<Bytes>();
}

double detail_number(const engine::LogEvent& event, const char* key) {
  auto it = event.detail.find(key);
  if (it == event.detail.end() || !it->is_number()) {
    throw ValidationError(event.kind + " at t=" + std::to_string(event.t) + " lacks '" + key + "'");
  }
  return it->get<double>();
}

JobId job_of(const engine::LogEvent& event) {
  if (!event.job) throw ValidationError(event.kind + " event without a job id");
  return *event.job;
}

std::int64_t batch_of(const engine::LogEvent& arrive) {
  auto it = arrive.detail.find("batch");
  if (it != arrive.detail.end() && it->is_number_integer()) return it->get<std::int64_t>();
  auto name = arrive.detail.find("name");
  if (name != arrive.detail.end() && name->is_string()) {
    return workload::batch_size(name->get<std::string>());
  }
  return 1;
}

// Per-job rate tracking shared by the report and throughput_series.
class RateTracker {
 public:
  std::optional<ThroughputSample> observe(const engine::LogEvent& event) {
    if (event.kind == "JobArrive") {
      batch_[job_of(event)] = batch_of(event);
    } else if (event.kind == "IterationStart") {
      last_end_.try_emplace(job_of(event), event.t);
    } else if (event.kind == "IterationEnd") {
      const JobId job = job_of(event);
      auto last = last_end_.find(job);
      if (last == last_end_.end()) throw ValidationError("IterationEnd before IterationStart");
      const Seconds span = event.t - last->second;
      last->second = event.t;
      auto batch = batch_.find(job);
      const double items = double(batch == batch_.end() ? 1 : batch->second);
      return ThroughputSample{event.t, job, span > 0.0 ? items / span : 0.0};
    }
    return std::nullopt;
  }

 private:
  std::map<JobId, std::int64_t> batch_;
  std::map<JobId, Seconds> last_end_;
};

}  // namespace

double percentile_nearest_rank(std::vector<double> values, double p) {
  if (values.empty()) throw DomainError("percentile of an empty set");
  if (!(p > 0.0 && p <= 100.0)) throw DomainError("percentile must be in (0, 100]");
  std::sort(values.begin(), values.end());
  const double n = double(values.size());
  auto rank = std::size_t(std::ceil(p * n / 100.0 - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

SimReport compute_report(const engine::RunLog& log) {
  SimReport report;
  std::map<JobId, bool> started;
  std::map<JobId, bool> finished;
  RateTracker rates;
  MemorySample current;
  std::optional<Seconds> sample_time;

  auto close_sample = [&] {
    if (!sample_time) return;
    current.t = *sample_time;
    if (!report.memory_timeline.empty() && report.memory_timeline.back().t == current.t) {
      report.memory_timeline.back() = current;
    } else {
      report.memory_timeline.push_back(current);
    }
  };

  for (const engine::LogEvent& event : log.events()) {
    if (sample_time && event.t != *sample_time) close_sample();
    sample_time = event.t;

    if (auto sample = rates.observe(event)) report.throughput_timeline.push_back(*sample);

    const std::string& kind = event.kind;
    if (kind == "RunStart") {
      if (auto it = event.detail.find("policy"); it != event.detail.end() && it->is_string()) {
        report.policy = it->get<std::string>();
      }
      if (event.detail.contains("capacity_bytes")) {
        report.capacity = detail_bytes(event, "capacity_bytes");
      }
    } else if (kind == "JobArrive") {
      const JobId id = job_of(event);
      JobStats& stats = report.per_job[id];
      stats.id = id;
      stats.arrival = event.t;
      stats.batch = batch_of(event);
      if (auto it = event.detail.find("name"); it != event.detail.end() && it->is_string()) {
        stats.name = it->get<std::string>();
      }
    } else if (kind == "IterationStart") {
      const JobId id = job_of(event);
      if (!started[id]) {
        started[id] = true;
        report.per_job[id].first_start = event.t;
      }
      current.ephemeral_in_use_bytes += detail_bytes(event, "ephemeral_bytes");
    } else if (kind == "IterationEnd") {
      current.ephemeral_in_use_bytes -= detail_bytes(event, "ephemeral_bytes");
    } else if (kind == "JobFinish") {
      const JobId id = job_of(event);
      finished[id] = true;
      report.per_job[id].completion = event.t;
    } else if (kind == "JobAssigned") {
      current.persistent_bytes += detail_bytes(event, "persistent_bytes");
    } else if (kind == "JobReleased") {
      current.persistent_bytes -= detail_bytes(event, "persistent_bytes");
    } else if (kind == "LaneCreated") {
      current.lane_reserved_bytes += detail_bytes(event, "size_bytes");
    } else if (kind == "LaneDeleted") {
      current.lane_reserved_bytes -= detail_bytes(event, "size_bytes");
    } else if (kind == "LaneResized") {
      current.lane_reserved_bytes +=
          detail_bytes(event, "to_bytes") - detail_bytes(event, "from_bytes");
    }
  }
  close_sample();

  std::string unfinished;
  for (const auto& [id, stats] : report.per_job) {
    if (!finished[id]) unfinished += (unfinished.empty() ? "" : ", ") + std::to_string(id);
  }
  if (!unfinished.empty()) throw ValidationError("run log is truncated; unfinished jobs: " + unfinished);
  if (report.per_job.empty()) return report;

  std::vector<double> jcts;
  Seconds first_arrival = report.per_job.begin()->second.arrival;
  Seconds last_completion = report.per_job.begin()->second.completion;
  Seconds queuing = 0.0;
  for (auto& [id, stats] : report.per_job) {
    stats.jct = stats.completion - stats.arrival;
    stats.queuing = stats.first_start - stats.arrival;
    jcts.push_back(stats.jct);
    queuing += stats.queuing;
    first_arrival = std::min(first_arrival, stats.arrival);
    last_completion = std::max(last_completion, stats.completion);
  }
  const double n = double(jcts.size());
  report.makespan = last_completion - first_arrival;
  double total = 0.0;
  for (double j : jcts) total += j;
  report.avg_jct = total / n;
  report.avg_queuing = queuing / n;
  report.p95_jct = percentile_nearest_rank(jcts, 95.0);
  return report;
}

std::vector<std::pair<Seconds, double>> jct_cdf(const SimReport& report) {
  if (report.per_job.empty()) throw DomainError("JCT CDF of an empty report");
  std::vector<Seconds> jcts;
  for (const auto& [id, stats] : report.per_job) jcts.push_back(stats.jct);
  std::sort(jcts.begin(), jcts.end());
  std::vector<std::pair<Seconds, double>> cdf;
  const double n = double(jcts.size());
  for (std::size_t i = 0; i < jcts.size(); ++i) {
    if (i + 1 < jcts.size() && jcts[i + 1] == jcts[i]) continue;
    cdf.emplace_back(jcts[i], double(i + 1) / n);
  }
  return cdf;
}

std::vector<ThroughputSample> throughput_series(const engine::RunLog& log, JobId job) {
  RateTracker rates;
  std::vector<ThroughputSample> series;
  for (const engine::LogEvent& event : log.events()) {
    auto sample = rates.observe(event);
    if (sample && sample->job == job) series.push_back(*sample);
  }
  return series;
}

Seconds lane_busy_time(const engine::RunLog& log) {
  Seconds total = 0.0;
  for (const engine::LogEvent& event : log.events()) {
    if (event.kind == "IterationEnd") total += detail_number(event, "elapsed");
  }
  return total;
}

std::map<JobId, Seconds> service_by_job(const engine::RunLog& log) {
  std::map<JobId, Seconds> service;
  for (const engine::LogEvent& event : log.events()) {
    if (event.kind == "IterationEnd") service[job_of(event)] += detail_number(event, "elapsed");
  }
  return service;
}

}  // namespace gpulane::metrics

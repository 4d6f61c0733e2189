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


#include "gpulane/sched/policy.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <tuple>

#include "gpulane/errors.hpp"

namespace gpulane::sched {

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::fifo:
      return "FIFO";
    case PolicyKind::srtf:
      return "SRTF";
    case PolicyKind::pack:
      return "PACK";
    case PolicyKind::fair:
      return "FAIR";
  }
  return "FIFO";
}

PolicyKind parse_policy(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  if (lower == "fifo") return PolicyKind::fifo;
  if (lower == "srtf") return PolicyKind::srtf;
  if (lower == "pack") return PolicyKind::pack;
  if (lower == "fair") return PolicyKind::fair;
  throw ConfigError("unknown policy '" + std::string(text) +
                    "' (expected one of: fifo, srtf, pack, fair)");
}

std::string_view to_string(JobState state) {
  switch (state) {
    case JobState::queued:
      return "queued";
    case JobState::waiting:
      return "waiting";
    case JobState::running:
      return "running";
    case JobState::finished:
      return "finished";
  }
  return "queued";
}

Seconds remaining_time(const workload::JobSpec& job, const JobProgress& progress) {
  const std::int64_t left = job.iteration_count - progress.iterations_done;
  if (left <= 0) {
    throw DomainError("job " + std::to_string(job.id) + " has no iterations left");
  }
  return double(left) * job.iteration_duration;
}

JobProgress update_service(JobProgress progress, Seconds elapsed) {
  if (!(elapsed >= 0.0)) throw DomainError("elapsed time must be non-negative");
  progress.service_time += elapsed;
  progress.fair_service += elapsed;
  progress.iterations_done += 1;
  return progress;
}

std::optional<JobId> select_next(PolicyKind policy, const lane::Lane& lane, const JobTable& jobs,
                                 const ProgressTable& progress) {
  std::optional<JobId> best;
  std::tuple<double, Seconds, JobId> best_key{};
  for (JobId id : lane.resident_jobs) {
    const JobProgress& p = progress.at(id);
    if (p.state != JobState::waiting) continue;
    const workload::JobSpec& job = jobs.at(id);
    double primary = 0.0;
    if (policy == PolicyKind::srtf) primary = remaining_time(job, p);
    if (policy == PolicyKind::fair) primary = p.fair_service;
    const std::tuple<double, Seconds, JobId> key{primary, job.arrival_time, id};
    if (!best || key < best_key) {
      best = id;
      best_key = key;
    }
  }
  return best;
}

}  // namespace gpulane::sched

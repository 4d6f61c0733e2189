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


#include "gpulane/sched/scheduler.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "gpulane/errors.hpp"

namespace gpulane::sched {

lane::JobDemand demand_of(const workload::JobSpec& job) {
  return {job.id, job.persistent_bytes, job.ephemeral_bytes};
}

double Scheduler::priority(const workload::JobSpec& job, const JobProgress& progress) const {
  return kind_ == PolicyKind::srtf ? remaining_time(job, progress) : 0.0;
}

lane::LaneDecision Scheduler::admit(lane::GpuState& gpu, const workload::JobSpec& job,
                                    const ProgressTable& progress) {
  if (kind_ != PolicyKind::fifo) {
    return gpu.job_arrive(demand_of(job), priority(job, progress.at(job.id)));
  }
  if (job.persistent_bytes > gpu.capacity() - job.ephemeral_bytes) {
    throw UnschedulableError(job.id, "job " + std::to_string(job.id) +
                                         " needs more memory than the GPU has (P + E > C)");
  }
  if (gpu.admitted_count() == 0 && gpu.pending().empty() && fifo_queue_.empty()) {
    return gpu.job_arrive(demand_of(job));
  }
  fifo_queue_.push_back(job);
  return lane::LaneDecision::queued();
}

std::vector<JobId> Scheduler::rebalance(lane::GpuState& gpu, const JobTable& jobs,
                                        const ProgressTable& progress) {
  std::vector<JobId> evicted;
  if (kind_ == PolicyKind::fifo) {
    if (gpu.admitted_count() == 0 && gpu.pending().empty() && !fifo_queue_.empty()) {
      const workload::JobSpec next = fifo_queue_.front();
      fifo_queue_.pop_front();
      gpu.job_arrive(demand_of(next));
    }
    return evicted;
  }
  if (kind_ != PolicyKind::srtf) return evicted;

  gpu.process_requests();
  // Each pass admits the head of the queue or stops, so the bound is loose.
  const std::size_t max_passes = gpu.pending().size() + gpu.admitted_count() + 1;
  for (std::size_t pass = 0; pass < max_passes && !gpu.pending().empty(); ++pass) {
    const lane::PendingRequest head = gpu.pending().front();

    std::vector<JobId> candidates;
    for (const auto& [id, p] : progress) {
      if (p.state != JobState::waiting || !gpu.is_admitted(id)) continue;
      if (remaining_time(jobs.at(id), p) > head.priority) candidates.push_back(id);
    }
    // Longest remaining first; later arrivals first among equals.
    std::sort(candidates.begin(), candidates.end(), [&](JobId a, JobId b) {
      const double ra = remaining_time(jobs.at(a), progress.at(a));
      const double rb = remaining_time(jobs.at(b), progress.at(b));
      if (ra != rb) return ra > rb;
      if (jobs.at(a).arrival_time != jobs.at(b).arrival_time) {
        return jobs.at(a).arrival_time > jobs.at(b).arrival_time;
      }
      return a > b;
    });

    if (candidates.empty()) break;

    // Cheap lower bound on the memory the head needs once every candidate
    // is gone; skips the trial run in the common hopeless case.
    const std::set<JobId> leaving(candidates.begin(), candidates.end());
    Bytes needed = gpu.persistent_total() + head.job.persistent;
    for (JobId id : candidates) needed -= gpu.demand(id).persistent;
    Bytes widest = 0;
    for (const auto& [lane_id, lane] : gpu.lanes()) {
      Bytes keep = 0;
      bool kept = false;
      for (JobId r : lane.resident_jobs) {
        if (leaving.count(r) != 0) continue;
        kept = true;
        keep = std::max(keep, gpu.demand(r).ephemeral);
      }
      if (!kept) continue;
      needed += keep;
      widest = std::max(widest, keep);
    }
    needed += std::max<Bytes>(0, head.job.ephemeral - widest);
    if (needed > gpu.capacity()) break;

    lane::GpuState trial = gpu;
    for (JobId id : candidates) trial.evict(id, 0.0);
    if (!trial.can_place(head.job)) break;

    // Smallest prefix of the eviction order that makes room.
    trial = gpu;
    std::vector<JobId> chosen;
    bool fits = false;
    for (JobId id : candidates) {
      trial.evict(id, 0.0);
      chosen.push_back(id);
      if (trial.can_place(head.job)) {
        fits = true;
        break;
      }
    }
    if (!fits) break;
    for (JobId id : chosen) gpu.evict(id, remaining_time(jobs.at(id), progress.at(id)));
    gpu.process_requests();
    evicted.insert(evicted.end(), chosen.begin(), chosen.end());
  }
  return evicted;
}

}  // namespace gpulane::sched

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


#pragma once

#include <deque>
#include <vector>

#include "gpulane/lane/gpu_state.hpp"
#include "gpulane/sched/policy.hpp"

namespace gpulane::sched {

lane::JobDemand demand_of(const workload::JobSpec& job);

// Admission side of a policy. FIFO keeps its own queue and hands the GPU to
// one job at a time; the other policies queue inside the lane manager.
class Scheduler {
 public:
  explicit Scheduler(PolicyKind kind) : kind_(kind) {}

  PolicyKind kind() const { return kind_; }

  // Handles an arrival. Returns the lane decision, `queued` when the job has
  // to wait. Throws UnschedulableError if the job can never fit.
  lane::LaneDecision admit(lane::GpuState& gpu, const workload::JobSpec& job,
                           const ProgressTable& progress);

  // Runs at every scheduling point after finishes were applied. FIFO starts
  // the next queued job once the GPU is empty. SRTF evicts waiting admitted
  // jobs with more remaining time than the head of the queue when that lets
  // the head in. Returns the evicted job ids.
  std::vector<JobId> rebalance(lane::GpuState& gpu, const JobTable& jobs,
                               const ProgressTable& progress);

  // Priority key for the lane manager's queue.
  double priority(const workload::JobSpec& job, const JobProgress& progress) const;

  std::size_t fifo_waiting() const { return fifo_queue_.size(); }

 private:
  PolicyKind kind_;
  std::deque<workload::JobSpec> fifo_queue_;
};

}  // namespace gpulane::sched

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

#include <cstdint>
#include <string_view>
#include <vector>

#include "gpulane/types.hpp"

namespace gpulane::engine {

enum class MemType { model, ephemeral, framework };

std::string_view to_string(MemType type);

// One allocation (delta > 0) or release (delta < 0) made while a job runs.
struct AllocationStep {
  Bytes delta_bytes = 0;
  MemType mem_type = MemType::ephemeral;
  std::int64_t sequence_index = 0;

  friend bool operator==(const AllocationStep&, const AllocationStep&) = default;
};

struct ProgressiveJob {
  JobId id = 0;
  std::vector<AllocationStep> steps;
};

// Throws ValidationError unless: sequence indices strictly increase; model
// and framework steps are positive and precede the first ephemeral step; the
// running ephemeral total never drops below zero and ends at zero.
void validate(const ProgressiveJob& job);

struct BlockedJob {
  JobId job = 0;
  Bytes request_bytes = 0;

  friend bool operator==(const BlockedJob&, const BlockedJob&) = default;
};

struct DeadlockReport {
  bool deadlocked = false;
  std::vector<BlockedJob> blocked_jobs;  // empty unless deadlocked
  Bytes free_bytes = 0;                  // at detection, or at the end
  std::vector<JobId> completed;          // in completion order
  std::int64_t steps_applied = 0;
};

// Snapshot of a shared pool: the free bytes and the next request of every
// unfinished job.
struct PoolState {
  Bytes free_bytes = 0;
  std::vector<Bytes> pending_requests;
};

// True iff there is at least one unfinished job and every pending request is
// larger than the free bytes.
bool detect_deadlock(const PoolState& pool);

// Replays the jobs' allocation steps at kernel granularity. Steps from all
// jobs interleave by (sequence_index, position in `scenario`); the smallest
// grantable step goes next and releases are always grantable.
//
// Without lanes every step draws from one shared pool. With lanes each job is
// admitted through the lane manager, its ephemeral steps draw from its lane
// and a lane serves one job's iteration at a time. Throws ValidationError for
// malformed steps and UnschedulableError when a job can never fit (lanes only).
DeadlockReport run_progressive(const std::vector<ProgressiveJob>& scenario, Bytes capacity,
                               bool lanes_enabled);

// Two jobs, 1 GiB persistent each, growing scratch by 2, 2, then 3 GiB in
// lockstep before releasing all 7 GiB.
std::vector<ProgressiveJob> interleaved_growth_scenario();

}  // namespace gpulane::engine

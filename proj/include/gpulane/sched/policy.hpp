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
#include <map>
#include <optional>
#include <string_view>

#include "gpulane/lane/gpu_state.hpp"
#include "gpulane/types.hpp"
#include "gpulane/workload/job.hpp"

namespace gpulane::sched {

enum class PolicyKind { fifo, srtf, pack, fair };

std::string_view to_string(PolicyKind kind);  // "FIFO", "SRTF", ...
// Case-insensitive. Throws ConfigError listing the valid names.
PolicyKind parse_policy(std::string_view text);

enum class JobState { queued, waiting, running, finished };

std::string_view to_string(JobState state);

struct JobProgress {
  JobId job_id = 0;
  std::int64_t iterations_done = 0;
  Seconds service_time = 0.0;  // lane occupancy, switch and swap-in costs included
  // Occupancy used by FAIR. A job entering a lane starts from the smallest
  // value among the lane's residents instead of zero.
  Seconds fair_service = 0.0;
  JobState state = JobState::queued;
  bool swapped_out = false;  // evicted; the next admission pays a swap-in

  friend bool operator==(const JobProgress&, const JobProgress&) = default;
};

// Solo time left: (iteration_count - iterations_done) * iteration_duration.
// Throws DomainError once the job has no iterations left.
Seconds remaining_time(const workload::JobSpec& job, const JobProgress& progress);

// Charges one finished iteration. Throws DomainError for negative `elapsed`.
JobProgress update_service(JobProgress progress, Seconds elapsed);

using JobTable = std::map<JobId, workload::JobSpec>;
using ProgressTable = std::map<JobId, JobProgress>;

// Picks the lane resident to run next among those in state `waiting`.
// FIFO and PACK: earliest arrival. SRTF: least remaining time. FAIR: least
// fair_service. Ties go to the earlier arrival, then the lower id.
std::optional<JobId> select_next(PolicyKind policy, const lane::Lane& lane, const JobTable& jobs,
                                 const ProgressTable& progress);

}  // namespace gpulane::sched

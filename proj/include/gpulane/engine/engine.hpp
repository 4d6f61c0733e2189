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
#include <string_view>
#include <vector>

#include "gpulane/engine/run_log.hpp"
#include "gpulane/sched/policy.hpp"
#include "gpulane/types.hpp"
#include "gpulane/workload/job.hpp"
#include "gpulane/workload/transfer.hpp"

namespace gpulane::engine {

enum class Interference { none, linear };

std::string_view to_string(Interference model);
// Throws ConfigError for anything but "none" or "linear".
Interference parse_interference(std::string_view text);

struct EngineConfig {
  Bytes capacity = 16 * kGiB;
  Seconds switch_overhead = 0.005;  // paid when a lane changes its running job
  Interference interference = Interference::linear;
  double bandwidth = workload::kDefaultTransferBandwidth;  // bytes/s, swap-in cost
  std::uint64_t seed = 0;  // recorded in the log; the engine draws no randomness
};

// Throws ConfigError.
void validate(const EngineConfig& config);

struct RunResult {
  RunLog log;
  sched::ProgressTable progress;  // final per-job accounting
  std::map<LaneId, Seconds> lane_busy;  // occupied seconds per lane
  Seconds end_time = 0.0;
};

// Simulates the trace to completion. Every job's iterations run inside its
// lane; lanes run in parallel and each lane runs one iteration at a time.
// Throws UnschedulableError for a job that can never fit, ValidationError for
// a bad trace.
RunResult run(const std::vector<workload::JobSpec>& trace, sched::PolicyKind policy,
              const EngineConfig& config);

// Solo duration under `none`; solo * max(1, sum of compute fractions of
// `concurrent`) under `linear`.
Seconds effective_iteration_duration(const workload::JobSpec& job,
                                     const std::vector<workload::JobSpec>& concurrent,
                                     const EngineConfig& config);

}  // namespace gpulane::engine

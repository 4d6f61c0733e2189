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

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gpulane/engine/run_log.hpp"
#include "gpulane/types.hpp"

namespace gpulane::metrics {

struct JobStats {
  JobId id = 0;
  std::string name;
  std::int64_t batch = 1;
  Seconds arrival = 0.0;
  Seconds first_start = 0.0;
  Seconds completion = 0.0;
  Seconds jct = 0.0;      // completion - arrival
  Seconds queuing = 0.0;  // first_start - arrival
};

struct MemorySample {
  Seconds t = 0.0;
  Bytes persistent_bytes = 0;
  Bytes ephemeral_in_use_bytes = 0;
  Bytes lane_reserved_bytes = 0;

  friend bool operator==(const MemorySample&, const MemorySample&) = default;
};

struct ThroughputSample {
  Seconds t = 0.0;
  JobId job = 0;
  double items_per_s = 0.0;

  friend bool operator==(const ThroughputSample&, const ThroughputSample&) = default;
};

struct SimReport {
  std::string policy;
  Bytes capacity = 0;
  std::map<JobId, JobStats> per_job;
  Seconds makespan = 0.0;  // latest completion - earliest arrival
  Seconds avg_jct = 0.0;
  Seconds p95_jct = 0.0;
  Seconds avg_queuing = 0.0;
  std::vector<MemorySample> memory_timeline;  // one sample per event time
  std::vector<ThroughputSample> throughput_timeline;
};

// Rebuilds all statistics from the run log alone. Throws ValidationError
// listing the jobs that arrived but never finished.
SimReport compute_report(const engine::RunLog& log);

// Nearest rank: the value at 1-based rank ceil(p/100 * n) of the sorted
// values. Throws DomainError for no values or p outside (0, 100].
double percentile_nearest_rank(std::vector<double> values, double p);

// (jct, fraction of jobs with JCT <= jct) at each distinct JCT. Throws
// DomainError for an empty report.
std::vector<std::pair<Seconds, double>> jct_cdf(const SimReport& report);

// Items per second at each of the job's IterationEnd events: batch divided
// by the time since the previous iteration of the same job ended (its first
// start for the first iteration). Waiting while other jobs hold the lane
// therefore lowers the rate.
std::vector<ThroughputSample> throughput_series(const engine::RunLog& log, JobId job);

// Sum of iteration elapsed times over the whole log.
Seconds lane_busy_time(const engine::RunLog& log);

// Seconds of iteration time logged for each job.
std::map<JobId, Seconds> service_by_job(const engine::RunLog& log);

}  // namespace gpulane::metrics

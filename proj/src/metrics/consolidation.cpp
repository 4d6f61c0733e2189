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


#include "gpulane/metrics/consolidation.hpp"

#include <string>

#include "gpulane/errors.hpp"
#include "gpulane/lane/gpu_state.hpp"

namespace gpulane::metrics {

ConsolidationResult consolidation(const std::vector<workload::JobSpec>& jobs, Bytes capacity) {
  std::vector<lane::GpuState> gpus;
  for (const auto& job : jobs) {
    const lane::JobDemand demand{job.id, job.persistent_bytes, job.ephemeral_bytes};
    bool placed = false;
    for (auto& gpu : gpus) {
      if (gpu.try_assign(demand).assigned()) {
        placed = true;
        break;
      }
    }
    if (placed) continue;
    gpus.emplace_back(capacity);
    if (!gpus.back().try_assign(demand).assigned()) {
      throw UnschedulableError(job.id, "job " + std::to_string(job.id) + " does not fit an empty GPU");
    }
  }
  ConsolidationResult result;
  result.jobs_packed = std::int64_t(jobs.size());
  result.gpus_without_sharing = result.jobs_packed;
  result.gpus_with_sharing = std::int64_t(gpus.size());
  if (result.gpus_with_sharing > 0) {
    result.factor = double(result.gpus_without_sharing) / double(result.gpus_with_sharing);
  }
  return result;
}

std::vector<workload::JobSpec> inference_job_set(const workload::Catalog& catalog, int instances) {
  if (instances < 0) throw DomainError("instances must be non-negative");
  std::vector<workload::JobSpec> jobs;
  JobId next_id = 0;
  for (const auto& model : catalog.models()) {
    const workload::CatalogEntry& entry = catalog.smallest_batch(model);
    if (entry.placeholder) continue;
    for (int i = 0; i < instances; ++i) {
      workload::JobSpec job;
      job.id = next_id++;
      job.name = entry.tag();
      job.persistent_bytes = entry.persistent_bytes;
      job.ephemeral_bytes = entry.inference_ephemeral_bytes;
      job.iteration_duration = entry.solo_iteration_duration;
      job.iteration_count = 1;
      job.kind = workload::JobKind::inference;
      jobs.push_back(job);
    }
  }
  return jobs;
}

}  // namespace gpulane::metrics

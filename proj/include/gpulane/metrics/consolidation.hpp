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
#include <vector>

#include "gpulane/types.hpp"
#include "gpulane/workload/catalog.hpp"
#include "gpulane/workload/job.hpp"

namespace gpulane::metrics {

struct ConsolidationResult {
  std::int64_t jobs_packed = 0;
  std::int64_t gpus_without_sharing = 0;  // one GPU per job
  std::int64_t gpus_with_sharing = 0;
  double factor = 0.0;  // without / with; 0 for no jobs
};

// Places jobs in order onto simulated GPUs through the lane manager, each on
// the first GPU that admits it, opening a new GPU when none does. Throws
// UnschedulableError for a job that does not fit an empty GPU.
ConsolidationResult consolidation(const std::vector<workload::JobSpec>& jobs, Bytes capacity);

// Inference jobs for every model that has published memory numbers: the
// smallest batch of each, `instances` copies, grouped by model. P is the
// entry's persistent size and E its inference scratch.
std::vector<workload::JobSpec> inference_job_set(
    const workload::Catalog& catalog = workload::Catalog::builtin(), int instances = 3);

}  // namespace gpulane::metrics

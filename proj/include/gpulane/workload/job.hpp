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

#include <optional>
#include <string>
#include <string_view>

#include "gpulane/types.hpp"

namespace gpulane::workload {

enum class JobKind { training, inference, hyperparam };

std::string_view to_string(JobKind kind);
// Throws ParseError for anything but "training", "inference", "hyperparam".
JobKind parse_job_kind(std::string_view text);

// One deep-learning job as the simulator sees it. Model and framework-internal
// allocations are folded into `persistent_bytes`; `ephemeral_bytes` is the
// per-iteration scratch peak.
struct JobSpec {
  JobId id = 0;
  std::string name;  // model tag, e.g. "resnet152_75"
  Seconds arrival_time = 0.0;
  Bytes persistent_bytes = 0;
  Bytes ephemeral_bytes = 0;
  Seconds iteration_duration = 0.0;  // solo, uncontended
  std::int64_t iteration_count = 1;
  double compute_fraction = 1.0;  // share of GPU compute saturated when alone
  JobKind kind = JobKind::training;

  Seconds solo_duration() const { return iteration_duration * double(iteration_count); }
  Bytes peak_bytes() const { return persistent_bytes + ephemeral_bytes; }

  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

// Throws ValidationError naming the job when a field is out of range.
void validate(const JobSpec& job);

// Items processed per iteration, taken from the trailing "_<n>" of the model
// tag ("inception3_50" -> 50). Tags without a numeric suffix count as 1.
std::int64_t batch_size(std::string_view name);

}  // namespace gpulane::workload

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

#include "gpulane/workload/job.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "gpulane/errors.hpp"

namespace gpulane::workload {

std::string_view to_string(JobKind kind) {
  switch (kind) {
    case JobKind::training:
      return "training";
    case JobKind::inference:
      return "inference";
    case JobKind::hyperparam:
      return "hyperparam";
  }
  return "training";
}

JobKind parse_job_kind(std::string_view text) {
  if (text == "training") return JobKind::training;
  if (text == "inference") return JobKind::inference;
  if (text == "hyperparam") return JobKind::hyperparam;
  throw ParseError("unknown job kind '" + std::string(text) + "'", 0);
}

void validate(const JobSpec& job) {
  auto fail = [&](const std::string& what) {
    throw ValidationError("job " + std::to_string(job.id) + ": " + what);
  };
  if (job.persistent_bytes <= 0) fail("persistent_bytes must be > 0");
  if (job.ephemeral_bytes < 0) fail("ephemeral_bytes must be >= 0");
  if (!(job.iteration_duration > 0.0) || !std::isfinite(job.iteration_duration)) {
    fail("iteration_duration must be a positive finite number");
  }
  if (job.iteration_count < 1) fail("iteration_count must be >= 1");
  if (!(job.compute_fraction > 0.0 && job.compute_fraction <= 1.0)) {
    fail("compute_fraction must be in (0, 1]");
  }
  if (!(job.arrival_time >= 0.0) || !std::isfinite(job.arrival_time)) {
    fail("arrival_time must be a non-negative finite number");
  }
}

std::int64_t batch_size(std::string_view name) {
  const auto pos = name.rfind('_');
  if (pos == std::string_view::npos || pos + 1 >= name.size()) return 1;
  std::int64_t value = 0;
  const char* first = name.data() + pos + 1;
  const char* last = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || value <= 0) return 1;
  return value;
}

}  // namespace gpulane::workload

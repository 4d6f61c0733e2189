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

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "gpulane/workload/job.hpp"

namespace gpulane::workload {

// Trace files hold one JSON object per line:
//   {"id":..,"name":..,"arrival_time_s":..,"persistent_bytes":..,
//    "ephemeral_bytes":..,"iteration_duration_s":..,"iteration_count":..,
//    "compute_fraction":..,"kind":..}
// Blank lines are ignored. Jobs come back sorted by (arrival_time, id).
std::vector<JobSpec> load_trace(std::istream& in);
std::vector<JobSpec> load_trace_text(std::string_view text);
std::vector<JobSpec> load_trace_file(const std::string& path);

std::string serialize_job(const JobSpec& job);
std::string serialize_trace(const std::vector<JobSpec>& jobs);

}  // namespace gpulane::workload

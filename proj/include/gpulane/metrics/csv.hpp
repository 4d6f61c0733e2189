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

#include <filesystem>
#include <string>
#include <string_view>

#include "gpulane/engine/run_log.hpp"
#include "gpulane/metrics/report.hpp"

namespace gpulane::metrics {

// File bodies, header line included. Numbers use the shortest exact form.
std::string jct_cdf_csv(const SimReport& report);          // jct_s,fraction
std::string summary_csv(const SimReport& report);          // policy,makespan_s,avg_queuing_s,avg_jct_s,p95_jct_s
std::string memory_timeline_csv(const SimReport& report);  // t_s,persistent_bytes,ephemeral_in_use_bytes,lane_reserved_bytes
std::string throughput_csv(const SimReport& report);       // t_s,job,items_per_s

// Writes to a temporary sibling and renames it over `path`, so readers see
// either the old file, the complete new one, or nothing. Throws
// std::filesystem::filesystem_error or std::runtime_error.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Writes summary.csv, jct_cdf.csv, memory_timeline.csv and throughput.csv
// into `dir`, creating it if needed.
void write_report_files(const std::filesystem::path& dir, const SimReport& report);

// Writes run_log.jsonl, summary.csv, jct_cdf.csv, memory_timeline.csv and
// throughput.csv into `dir`, creating it if needed. jct_cdf.csv is header
// only for an empty report.
void write_outputs(const std::filesystem::path& dir, const engine::RunLog& log,
                   const SimReport& report);

}  // namespace gpulane::metrics

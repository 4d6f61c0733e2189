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


#include "gpulane/metrics/csv.hpp"

#include <fstream>
#include <stdexcept>

#include "gpulane/units.hpp"

namespace gpulane::metrics {

std::string jct_cdf_csv(const SimReport& report) {
  std::string out = "jct_s,fraction\n";
  if (report.per_job.empty()) return out;
  for (const auto& [jct, fraction] : jct_cdf(report)) {
    out += format_number(jct) + "," + format_number(fraction) + "\n";
  }
  return out;
}

std::string summary_csv(const SimReport& report) {
  return "policy,makespan_s,avg_queuing_s,avg_jct_s,p95_jct_s\n" + report.policy + "," +
         format_number(report.makespan) + "," + format_number(report.avg_queuing) + "," +
         format_number(report.avg_jct) + "," + format_number(report.p95_jct) + "\n";
}

std::string memory_timeline_csv(const SimReport& report) {
  std::string out = "t_s,persistent_bytes,ephemeral_in_use_bytes,lane_reserved_bytes\n";
  for (const auto& s : report.memory_timeline) {
    out += format_number(s.t) + "," + std::to_string(s.persistent_bytes) + "," +
           std::to_string(s.ephemeral_in_use_bytes) + "," + std::to_string(s.lane_reserved_bytes) +
           "\n";
  }
  return out;
}

std::string throughput_csv(const SimReport& report) {
  std::string out = "t_s,job,items_per_s\n";
  for (const auto& s : report.throughput_timeline) {
    out += format_number(s.t) + "," + std::to_string(s.job) + "," + format_number(s.items_per_s) +
           "\n";
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), std::streamsize(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("short write to " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

void write_report_files(const std::filesystem::path& dir, const SimReport& report) {
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / "summary.csv", summary_csv(report));
  write_file_atomic(dir / "jct_cdf.csv", jct_cdf_csv(report));
  write_file_atomic(dir / "memory_timeline.csv", memory_timeline_csv(report));
  write_file_atomic(dir / "throughput.csv", throughput_csv(report));
}

void write_outputs(const std::filesystem::path& dir, const engine::RunLog& log,
                   const SimReport& report) {
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / "run_log.jsonl", log.to_jsonl());
  write_report_files(dir, report);
}

}  // namespace gpulane::metrics

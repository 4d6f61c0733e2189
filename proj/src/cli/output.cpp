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


#include "gpulane/cli/output.hpp"

#include "gpulane/units.hpp"

namespace gpulane::cli {

std::string format_deadlock_report(const engine::DeadlockReport& report) {
  std::string out;
  out += std::string("deadlocked=") + (report.deadlocked ? "true" : "false") + "\n";
  out += "free_bytes=" + std::to_string(report.free_bytes) + " (" +
         format_bytes(report.free_bytes) + ")\n";
  for (const auto& blocked : report.blocked_jobs) {
    out += "blocked job=" + std::to_string(blocked.job) +
           " request_bytes=" + std::to_string(blocked.request_bytes) + " (" +
           format_bytes(blocked.request_bytes) + ")\n";
  }
  out += "completed=";
  for (std::size_t i = 0; i < report.completed.size(); ++i) {
    out += (i ? "," : "") + std::to_string(report.completed[i]);
  }
  out += "\nsteps_applied=" + std::to_string(report.steps_applied) + "\n";
  return out;
}

std::string format_summary(const metrics::SimReport& report) {
  return report.policy + " jobs=" + std::to_string(report.per_job.size()) +
         " makespan_s=" + format_number(report.makespan) +
         " avg_queuing_s=" + format_number(report.avg_queuing) +
         " avg_jct_s=" + format_number(report.avg_jct) +
         " p95_jct_s=" + format_number(report.p95_jct) + "\n";
}

}  // namespace gpulane::cli

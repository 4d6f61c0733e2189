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

#include <string>

#include "gpulane/engine/progressive.hpp"
#include "gpulane/metrics/report.hpp"

namespace gpulane::cli {

// key=value lines: deadlocked, free_bytes, one "blocked" line per job and the
// completion order.
std::string format_deadlock_report(const engine::DeadlockReport& report);

// One line: policy, job count, makespan, average queuing/JCT, p95 JCT.
std::string format_summary(const metrics::SimReport& report);

}  // namespace gpulane::cli

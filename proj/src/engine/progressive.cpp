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


#include "gpulane/engine/progressive.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>

#include "gpulane/errors.hpp"
#include "gpulane/lane/gpu_state.hpp"

namespace gpulane::engine {

std::string_view to_string(MemType type) {
  switch (type) {
    case MemType::model:
      return "model";
    case MemType::ephemeral:
      return "ephemeral";
    case MemType::framework:
      return "framework";
  }
  return "ephemeral";
}

void validate(const ProgressiveJob& job) {
  const std::string who = "job " + std::to_string(job.id) + ": ";
  bool seen_ephemeral = false;
  Bytes ephemeral = 0;
  for (std::size_t i = 0; i < job.steps.size(); ++i) {
    const AllocationStep& step = job.steps[i];
    if (i > 0 && step.sequence_index <= job.steps[i - 1].sequence_index) {
      throw ValidationError(who + "sequence indices must strictly increase");
    }
    if (step.mem_type == MemType::ephemeral) {
      seen_ephemeral = true;
      ephemeral += step.delta_bytes;
      if (ephemeral < 0) throw ValidationError(who + "ephemeral total drops below zero");
      continue;
    }
    if (step.delta_bytes <= 0) throw ValidationError(who + "persistent steps must allocate");
    if (seen_ephemeral) {
      throw ValidationError(who + "persistent allocation after the iteration started");
    }
  }
  if (ephemeral != 0) throw ValidationError(who + "ephemeral allocations are not all released");
}

bool detect_deadlock(const PoolState& pool) {
  if (pool.pending_requests.empty()) return false;
  return std::all_of(pool.pending_requests.begin(), pool.pending_requests.end(),
                     [&](Bytes request) { return request > pool.free_bytes; });
}

namespace {

struct Cursor {
  const ProgressiveJob* job;
  std::size_t next = 0;
  Bytes ephemeral_live = 0;

  bool done() const { return next == job->steps.size(); }
  const AllocationStep& step() const { return job->steps[next]; }
};

// Picks the grantable step with the smallest (sequence_index, job position).
template <typename Grantable>
std::optional<std::size_t> pick(const std::vector<Cursor>& cursors, Grantable grantable) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < cursors.size(); ++i) {
    if (cursors[i].done() || !grantable(i)) continue;
    if (!best || cursors[i].step().sequence_index < cursors[*best].step().sequence_index) best = i;
  }
  return best;
}

DeadlockReport shared_pool(std::vector<Cursor>& cursors, Bytes capacity) {
  DeadlockReport report;
  Bytes free = capacity;
  while (true) {
    auto next = pick(cursors, [&](std::size_t i) {
      return cursors[i].step().delta_bytes <= free;
    });
    if (!next) break;
    Cursor& c = cursors[*next];
    free -= c.step().delta_bytes;
    ++c.next;
    ++report.steps_applied;
    if (c.done()) report.completed.push_back(c.job->id);
  }
  PoolState pool{free, {}};
  for (const Cursor& c : cursors) {
    if (c.done()) continue;
    pool.pending_requests.push_back(c.step().delta_bytes);
    report.blocked_jobs.push_back({c.job->id, c.step().delta_bytes});
  }
  report.deadlocked = detect_deadlock(pool);
  report.free_bytes = free;
  return report;
}

DeadlockReport with_lanes(std::vector<Cursor>& cursors, Bytes capacity) {
  DeadlockReport report;
  lane::GpuState gpu(capacity);
  for (const Cursor& c : cursors) {
    Bytes persistent = 0;
    Bytes live = 0;
    Bytes peak = 0;
    for (const auto& step : c.job->steps) {
      if (step.mem_type == MemType::ephemeral) {
        live += step.delta_bytes;
        peak = std::max(peak, live);
      } else {
        persistent += step.delta_bytes;
      }
    }
    // A job with no persistent steps still needs a non-zero reservation.
    gpu.job_arrive({c.job->id, std::max<Bytes>(persistent, 1), peak});
  }

  std::map<LaneId, JobId> holder;  // lane -> job mid-iteration
  while (true) {
    auto next = pick(cursors, [&](std::size_t i) {
      const Cursor& c = cursors[i];
      if (!gpu.is_admitted(c.job->id)) return false;
      if (c.step().mem_type != MemType::ephemeral) return true;
      auto h = holder.find(*gpu.lane_of(c.job->id));
      return h == holder.end() || h->second == c.job->id;
    });
    if (!next) break;
    Cursor& c = cursors[*next];
    const AllocationStep& step = c.step();
    if (step.mem_type == MemType::ephemeral) {
      const LaneId lane = *gpu.lane_of(c.job->id);
      c.ephemeral_live += step.delta_bytes;
      if (c.ephemeral_live > 0) {
        holder[lane] = c.job->id;
      } else {
        holder.erase(lane);
      }
    }
    ++c.next;
    ++report.steps_applied;
    if (c.done()) {
      report.completed.push_back(c.job->id);
      gpu.job_finish(c.job->id);
    }
  }
  for (const Cursor& c : cursors) {
    if (!c.done()) report.blocked_jobs.push_back({c.job->id, c.step().delta_bytes});
  }
  report.deadlocked = !report.blocked_jobs.empty();
  report.free_bytes = gpu.free_bytes();
  return report;
}

}  // namespace

DeadlockReport run_progressive(const std::vector<ProgressiveJob>& scenario, Bytes capacity,
                               bool lanes_enabled) {
  if (capacity <= 0) throw DomainError("capacity must be positive");
  std::set<JobId> ids;
  std::vector<Cursor> cursors;
  for (const auto& job : scenario) {
    validate(job);
    if (!ids.insert(job.id).second) {
      throw ValidationError("duplicate job id " + std::to_string(job.id));
    }
    cursors.push_back(Cursor{&job});
  }
  return lanes_enabled ? with_lanes(cursors, capacity) : shared_pool(cursors, capacity);
}

std::vector<ProgressiveJob> interleaved_growth_scenario() {
  auto job = [](JobId id) {
    return ProgressiveJob{id,
                          {{1 * kGiB, MemType::model, 0},
                           {2 * kGiB, MemType::ephemeral, 1},
                           {2 * kGiB, MemType::ephemeral, 2},
                           {3 * kGiB, MemType::ephemeral, 3},
                           {-7 * kGiB, MemType::ephemeral, 4}}};
  };
  return {job(0), job(1)};
}

}  // namespace gpulane::engine

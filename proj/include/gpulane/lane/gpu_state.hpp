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
#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "gpulane/types.hpp"

namespace gpulane::lane {

// Memory demand of one job: persistent bytes (model + framework-internal)
// live for the job's lifetime; ephemeral bytes are needed only while one of
// its iterations runs.
struct JobDemand {
  JobId id = 0;
  Bytes persistent = 0;
  Bytes ephemeral = 0;

  friend bool operator==(const JobDemand&, const JobDemand&) = default;
};

// A contiguous reservation in the ephemeral region. Iterations of the
// resident jobs are serialized inside a lane; lanes run in parallel.
struct Lane {
  LaneId lane_id = 0;
  Bytes size_bytes = 0;
  Bytes base_offset = 0;
  std::vector<JobId> resident_jobs;
  bool active = false;  // an iteration is executing in this lane

  std::int64_t ref_count() const { return std::int64_t(resident_jobs.size()); }
  Bytes top() const { return base_offset + size_bytes; }

  friend bool operator==(const Lane&, const Lane&) = default;
};

enum class Outcome { new_lane, existing_lane, replaced_lane, queued };
std::string_view to_string(Outcome outcome);

struct LaneDecision {
  Outcome outcome = Outcome::queued;
  std::optional<LaneId> lane_id;  // empty iff outcome == queued

  static LaneDecision queued() { return {}; }
  bool assigned() const { return outcome != Outcome::queued; }
  friend bool operator==(const LaneDecision&, const LaneDecision&) = default;
};

enum class LaneEventKind {
  lane_created,
  lane_deleted,
  lane_moved,
  lane_resized,
  job_assigned,
  job_queued,
  job_released,
  job_evicted,
};
std::string_view to_string(LaneEventKind kind);

// Structured record of every state change, drained by the engine into the
// run log. `bytes` is the lane size for lane events and the persistent
// demand for job events; from/to carry offsets (moves) or sizes (resizes).
struct LaneEvent {
  LaneEventKind kind;
  std::optional<JobId> job;
  std::optional<LaneId> lane;
  Bytes bytes = 0;
  Bytes from = 0;
  Bytes to = 0;
  std::optional<Outcome> outcome;  // job_assigned only

  friend bool operator==(const LaneEvent&, const LaneEvent&) = default;
};

struct PendingRequest {
  JobDemand job;
  double priority = 0.0;  // lower runs first; ties keep insertion order
  std::uint64_t seq = 0;
};

// GPU memory split into a persistent region growing up from offset 0 and an
// ephemeral region of lanes growing down from the capacity. Every public
// mutation keeps  persistent_total + sum(lane sizes) <= capacity  and keeps
// each lane exactly as large as its largest resident ephemeral demand.
//
// Admission decisions follow the three-step lane search (new lane, best
// fitting existing lane, grow the smallest sufficient lane). A decision is
// only committed once the resulting layout can be realized without touching
// lanes that are mid-iteration; idle lanes may be moved for free since their
// ephemeral memory is empty.
class GpuState {
 public:
  explicit GpuState(Bytes capacity);

  // Builds a compact state: lane k holds the jobs of lanes[k], lanes stacked
  // down from the capacity in order. Throws ValidationError if the result is
  // not safe.
  static GpuState with_lanes(Bytes capacity, const std::vector<std::vector<JobDemand>>& lanes);

  Bytes capacity() const { return capacity_; }
  Bytes persistent_total() const { return persistent_total_; }
  Bytes reserved_total() const;
  Bytes free_bytes() const { return capacity_ - persistent_total_ - reserved_total(); }

  const std::map<LaneId, Lane>& lanes() const { return lanes_; }
  const Lane& lane(LaneId id) const;
  const std::vector<PendingRequest>& pending() const { return pending_; }
  bool is_admitted(JobId id) const { return jobs_.count(id) != 0; }
  bool is_pending(JobId id) const;
  std::optional<LaneId> lane_of(JobId id) const;
  const JobDemand& demand(JobId id) const;
  std::size_t admitted_count() const { return jobs_.size(); }

  // Queues the job (ordered by priority, then arrival) and runs
  // process_requests. Throws DomainError for P <= 0 or E < 0,
  // UnschedulableError when P + E exceeds the capacity, StateError for an id
  // that is already known.
  LaneDecision job_arrive(const JobDemand& job, double priority = 0.0);

  // Pure lane search; never mutates. A new_lane decision names the id the
  // lane would receive.
  LaneDecision find_lane(Bytes persistent, Bytes ephemeral) const;

  // True if find_lane assigns the job and the lane layout can be realized.
  bool can_place(const JobDemand& job) const;

  // One pass over the pending queue in order, assigning every request that
  // finds a lane. Unassigned requests keep their relative order.
  std::vector<std::pair<JobId, LaneDecision>> process_requests();

  // Releases an admitted job. Deletes its lane when the lane empties (and then
  // reprocesses the queue); otherwise shrinks the lane to the largest
  // remaining demand. Throws StateError for an unknown id.
  void job_finish(JobId id);

  // Releases an admitted job like job_finish and puts it back on the pending
  // queue. Does not reprocess the queue.
  void evict(JobId id, double priority);

  // Assigns immediately or leaves the state untouched; never queues.
  LaneDecision try_assign(const JobDemand& job);

  // Drops a pending request. Throws StateError if it is not pending.
  void withdraw(JobId id);

  // Compacts every lane against the capacity end. Throws ContractViolation
  // (state unchanged) if a lane that would move is mid-iteration. Emits one
  // lane_moved per moved lane and reprocesses the queue if anything moved.
  std::vector<LaneId> defragment();

  // Same as defragment but leaves active lanes in place and packs idle lanes
  // around them. Used at iteration boundaries.
  std::vector<LaneId> compact_idle();

  void set_active(LaneId id, bool active);

  // persistent + lanes <= capacity and every lane sized to its max resident E.
  bool check_safety() const;
  // Lanes pairwise disjoint, inside [persistent_total, capacity).
  bool check_layout() const;

  std::vector<LaneEvent> drain_events();
  const std::vector<LaneEvent>& events() const { return events_; }

 private:
  struct Resident {
    JobDemand demand;
    LaneId lane;
  };

  // Target offsets for every lane that changes place, plus the offset of a
  // lane being created or grown.
  struct Placement {
    std::map<LaneId, Bytes> moved;
    Bytes target_base = 0;
  };

  std::optional<Placement> plan(const LaneDecision& decision, const JobDemand& job) const;
  void commit(const LaneDecision& decision, const JobDemand& job, const Placement& placement);
  void release(JobId id, bool* lane_deleted);
  void enqueue(const JobDemand& job, double priority);
  std::vector<LaneId> compact(bool skip_active);
  Bytes lowest_base() const;
  bool range_free(Bytes lo, Bytes hi, std::optional<LaneId> ignore) const;

  Bytes capacity_;
  Bytes persistent_total_ = 0;
  std::map<LaneId, Lane> lanes_;
  std::map<JobId, Resident> jobs_;
  std::vector<PendingRequest> pending_;
  LaneId next_lane_id_ = 0;
  std::uint64_t next_seq_ = 0;
  // Skips queue passes that cannot change anything: set when memory is freed,
  // a lane moves or a request arrives.
  bool queue_stale_ = false;
  bool layout_blocked_ = false;  // last pass had a fit that could not be placed
  std::vector<LaneEvent> events_;
};

}  // namespace gpulane::lane

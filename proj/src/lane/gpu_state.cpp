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

#include "gpulane/lane/gpu_state.hpp"

#include <algorithm>
#include <string>

#include "gpulane/errors.hpp"

namespace gpulane::lane {

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::new_lane:
      return "new_lane";
    case Outcome::existing_lane:
      return "existing_lane";
    case Outcome::replaced_lane:
      return "replaced_lane";
    case Outcome::queued:
      return "queued";
  }
  return "queued";
}

std::string_view to_string(LaneEventKind kind) {
  switch (kind) {
    case LaneEventKind::lane_created:
      return "LaneCreated";
    case LaneEventKind::lane_deleted:
      return "LaneDeleted";
    case LaneEventKind::lane_moved:
      return "LaneMoved";
    case LaneEventKind::lane_resized:
      return "LaneResized";
    case LaneEventKind::job_assigned:
      return "JobAssigned";
    case LaneEventKind::job_queued:
      return "JobQueued";
    case LaneEventKind::job_released:
      return "JobReleased";
    case LaneEventKind::job_evicted:
      return "JobEvicted";
  }
  return "";
}

GpuState::GpuState(Bytes capacity) : capacity_(capacity) {
  if (capacity <= 0) throw DomainError("GPU capacity must be positive");
}

GpuState GpuState::with_lanes(Bytes capacity, const std::vector<std::vector<JobDemand>>& lanes) {
  GpuState state(capacity);
  Bytes cursor = capacity;
  for (const auto& group : lanes) {
    if (group.empty()) throw ValidationError("with_lanes: every lane needs a resident job");
    Lane lane;
    lane.lane_id = state.next_lane_id_++;
    for (const auto& job : group) {
      if (job.persistent <= 0 || job.ephemeral < 0) {
        throw ValidationError("with_lanes: job " + std::to_string(job.id) + " has bad demand");
      }
      if (!state.jobs_.emplace(job.id, Resident{job, lane.lane_id}).second) {
        throw ValidationError("with_lanes: duplicate job " + std::to_string(job.id));
      }
      lane.resident_jobs.push_back(job.id);
      lane.size_bytes = std::max(lane.size_bytes, job.ephemeral);
      state.persistent_total_ += job.persistent;
    }
    if (lane.size_bytes > 0) {
      cursor -= lane.size_bytes;
      lane.base_offset = cursor;
    } else {
      lane.base_offset = capacity;
    }
    state.lanes_.emplace(lane.lane_id, std::move(lane));
  }
  if (!state.check_safety() || !state.check_layout()) {
    throw ValidationError("with_lanes: persistent + lanes exceed the capacity");
  }
  return state;
}

Bytes GpuState::reserved_total() const {
  Bytes total = 0;
  for (const auto& [id, lane] : lanes_) total += lane.size_bytes;
  return total;
}

const Lane& GpuState::lane(LaneId id) const {
  auto it = lanes_.find(id);
  if (it == lanes_.end()) throw StateError("unknown lane " + std::to_string(id));
  return it->second;
}

bool GpuState::is_pending(JobId id) const {
  return std::any_of(pending_.begin(), pending_.end(),
                     [id](const PendingRequest& r) { return r.job.id == id; });
}

std::optional<LaneId> GpuState::lane_of(JobId id) const {
  auto it = jobs_.find(id);
  if (it == jobs_.end()) return std::nullopt;
  return it->second.lane;
}

const JobDemand& GpuState::demand(JobId id) const {
  auto it = jobs_.find(id);
  if (it != jobs_.end()) return it->second.demand;
  for (const auto& r : pending_) {
    if (r.job.id == id) return r.job;
  }
  throw StateError("unknown job " + std::to_string(id));
}

LaneDecision GpuState::find_lane(Bytes persistent, Bytes ephemeral) const {
  const Bytes used = persistent_total_ + persistent + reserved_total();

  // 1. Open a new lane sized to this job.
  if (used + ephemeral <= capacity_) return {Outcome::new_lane, next_lane_id_};

  // 2. Share the smallest lane that already covers E; the persistent part
  //    must still fit next to the existing lanes.
  if (used <= capacity_) {
    const Lane* best = nullptr;
    for (const auto& [id, lane] : lanes_) {
      if (lane.size_bytes < ephemeral) continue;
      if (best == nullptr || lane.size_bytes < best->size_bytes) best = &lane;
    }
    if (best != nullptr) return {Outcome::existing_lane, best->lane_id};
  }

  // 3. Grow the smallest lane whose growth to E still fits. Lanes at least as
  //    large as E are excluded: they would have to shrink below a resident.
  std::vector<const Lane*> ascending;
  for (const auto& [id, lane] : lanes_) {
    if (lane.size_bytes < ephemeral) ascending.push_back(&lane);
  }
  std::stable_sort(ascending.begin(), ascending.end(), [](const Lane* a, const Lane* b) {
    return a->size_bytes < b->size_bytes;
  });
  for (const Lane* lane : ascending) {
    if (used - lane->size_bytes + ephemeral <= capacity_) {
      return {Outcome::replaced_lane, lane->lane_id};
    }
  }
  return LaneDecision::queued();
}

bool GpuState::can_place(const JobDemand& job) const {
  const LaneDecision decision = find_lane(job.persistent, job.ephemeral);
  return decision.assigned() && plan(decision, job).has_value();
}

Bytes GpuState::lowest_base() const {
  Bytes lowest = capacity_;
  for (const auto& [id, lane] : lanes_) {
    if (lane.size_bytes > 0) lowest = std::min(lowest, lane.base_offset);
  }
  return lowest;
}

bool GpuState::range_free(Bytes lo, Bytes hi, std::optional<LaneId> ignore) const {
  for (const auto& [id, lane] : lanes_) {
    if (lane.size_bytes == 0 || (ignore && *ignore == id)) continue;
    if (lane.base_offset < hi && lo < lane.top()) return false;
  }
  return true;
}

std::optional<GpuState::Placement> GpuState::plan(const LaneDecision& decision,
                                                  const JobDemand& job) const {
  const Bytes floor = persistent_total_ + job.persistent;
  const Bytes size = job.ephemeral;

  // Without moving anything.
  switch (decision.outcome) {
    case Outcome::new_lane: {
      if (lowest_base() < floor) break;
      if (size == 0) return Placement{{}, capacity_};
      std::vector<const Lane*> desc;
      for (const auto& [id, lane] : lanes_) {
        if (lane.size_bytes > 0) desc.push_back(&lane);
      }
      std::sort(desc.begin(), desc.end(),
                [](const Lane* a, const Lane* b) { return a->base_offset > b->base_offset; });
      Bytes gap_hi = capacity_;
      for (const Lane* lane : desc) {
        if (gap_hi - lane->top() >= size) return Placement{{}, gap_hi - size};
        gap_hi = lane->base_offset;
      }
      if (gap_hi - floor >= size) return Placement{{}, gap_hi - size};
      break;
    }
    case Outcome::existing_lane:
      if (lowest_base() >= floor) return Placement{{}, lanes_.at(*decision.lane_id).base_offset};
      break;
    case Outcome::replaced_lane: {
      const Lane& r = lanes_.at(*decision.lane_id);
      const Bytes base = r.top() - size;
      if (base >= floor && lowest_base() >= floor && range_free(base, r.top(), r.lane_id)) {
        return Placement{{}, base};
      }
      break;
    }
    case Outcome::queued:
      return std::nullopt;
  }

  // Re-pack idle lanes around the ones that are mid-iteration.
  struct Interval {
    Bytes lo, hi;
  };
  std::vector<Interval> fixed;
  std::vector<std::pair<const Lane*, Bytes>> movable;  // lane, target size
  std::optional<Bytes> grown_base;
  for (const auto& [id, lane] : lanes_) {
    const bool is_target =
        decision.outcome == Outcome::replaced_lane && *decision.lane_id == id;
    const Bytes lane_size = is_target ? size : lane.size_bytes;
    if (lane_size == 0) continue;
    if (lane.active) {
      const Bytes top = lane.top();
      fixed.push_back({top - lane_size, top});
      if (is_target) grown_base = top - lane_size;
    } else {
      movable.emplace_back(&lane, lane_size);
    }
  }
  std::sort(fixed.begin(), fixed.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    if (fixed[i].lo < floor || fixed[i].hi > capacity_) return std::nullopt;
    if (i > 0 && fixed[i - 1].hi > fixed[i].lo) return std::nullopt;
  }

  // Free space, highest first.
  std::vector<Interval> free;
  Bytes hi = capacity_;
  for (auto it = fixed.rbegin(); it != fixed.rend(); ++it) {
    if (hi > it->hi) free.push_back({it->hi, hi});
    hi = it->lo;
  }
  if (hi > floor) free.push_back({floor, hi});

  std::stable_sort(movable.begin(), movable.end(), [](const auto& a, const auto& b) {
    return a.first->base_offset > b.first->base_offset;
  });
  auto take = [&free](Bytes want) -> std::optional<Bytes> {
    for (auto& f : free) {
      if (f.hi - f.lo >= want) {
        f.hi -= want;
        return f.hi;
      }
    }
    return std::nullopt;
  };

  Placement placement;
  for (const auto& [lane, lane_size] : movable) {
    auto base = take(lane_size);
    if (!base) return std::nullopt;
    const bool is_target =
        decision.outcome == Outcome::replaced_lane && *decision.lane_id == lane->lane_id;
    if (is_target) {
      grown_base = *base;
    } else if (*base != lane->base_offset) {
      placement.moved.emplace(lane->lane_id, *base);
    }
  }
  switch (decision.outcome) {
    case Outcome::new_lane: {
      if (size == 0) {
        placement.target_base = capacity_;
        break;
      }
      auto base = take(size);
      if (!base) return std::nullopt;
      placement.target_base = *base;
      break;
    }
    case Outcome::existing_lane:
      placement.target_base = lanes_.at(*decision.lane_id).base_offset;
      if (auto it = placement.moved.find(*decision.lane_id); it != placement.moved.end()) {
        placement.target_base = it->second;
      }
      break;
    case Outcome::replaced_lane:
      placement.target_base = grown_base.value_or(capacity_);
      break;
    case Outcome::queued:
      break;
  }
  return placement;
}

void GpuState::commit(const LaneDecision& decision, const JobDemand& job,
                      const Placement& placement) {
  for (const auto& [id, base] : placement.moved) {
    Lane& lane = lanes_.at(id);
    events_.push_back({LaneEventKind::lane_moved, std::nullopt, id, lane.size_bytes,
                       lane.base_offset, base, std::nullopt});
    lane.base_offset = base;
  }
  LaneId target = 0;
  switch (decision.outcome) {
    case Outcome::new_lane: {
      Lane lane;
      lane.lane_id = next_lane_id_++;
      lane.size_bytes = job.ephemeral;
      lane.base_offset = placement.target_base;
      lane.resident_jobs.push_back(job.id);
      target = lane.lane_id;
      events_.push_back({LaneEventKind::lane_created, std::nullopt, target, lane.size_bytes, 0,
                         lane.base_offset, std::nullopt});
      lanes_.emplace(target, std::move(lane));
      break;
    }
    case Outcome::existing_lane: {
      target = *decision.lane_id;
      lanes_.at(target).resident_jobs.push_back(job.id);
      break;
    }
    case Outcome::replaced_lane: {
      target = *decision.lane_id;
      Lane& lane = lanes_.at(target);
      events_.push_back({LaneEventKind::lane_resized, std::nullopt, target, job.ephemeral,
                         lane.size_bytes, job.ephemeral, std::nullopt});
      lane.size_bytes = job.ephemeral;
      lane.base_offset = placement.target_base;
      lane.resident_jobs.push_back(job.id);
      break;
    }
    case Outcome::queued:
      return;
  }
  persistent_total_ += job.persistent;
  jobs_.emplace(job.id, Resident{job, target});
  events_.push_back({LaneEventKind::job_assigned, job.id, target, job.persistent, 0, 0,
                     decision.outcome});
}

void GpuState::enqueue(const JobDemand& job, double priority) {
  auto pos = std::upper_bound(
      pending_.begin(), pending_.end(), priority,
      [](double p, const PendingRequest& r) { return p < r.priority; });
  pending_.insert(pos, PendingRequest{job, priority, next_seq_++});
  queue_stale_ = true;
}

LaneDecision GpuState::job_arrive(const JobDemand& job, double priority) {
  if (job.persistent <= 0) throw DomainError("job " + std::to_string(job.id) + ": P must be > 0");
  if (job.ephemeral < 0) throw DomainError("job " + std::to_string(job.id) + ": E must be >= 0");
  if (job.persistent > capacity_ - job.ephemeral) {
    throw UnschedulableError(job.id, "job " + std::to_string(job.id) +
                                         " needs more memory than the GPU has (P + E > C)");
  }
  if (is_admitted(job.id) || is_pending(job.id)) {
    throw StateError("job " + std::to_string(job.id) + " already known");
  }
  enqueue(job, priority);
  for (const auto& [id, decision] : process_requests()) {
    if (id == job.id) return decision;
  }
  events_.push_back({LaneEventKind::job_queued, job.id, std::nullopt, job.persistent, 0, 0,
                     std::nullopt});
  return LaneDecision::queued();
}

std::vector<std::pair<JobId, LaneDecision>> GpuState::process_requests() {
  std::vector<std::pair<JobId, LaneDecision>> assigned;
  if (!queue_stale_) return assigned;
  queue_stale_ = false;
  layout_blocked_ = false;
  for (std::size_t i = 0; i < pending_.size();) {
    const JobDemand job = pending_[i].job;
    const LaneDecision decision = find_lane(job.persistent, job.ephemeral);
    std::optional<Placement> placement;
    if (decision.assigned()) placement = plan(decision, job);
    if (!placement) {
      layout_blocked_ = layout_blocked_ || decision.assigned();
      ++i;
      continue;
    }
    pending_.erase(pending_.begin() + std::ptrdiff_t(i));
    commit(decision, job, *placement);
    assigned.emplace_back(job.id, decision);
  }
  return assigned;
}

LaneDecision GpuState::try_assign(const JobDemand& job) {
  if (job.persistent <= 0 || job.ephemeral < 0) {
    throw DomainError("job " + std::to_string(job.id) + ": bad memory demand");
  }
  if (job.persistent > capacity_ - job.ephemeral) {
    throw UnschedulableError(job.id, "job " + std::to_string(job.id) +
                                         " needs more memory than the GPU has (P + E > C)");
  }
  if (is_admitted(job.id) || is_pending(job.id)) {
    throw StateError("job " + std::to_string(job.id) + " already known");
  }
  const LaneDecision decision = find_lane(job.persistent, job.ephemeral);
  if (!decision.assigned()) return decision;
  auto placement = plan(decision, job);
  if (!placement) return LaneDecision::queued();
  commit(decision, job, *placement);
  return decision;
}

void GpuState::release(JobId id, bool* lane_deleted) {
  auto it = jobs_.find(id);
  if (it == jobs_.end()) throw StateError("job " + std::to_string(id) + " is not admitted");
  const Resident resident = it->second;
  jobs_.erase(it);
  persistent_total_ -= resident.demand.persistent;
  queue_stale_ = true;
  events_.push_back({LaneEventKind::job_released, id, resident.lane, resident.demand.persistent,
                     0, 0, std::nullopt});

  Lane& lane = lanes_.at(resident.lane);
  std::erase(lane.resident_jobs, id);
  *lane_deleted = lane.resident_jobs.empty();
  if (*lane_deleted) {
    events_.push_back({LaneEventKind::lane_deleted, std::nullopt, lane.lane_id, lane.size_bytes,
                       lane.base_offset, 0, std::nullopt});
    lanes_.erase(resident.lane);
    return;
  }
  Bytes need = 0;
  for (JobId other : lane.resident_jobs) need = std::max(need, jobs_.at(other).demand.ephemeral);
  if (need < lane.size_bytes) {
    // Keep the top edge so the freed bytes join the gap below.
    events_.push_back({LaneEventKind::lane_resized, std::nullopt, lane.lane_id, need,
                       lane.size_bytes, need, std::nullopt});
    lane.base_offset += lane.size_bytes - need;
    lane.size_bytes = need;
  }
}

void GpuState::job_finish(JobId id) {
  bool deleted = false;
  release(id, &deleted);
  if (deleted) process_requests();
}

void GpuState::evict(JobId id, double priority) {
  if (!is_admitted(id)) throw StateError("job " + std::to_string(id) + " is not admitted");
  const JobDemand job = jobs_.at(id).demand;
  const LaneId from = jobs_.at(id).lane;
  bool deleted = false;
  release(id, &deleted);
  events_.push_back(
      {LaneEventKind::job_evicted, id, from, job.persistent, 0, 0, std::nullopt});
  enqueue(job, priority);
}

void GpuState::withdraw(JobId id) {
  auto it = std::find_if(pending_.begin(), pending_.end(),
                         [id](const PendingRequest& r) { return r.job.id == id; });
  if (it == pending_.end()) throw StateError("job " + std::to_string(id) + " is not pending");
  pending_.erase(it);
}

std::vector<LaneId> GpuState::compact(bool skip_active) {
  std::vector<Lane*> desc;
  for (auto& [id, lane] : lanes_) {
    if (lane.size_bytes > 0) desc.push_back(&lane);
  }
  std::sort(desc.begin(), desc.end(), [](const Lane* a, const Lane* b) {
    return a->base_offset != b->base_offset ? a->base_offset > b->base_offset
                                            : a->lane_id < b->lane_id;
  });
  std::vector<std::pair<Lane*, Bytes>> moves;
  Bytes cursor = capacity_;
  for (Lane* lane : desc) {
    if (lane->active && skip_active) {
      cursor = lane->base_offset;
      continue;
    }
    const Bytes target = cursor - lane->size_bytes;
    if (target != lane->base_offset) {
      if (lane->active) {
        throw ContractViolation("defragment: lane " + std::to_string(lane->lane_id) +
                                " is mid-iteration and cannot move");
      }
      moves.emplace_back(lane, target);
    }
    cursor = target;
  }
  std::vector<LaneId> moved;
  for (auto& [lane, target] : moves) {
    events_.push_back({LaneEventKind::lane_moved, std::nullopt, lane->lane_id, lane->size_bytes,
                       lane->base_offset, target, std::nullopt});
    lane->base_offset = target;
    moved.push_back(lane->lane_id);
    queue_stale_ = true;
  }
  // A moved lane may open room for a queued request.
  if (!moved.empty()) process_requests();
  return moved;
}

std::vector<LaneId> GpuState::defragment() { return compact(false); }

std::vector<LaneId> GpuState::compact_idle() { return compact(true); }

void GpuState::set_active(LaneId id, bool active) {
  auto it = lanes_.find(id);
  if (it == lanes_.end()) throw StateError("unknown lane " + std::to_string(id));
  it->second.active = active;
  if (!active && layout_blocked_) queue_stale_ = true;
}

bool GpuState::check_safety() const {
  Bytes persistent = 0;
  for (const auto& [id, resident] : jobs_) {
    persistent += resident.demand.persistent;
    auto lane = lanes_.find(resident.lane);
    if (lane == lanes_.end()) return false;
    const auto& rj = lane->second.resident_jobs;
    if (std::find(rj.begin(), rj.end(), id) == rj.end()) return false;
  }
  if (persistent != persistent_total_) return false;
  std::size_t residents = 0;
  for (const auto& [id, lane] : lanes_) {
    if (lane.resident_jobs.empty()) return false;
    Bytes need = 0;
    for (JobId job : lane.resident_jobs) {
      auto it = jobs_.find(job);
      if (it == jobs_.end() || it->second.lane != id) return false;
      need = std::max(need, it->second.demand.ephemeral);
    }
    if (need != lane.size_bytes) return false;
    residents += lane.resident_jobs.size();
  }
  if (residents != jobs_.size()) return false;
  return persistent_total_ + reserved_total() <= capacity_;
}

bool GpuState::check_layout() const {
  std::vector<const Lane*> sorted;
  for (const auto& [id, lane] : lanes_) {
    if (lane.size_bytes > 0) sorted.push_back(&lane);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const Lane* a, const Lane* b) { return a->base_offset < b->base_offset; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i]->base_offset < persistent_total_ || sorted[i]->top() > capacity_) return false;
    if (i > 0 && sorted[i - 1]->top() > sorted[i]->base_offset) return false;
  }
  return true;
}

std::vector<LaneEvent> GpuState::drain_events() {
  std::vector<LaneEvent> out;
  out.swap(events_);
  return out;
}

}  // namespace gpulane::lane

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


#include "oracles.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

namespace oracle {

Choice find_lane(std::int64_t capacity, std::int64_t persistent,
                 const std::vector<LaneSize>& lanes, std::int64_t p, std::int64_t e,
                 std::int64_t next_lane_id) {
  std::int64_t reserved = 0;
  for (const auto& lane : lanes) reserved += lane.size;
  const std::int64_t base = persistent + p + reserved;

  if (base + e <= capacity) return {"new_lane", next_lane_id};

  std::optional<LaneSize> share;
  for (const auto& lane : lanes) {
    const bool ok = base <= capacity && lane.size >= e;
    if (!ok) continue;
    if (!share || std::tie(lane.size, lane.id) < std::tie(share->size, share->id)) share = lane;
  }
  if (share) return {"existing_lane", share->id};

  std::optional<LaneSize> grow;
  for (const auto& lane : lanes) {
    const bool ok = lane.size < e && base - lane.size + e <= capacity;
    if (!ok) continue;
    if (!grow || std::tie(lane.size, lane.id) < std::tie(grow->size, grow->id)) grow = lane;
  }
  if (grow) return {"replaced_lane", grow->id};
  return {"queued", std::nullopt};
}

std::vector<std::int64_t> fifo_completions(const std::vector<QueueJob>& jobs) {
  std::vector<std::size_t> order(jobs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(jobs[a].arrival, jobs[a].id) < std::tie(jobs[b].arrival, jobs[b].id);
  });
  std::vector<std::int64_t> done(jobs.size());
  std::int64_t free_at = std::numeric_limits<std::int64_t>::min();
  for (std::size_t i : order) {
    const std::int64_t start = std::max(free_at, jobs[i].arrival);
    done[i] = start + jobs[i].work;
    free_at = done[i];
  }
  return done;
}

std::vector<std::int64_t> srtf_completions(const std::vector<QueueJob>& jobs) {
  std::vector<std::int64_t> left(jobs.size());
  std::vector<std::int64_t> done(jobs.size(), -1);
  for (std::size_t i = 0; i < jobs.size(); ++i) left[i] = jobs[i].work;
  std::size_t finished = 0;
  for (std::int64_t t = 0; finished < jobs.size(); ++t) {
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (jobs[i].arrival > t || left[i] == 0) continue;
      if (!pick || std::tie(left[i], jobs[i].arrival, jobs[i].id) <
                       std::tie(left[*pick], jobs[*pick].arrival, jobs[*pick].id)) {
        pick = i;
      }
    }
    if (!pick) continue;
    if (--left[*pick] == 0) {
      done[*pick] = t + 1;
      ++finished;
    }
  }
  return done;
}

}  // namespace oracle

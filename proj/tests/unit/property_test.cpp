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


#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "gpulane/lane/gpu_state.hpp"
#include "oracles/oracles.hpp"

namespace gpulane::lane {
namespace {

constexpr Bytes G = kGiB;

// Every admitted job sits in exactly one lane and the lanes fit in memory.
void expect_consistent(const GpuState& gpu, const std::set<JobId>& admitted) {
  ASSERT_TRUE(gpu.check_safety());
  ASSERT_TRUE(gpu.check_layout());
  std::size_t residents = 0;
  Bytes persistent = 0;
  for (const auto& [id, lane] : gpu.lanes()) {
    residents += lane.resident_jobs.size();
    ASSERT_FALSE(lane.resident_jobs.empty()) << "empty lane " << id;
    for (JobId job : lane.resident_jobs) {
      ASSERT_EQ(gpu.lane_of(job), id);
      ASSERT_LE(gpu.demand(job).ephemeral, lane.size_bytes);
    }
  }
  for (JobId job : admitted) persistent += gpu.demand(job).persistent;
  ASSERT_EQ(residents, admitted.size());
  ASSERT_EQ(gpu.persistent_total(), persistent);
  ASSERT_LE(gpu.persistent_total() + gpu.reserved_total(), gpu.capacity());
  for (const auto& r : gpu.pending()) ASSERT_FALSE(gpu.is_admitted(r.job.id));
}

std::set<JobId> admitted_jobs(const GpuState& gpu) {
  std::set<JobId> out;
  for (const auto& [id, lane] : gpu.lanes()) out.insert(lane.resident_jobs.begin(), lane.resident_jobs.end());
  return out;
}

bool idle(const GpuState& gpu, JobId job) { return !gpu.lane(*gpu.lane_of(job)).active; }

class RandomOps : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RandomOps, SafetyAndLayoutHoldAfterEveryOperation) {
  std::mt19937_64 rng(GetParam());
  GpuState gpu(16 * G);
  JobId next = 0;
  auto pick = [&](const auto& items) {
    auto it = items.begin();
    std::advance(it, rng() % items.size());
    return *it;
  };
  for (int step = 0; step < 400; ++step) {
    const int op = int(rng() % 8);
    std::set<JobId> admitted = admitted_jobs(gpu);
    std::vector<JobId> idle_jobs;
    for (JobId j : admitted) {
      if (idle(gpu, j)) idle_jobs.push_back(j);
    }
    if (op <= 2) {
      const Bytes p = Bytes(1 + rng() % 12) * G / 4;
      const Bytes e = Bytes(rng() % 25) * G / 4;
      if (p + e <= gpu.capacity()) gpu.job_arrive({next++, p, e}, double(rng() % 5));
    } else if (op == 3 && !idle_jobs.empty()) {
      gpu.job_finish(pick(idle_jobs));
    } else if (op == 4 && !idle_jobs.empty()) {
      gpu.evict(pick(idle_jobs), double(rng() % 5));
    } else if (op == 5 && !gpu.lanes().empty()) {
      const auto& [id, lane] = *std::next(gpu.lanes().begin(), long(rng() % gpu.lanes().size()));
      gpu.set_active(id, !lane.active);
    } else if (op == 6) {
      gpu.compact_idle();
    } else {
      gpu.process_requests();
    }
    expect_consistent(gpu, admitted_jobs(gpu));
    if (HasFatalFailure()) {
      std::string dump;
      for (const auto& [id, lane] : gpu.lanes()) {
        dump += " [" + std::to_string(id) + ": " + std::to_string(lane.base_offset / (G / 4)) + "+" +
                std::to_string(lane.size_bytes / (G / 4)) + (lane.active ? " active" : "") + "]";
      }
      ADD_FAILURE() << "seed " << GetParam() << " step " << step << " op " << op << " persistent "
                    << gpu.persistent_total() / (G / 4) << " lanes" << dump;
      return;
    }
  }
}

TEST_P(RandomOps, DefragmentPacksAtTheTopAndIsIdempotent) {
  std::mt19937_64 rng(GetParam() * 31 + 7);
  GpuState gpu(16 * G);
  for (JobId id = 0; id < 30; ++id) {
    gpu.job_arrive({id, Bytes(1 + rng() % 4) * G / 8, Bytes(rng() % 16) * G / 4});
    if (rng() % 3 == 0) {
      const auto admitted = admitted_jobs(gpu);
      if (!admitted.empty()) gpu.job_finish(*std::next(admitted.begin(), long(rng() % admitted.size())));
    }
  }
  gpu.defragment();
  std::vector<Lane> lanes;
  for (const auto& [id, lane] : gpu.lanes()) lanes.push_back(lane);
  std::sort(lanes.begin(), lanes.end(),
            [](const Lane& a, const Lane& b) { return a.base_offset > b.base_offset; });
  Bytes cursor = gpu.capacity();
  for (const Lane& lane : lanes) {
    if (lane.size_bytes == 0) continue;
    EXPECT_EQ(lane.top(), cursor) << "gap above lane " << lane.lane_id;
    cursor = lane.base_offset;
  }
  const auto before = gpu.lanes();
  EXPECT_TRUE(gpu.defragment().empty());
  EXPECT_EQ(gpu.lanes(), before);
  EXPECT_TRUE(gpu.check_safety());
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomOps, ::testing::Range<std::uint64_t>(1, 21));

TEST(FindLaneProperty, AgreesWithTheExhaustiveSearchOnRandomStates) {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 3000; ++trial) {
    const Bytes capacity = Bytes(12 + rng() % 9);
    std::vector<std::vector<JobDemand>> layout;
    Bytes used = 0;
    JobId id = 0;
    const int lanes = int(rng() % 4);
    std::vector<oracle::LaneSize> sizes;
    Bytes persistent = 0;
    for (int l = 0; l < lanes; ++l) {
      const Bytes size = Bytes(1 + rng() % 5);
      const Bytes p = Bytes(1 + rng() % 2);
      if (used + size + p > capacity) break;
      used += size + p;
      persistent += p;
      layout.push_back({{id++, p * G, size * G}});
      sizes.push_back({l, size});
    }
    const GpuState gpu = GpuState::with_lanes(capacity * G, layout);
    const Bytes p = Bytes(1 + rng() % 3);
    const Bytes e = Bytes(rng() % 9);
    const LaneDecision got = gpu.find_lane(p * G, e * G);
    const oracle::Choice want =
        oracle::find_lane(capacity, persistent, sizes, p, e, std::int64_t(sizes.size()));
    ASSERT_EQ(std::string(to_string(got.outcome)), want.outcome) << "trial " << trial;
    if (got.outcome != Outcome::new_lane) {
      ASSERT_EQ(got.lane_id, want.lane) << "trial " << trial;
    }
  }
}

}  // namespace
}  // namespace gpulane::lane

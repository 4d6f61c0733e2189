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

#include <cmath>

#include "gpulane/errors.hpp"
#include "gpulane/sched/policy.hpp"
#include "gpulane/sched/scheduler.hpp"

namespace gpulane::sched {
namespace {

workload::JobSpec spec(JobId id, Seconds arrival, std::int64_t iterations, Seconds per_iteration) {
  workload::JobSpec job;
  job.id = id;
  job.name = "job";
  job.arrival_time = arrival;
  job.persistent_bytes = kGiB;
  job.ephemeral_bytes = 7 * kGiB;
  job.iteration_duration = per_iteration;
  job.iteration_count = iterations;
  return job;
}

lane::Lane lane_with(std::vector<JobId> residents) {
  lane::Lane lane;
  lane.lane_id = 0;
  lane.resident_jobs = std::move(residents);
  return lane;
}

TEST(Policy, ParsesNamesCaseInsensitively) {
  EXPECT_EQ(parse_policy("fifo"), PolicyKind::fifo);
  EXPECT_EQ(parse_policy("SRTF"), PolicyKind::srtf);
  EXPECT_EQ(parse_policy("Pack"), PolicyKind::pack);
  EXPECT_EQ(parse_policy("fair"), PolicyKind::fair);
  try {
    parse_policy("bogus");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    for (const char* name : {"fifo", "srtf", "pack", "fair"}) {
      EXPECT_NE(what.find(name), std::string::npos) << name;
    }
  }
}

TEST(RemainingTime, FreshJob) {
  EXPECT_DOUBLE_EQ(remaining_time(spec(1, 0, 100, 0.5), JobProgress{1}), 50.0);
}

TEST(RemainingTime, PartlyDone) {
  JobProgress p{1};
  p.iterations_done = 60;
  EXPECT_DOUBLE_EQ(remaining_time(spec(1, 0, 100, 0.5), p), 20.0);
}

TEST(RemainingTime, FinishedJobIsADomainError) {
  JobProgress p{1};
  p.iterations_done = 100;
  EXPECT_THROW(remaining_time(spec(1, 0, 100, 0.5), p), DomainError);
}

TEST(UpdateService, AddsElapsedAndOneIteration) {
  const JobProgress p = update_service(JobProgress{1}, 0.5);
  EXPECT_DOUBLE_EQ(p.service_time, 0.5);
  EXPECT_EQ(p.iterations_done, 1);
  EXPECT_THROW(update_service(JobProgress{1}, -0.1), DomainError);
}

TEST(UpdateService, AlternatingEqualIterationsStayEqual) {
  JobProgress a{1};
  JobProgress b{2};
  for (int round = 0; round < 10; ++round) {
    a = update_service(a, 0.25);
    b = update_service(b, 0.25);
    EXPECT_EQ(a.service_time, b.service_time);
  }
}

TEST(UpdateService, LeastServiceAlternationBoundsTheGap) {
  // Two jobs with 0.2 s and 0.6 s iterations; the one with less service runs.
  JobProgress a{1};
  JobProgress b{2};
  for (int step = 0; step < 10000; ++step) {
    if (a.service_time <= b.service_time) {
      a = update_service(a, 0.2);
    } else {
      b = update_service(b, 0.6);
    }
    ASSERT_LE(std::abs(a.service_time - b.service_time), 0.6 + 1e-9);
  }
}

class SelectNext : public ::testing::Test {
 protected:
  void add(JobId id, Seconds arrival, std::int64_t iterations, JobState state = JobState::waiting) {
    jobs[id] = spec(id, arrival, iterations, 1.0);
    progress[id] = JobProgress{id};
    progress[id].state = state;
  }
  JobTable jobs;
  ProgressTable progress;
};

TEST_F(SelectNext, OneRunnableJob) {
  add(1, 0, 10);
  for (auto policy : {PolicyKind::fifo, PolicyKind::srtf, PolicyKind::pack, PolicyKind::fair}) {
    EXPECT_EQ(select_next(policy, lane_with({1}), jobs, progress), JobId(1));
  }
}

TEST_F(SelectNext, IdleWhenNothingIsWaiting) {
  add(1, 0, 10, JobState::running);
  EXPECT_EQ(select_next(PolicyKind::pack, lane_with({1}), jobs, progress), std::nullopt);
  EXPECT_EQ(select_next(PolicyKind::pack, lane_with({}), jobs, progress), std::nullopt);
}

TEST_F(SelectNext, SrtfPicksLeastRemaining) {
  add(1, 0, 100);  // A: 100 s left
  add(2, 5, 30);   // B: 30 s left
  EXPECT_EQ(select_next(PolicyKind::srtf, lane_with({1, 2}), jobs, progress), JobId(2));
  EXPECT_EQ(select_next(PolicyKind::pack, lane_with({1, 2}), jobs, progress), JobId(1));
  EXPECT_EQ(select_next(PolicyKind::fifo, lane_with({1, 2}), jobs, progress), JobId(1));
}

TEST_F(SelectNext, FairPicksLeastService) {
  add(1, 0, 100);
  add(2, 0, 100);
  progress[1].fair_service = 10.0;
  progress[2].fair_service = 4.0;
  EXPECT_EQ(select_next(PolicyKind::fair, lane_with({1, 2}), jobs, progress), JobId(2));
}

TEST_F(SelectNext, TiesBreakByArrivalThenId) {
  add(4, 2.0, 10);
  add(3, 1.0, 10);
  add(2, 1.0, 10);
  EXPECT_EQ(select_next(PolicyKind::srtf, lane_with({4, 3, 2}), jobs, progress), JobId(2));
  EXPECT_EQ(select_next(PolicyKind::fair, lane_with({4, 3, 2}), jobs, progress), JobId(2));
}

TEST(Scheduler, FifoHandsTheGpuToOneJobAtATime) {
  Scheduler fifo(PolicyKind::fifo);
  lane::GpuState gpu(16 * kGiB);
  ProgressTable progress{{1, JobProgress{1}}, {2, JobProgress{2}}};
  auto small = spec(1, 0, 10, 1.0);
  small.ephemeral_bytes = kGiB;
  auto other = spec(2, 0, 10, 1.0);
  other.ephemeral_bytes = kGiB;
  EXPECT_TRUE(fifo.admit(gpu, small, progress).assigned());
  EXPECT_FALSE(fifo.admit(gpu, other, progress).assigned());
  EXPECT_EQ(fifo.fifo_waiting(), 1u);
  JobTable jobs{{1, small}, {2, other}};
  fifo.rebalance(gpu, jobs, progress);
  EXPECT_FALSE(gpu.is_admitted(2));
  gpu.job_finish(1);
  fifo.rebalance(gpu, jobs, progress);
  EXPECT_TRUE(gpu.is_admitted(2));
  EXPECT_EQ(fifo.fifo_waiting(), 0u);
}

TEST(Scheduler, FifoRejectsOversizedJobs) {
  Scheduler fifo(PolicyKind::fifo);
  lane::GpuState gpu(7 * kGiB);
  ProgressTable progress{{1, JobProgress{1}}};
  EXPECT_THROW(fifo.admit(gpu, spec(1, 0, 1, 1.0), progress), UnschedulableError);
}

TEST(Scheduler, PackAdmitsEverythingThatFits) {
  Scheduler pack(PolicyKind::pack);
  lane::GpuState gpu(16 * kGiB);
  ProgressTable progress;
  for (JobId id = 1; id <= 3; ++id) {
    auto job = spec(id, 0, 10, 1.0);
    job.ephemeral_bytes = 4 * kGiB;
    progress[id] = JobProgress{id};
    EXPECT_EQ(pack.admit(gpu, job, progress).outcome, lane::Outcome::new_lane);
  }
  EXPECT_EQ(gpu.lanes().size(), 3u);
}

TEST(Scheduler, SrtfDisplacesLongerWaitingJobs) {
  // Two long jobs fill a 12 GiB GPU with separate 5 GiB lanes; a short job
  // needing 7 GiB displaces the one with more work left. The grown lane then
  // has room for the evicted job as a resident.
  Scheduler srtf(PolicyKind::srtf);
  lane::GpuState gpu(12 * kGiB);
  JobTable jobs;
  ProgressTable progress;
  auto add = [&](JobId id, std::int64_t iterations, Bytes e) {
    auto job = spec(id, 0, iterations, 1.0);
    job.ephemeral_bytes = e;
    jobs[id] = job;
    progress[id] = JobProgress{id};
    const auto d = srtf.admit(gpu, job, progress);
    if (d.assigned()) progress[id].state = JobState::waiting;
    return d;
  };
  EXPECT_TRUE(add(1, 500, 5 * kGiB).assigned());
  EXPECT_TRUE(add(2, 800, 5 * kGiB).assigned());
  EXPECT_FALSE(add(3, 20, 7 * kGiB).assigned());
  const auto evicted = srtf.rebalance(gpu, jobs, progress);
  EXPECT_EQ(evicted, std::vector<JobId>{2});
  EXPECT_TRUE(gpu.is_admitted(3));
  EXPECT_TRUE(gpu.is_admitted(2));
  ASSERT_EQ(gpu.lanes().size(), 1u);
  EXPECT_EQ(gpu.lanes().begin()->second.size_bytes, 7 * kGiB);
  EXPECT_TRUE(gpu.check_safety());
}

TEST(Scheduler, SrtfNeverDisplacesShorterOrRunningJobs) {
  Scheduler srtf(PolicyKind::srtf);
  lane::GpuState gpu(12 * kGiB);
  JobTable jobs;
  ProgressTable progress;
  auto add = [&](JobId id, std::int64_t iterations, Bytes e, JobState state) {
    auto job = spec(id, 0, iterations, 1.0);
    job.ephemeral_bytes = e;
    jobs[id] = job;
    progress[id] = JobProgress{id};
    srtf.admit(gpu, job, progress);
    if (gpu.is_admitted(id)) progress[id].state = state;
  };
  add(1, 10, 5 * kGiB, JobState::waiting);
  add(2, 800, 5 * kGiB, JobState::running);
  add(3, 20, 7 * kGiB, JobState::queued);
  EXPECT_TRUE(srtf.rebalance(gpu, jobs, progress).empty());
  EXPECT_TRUE(gpu.is_pending(3));
}

}  // namespace
}  // namespace gpulane::sched

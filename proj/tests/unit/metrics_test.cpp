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

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "gpulane/engine/engine.hpp"
#include "gpulane/errors.hpp"
#include "gpulane/metrics/consolidation.hpp"
#include "gpulane/metrics/csv.hpp"
#include "gpulane/metrics/report.hpp"

namespace gpulane::metrics {
namespace {

using engine::LogEvent;
using engine::RunLog;
using Json = nlohmann::ordered_json;

LogEvent ev(Seconds t, std::string kind, std::optional<JobId> job = std::nullopt,
            std::optional<LaneId> lane = std::nullopt, Json detail = Json::object()) {
  return LogEvent{t, std::move(kind), job, lane, std::move(detail)};
}

// One job with batch 50: arrives at 0, two iterations of 0.5 s from t = 2.
RunLog one_job_log() {
  RunLog log;
  log.append(ev(0, "RunStart", {}, {}, {{"capacity_bytes", 16 * kGiB}, {"policy", "PACK"}}));
  log.append(ev(0, "JobArrive", 7, {}, {{"name", "resnet50_50"}, {"batch", 50}}));
  log.append(ev(0, "JobAssigned", 7, 0, {{"persistent_bytes", kGiB}}));
  log.append(ev(0, "LaneCreated", {}, 0, {{"size_bytes", 2 * kGiB}}));
  log.append(ev(2, "IterationStart", 7, 0, {{"ephemeral_bytes", 2 * kGiB}}));
  log.append(ev(2.5, "IterationEnd", 7, 0, {{"ephemeral_bytes", 2 * kGiB}, {"elapsed", 0.5}}));
  log.append(ev(2.5, "IterationStart", 7, 0, {{"ephemeral_bytes", 2 * kGiB}}));
  log.append(ev(3, "IterationEnd", 7, 0, {{"ephemeral_bytes", 2 * kGiB}, {"elapsed", 0.5}}));
  log.append(ev(3, "JobReleased", 7, 0, {{"persistent_bytes", kGiB}}));
  log.append(ev(3, "LaneDeleted", {}, 0, {{"size_bytes", 2 * kGiB}}));
  log.append(ev(3, "JobFinish", 7, 0));
  return log;
}

TEST(Report, OneJob) {
  const SimReport r = compute_report(one_job_log());
  EXPECT_EQ(r.policy, "PACK");
  EXPECT_EQ(r.capacity, 16 * kGiB);
  ASSERT_EQ(r.per_job.size(), 1u);
  const JobStats& s = r.per_job.at(7);
  EXPECT_EQ(s.batch, 50);
  EXPECT_EQ(s.first_start, 2.0);
  EXPECT_EQ(s.jct, 3.0);
  EXPECT_EQ(s.queuing, 2.0);
  EXPECT_EQ(r.makespan, 3.0);
  EXPECT_EQ(r.avg_jct, 3.0);
  EXPECT_EQ(r.p95_jct, 3.0);
}

TEST(Report, ThroughputIsBatchOverIterationTime) {
  const auto series = throughput_series(one_job_log(), 7);
  EXPECT_EQ(series, (std::vector<ThroughputSample>{{2.5, 7, 100.0}, {3.0, 7, 100.0}}));
  EXPECT_EQ(compute_report(one_job_log()).throughput_timeline, series);
}

TEST(Report, MemoryTimelineHasOneSamplePerTime) {
  const auto timeline = compute_report(one_job_log()).memory_timeline;
  const std::vector<MemorySample> expected{
      {0, kGiB, 0, 2 * kGiB}, {2, kGiB, 2 * kGiB, 2 * kGiB}, {2.5, kGiB, 2 * kGiB, 2 * kGiB}, {3, 0, 0, 0}};
  EXPECT_EQ(timeline, expected);
}

TEST(Report, ServiceAndBusyTime) {
  EXPECT_EQ(lane_busy_time(one_job_log()), 1.0);
  EXPECT_EQ(service_by_job(one_job_log()), (std::map<JobId, Seconds>{{7, 1.0}}));
}

TEST(Report, UnfinishedJobsAreReported) {
  const RunLog full = one_job_log();
  RunLog log;
  for (const auto& e : full.events()) {
    if (e.kind != "JobFinish") log.append(e);
  }
  try {
    compute_report(log);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find('7'), std::string::npos);
  }
}

TEST(Percentile, NearestRank) {
  std::vector<double> v(100);
  std::iota(v.begin(), v.end(), 1.0);
  EXPECT_EQ(percentile_nearest_rank(v, 95), 95.0);
  EXPECT_EQ(percentile_nearest_rank(v, 100), 100.0);
  EXPECT_EQ(percentile_nearest_rank(v, 1), 1.0);
  EXPECT_EQ(percentile_nearest_rank({5.0, 1.0, 3.0}, 50), 3.0);
  EXPECT_EQ(percentile_nearest_rank({4.0}, 95), 4.0);
  EXPECT_THROW(percentile_nearest_rank({}, 95), DomainError);
  EXPECT_THROW(percentile_nearest_rank({1.0}, 0), DomainError);
  EXPECT_THROW(percentile_nearest_rank({1.0}, 101), DomainError);
}

SimReport with_jcts(const std::vector<Seconds>& jcts) {
  SimReport r;
  JobId id = 0;
  for (Seconds jct : jcts) {
    JobStats s;
    s.id = id;
    s.jct = jct;
    s.completion = jct;
    r.per_job[id++] = s;
  }
  return r;
}

TEST(Cdf, StepsAtDistinctValues) {
  const auto cdf = jct_cdf(with_jcts({2, 4, 2}));
  ASSERT_EQ(cdf.size(), 2u);
  EXPECT_EQ(cdf[0].first, 2.0);
  EXPECT_DOUBLE_EQ(cdf[0].second, 2.0 / 3.0);
  EXPECT_EQ(cdf[1], (std::pair<Seconds, double>{4.0, 1.0}));
  EXPECT_THROW(jct_cdf(SimReport{}), DomainError);
  EXPECT_EQ(jct_cdf_csv(with_jcts({2, 4, 2})), "jct_s,fraction\n2,0.6666666666666666\n4,1\n");
}

TEST(Csv, SummaryRow) {
  SimReport r;
  r.policy = "FIFO";
  r.makespan = 18204;
  r.avg_queuing = 10056;
  r.avg_jct = 10236;
  r.p95_jct = 15066;
  EXPECT_EQ(summary_csv(r),
            "policy,makespan_s,avg_queuing_s,avg_jct_s,p95_jct_s\nFIFO,18204,10056,10236,15066\n");
}

TEST(Csv, TimelinesFromTheLog) {
  const SimReport r = compute_report(one_job_log());
  EXPECT_EQ(throughput_csv(r), "t_s,job,items_per_s\n2.5,7,100\n3,7,100\n");
  const std::string memory = memory_timeline_csv(r);
  EXPECT_EQ(memory.substr(0, memory.find('\n')),
            "t_s,persistent_bytes,ephemeral_in_use_bytes,lane_reserved_bytes");
  EXPECT_NE(memory.find("\n2,1073741824,2147483648,2147483648\n"), std::string::npos);
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("gpulane_metrics_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Files, AtomicWriteLeavesNoTemporary) {
  TempDir dir;
  std::filesystem::create_directories(dir.path());
  write_file_atomic(dir.path() / "a.csv", "x\n");
  write_file_atomic(dir.path() / "a.csv", "y\n");
  EXPECT_EQ(slurp(dir.path() / "a.csv"), "y\n");
  EXPECT_FALSE(std::filesystem::exists(dir.path() / "a.csv.tmp"));
}

TEST(Files, OutputsRoundTripThroughTheLog) {
  TempDir dir;
  const RunLog log = one_job_log();
  write_outputs(dir.path(), log, compute_report(log));
  for (const char* name :
       {"run_log.jsonl", "summary.csv", "jct_cdf.csv", "memory_timeline.csv", "throughput.csv"}) {
    EXPECT_TRUE(std::filesystem::exists(dir.path() / name)) << name;
  }
  const RunLog back = RunLog::read_file((dir.path() / "run_log.jsonl").string());
  EXPECT_EQ(back.events(), log.events());
  EXPECT_EQ(summary_csv(compute_report(back)), slurp(dir.path() / "summary.csv"));
}

TEST(Report, MemoryNeverExceedsCapacityInSimulation) {
  std::vector<workload::JobSpec> trace;
  for (JobId id = 0; id < 20; ++id) {
    workload::JobSpec job;
    job.id = id;
    job.name = "vgg16_50";
    job.arrival_time = double(id);
    job.persistent_bytes = kGiB / 2 + id * kMiB * 10;
    job.ephemeral_bytes = (1 + id % 6) * kGiB;
    job.iteration_duration = 0.3;
    job.iteration_count = 10 + id;
    job.compute_fraction = 0.5;
    trace.push_back(job);
  }
  for (auto policy : {sched::PolicyKind::pack, sched::PolicyKind::fair, sched::PolicyKind::srtf}) {
    const SimReport r = compute_report(engine::run(trace, policy, engine::EngineConfig{}).log);
    for (const auto& m : r.memory_timeline) {
      EXPECT_LE(m.persistent_bytes + m.lane_reserved_bytes, r.capacity);
      EXPECT_LE(m.ephemeral_in_use_bytes, m.lane_reserved_bytes);
    }
  }
}

workload::JobSpec packed(JobId id, Bytes p, Bytes e) {
  workload::JobSpec job;
  job.id = id;
  job.name = "job";
  job.persistent_bytes = p;
  job.ephemeral_bytes = e;
  job.iteration_duration = 1;
  job.iteration_count = 1;
  return job;
}

TEST(Consolidation, Trivial) {
  EXPECT_EQ(consolidation({}, 16 * kGB).factor, 0.0);
  const auto one = consolidation({packed(1, kGiB, kGiB)}, 16 * kGB);
  EXPECT_EQ(one.gpus_with_sharing, 1);
  EXPECT_EQ(one.factor, 1.0);
}

TEST(Consolidation, JobsThatCannotShareNeedOneGpuEach) {
  const auto r = consolidation({packed(1, 9 * kGiB, 5 * kGiB), packed(2, 9 * kGiB, 5 * kGiB)}, 16 * kGiB);
  EXPECT_EQ(r.gpus_with_sharing, 2);
  EXPECT_EQ(r.factor, 1.0);
}

TEST(Consolidation, InferenceSetFitsOnOneGpu) {
  const auto jobs = inference_job_set();
  EXPECT_EQ(jobs.size(), 42u);
  const auto r = consolidation(jobs, 16 * kGB);
  EXPECT_EQ(r.jobs_packed, 42);
  EXPECT_EQ(r.gpus_without_sharing, 42);
  EXPECT_EQ(r.gpus_with_sharing, 1);
  EXPECT_EQ(r.factor, 42.0);
}

}  // namespace
}  // namespace gpulane::metrics

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
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "gpulane/workload/catalog.hpp"
#include "gpulane/workload/job.hpp"

namespace gpulane::workload {

// Parameters of the synthetic trace generator. Arrivals are a Poisson
// process; total solo run time is log-normal (heavy right tail); each job's
// workload is drawn from the catalog with the given weights.
struct SynthConfig {
  std::int64_t count = 100;
  Seconds mean_interarrival = 10.0;
  Seconds duration_median = 60.0;
  double duration_sigma = 1.5;
  Seconds duration_max = 0.0;  // 0 = uncapped
  double compute_fraction_min = 0.3;
  double compute_fraction_max = 1.0;
  // Catalog tags ("resnet50_25") to draw from; empty = every non-placeholder
  // entry. Weights align with tags; empty = uniform.
  std::vector<std::string> tags;
  std::vector<double> weights;
};

// Throws ConfigError when a parameter is outside its domain.
void validate(const SynthConfig& config);

// Parses "count=100,mean_interarrival=60,duration_median=600,...". Unknown
// keys raise ConfigError. A "seed" key, if present, is stored in *seed.
SynthConfig parse_synth_config(std::string_view text, std::uint64_t* seed);

// Deterministic for a fixed (config, seed, catalog).
std::vector<JobSpec> synth_trace(const SynthConfig& config, std::uint64_t seed,
                                 const Catalog& catalog = Catalog::builtin());

// mt19937_64 output is fixed by the standard but the <random> distributions
// are not, so variates are derived here by explicit arithmetic to keep traces
// identical across standard libraries.
class PortableRandom {
 public:
  explicit PortableRandom(std::uint64_t seed) : engine_(seed) {}
  double uniform();  // [0, 1) with 53 random bits
  double exponential(double mean);
  double normal();  // Box-Muller, no cached second variate
  // Index i with probability (cumulative[i] - cumulative[i-1]) / cumulative.back().
  std::size_t categorical(const std::vector<double>& cumulative);

 private:
  std::mt19937_64 engine_;
};

}  // namespace gpulane::workload

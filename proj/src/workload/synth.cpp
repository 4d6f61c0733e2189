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

#include "gpulane/workload/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "gpulane/errors.hpp"
#include "gpulane/units.hpp"

namespace gpulane::workload {

double PortableRandom::uniform() {
  return double(engine_() >> 11) * 0x1.0p-53;
}

double PortableRandom::exponential(double mean) {
  return -mean * std::log1p(-uniform());
}

double PortableRandom::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t PortableRandom::categorical(const std::vector<double>& cumulative) {
  const double x = uniform() * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
  if (it == cumulative.end()) --it;
  return static_cast<std::size_t>(it - cumulative.begin());
}

void validate(const SynthConfig& c) {
  auto fail = [](const std::string& what) { throw ConfigError("synth: " + what); };
  if (c.count < 0) fail("count must be >= 0");
  if (!(c.mean_interarrival > 0.0) || !std::isfinite(c.mean_interarrival)) {
    fail("mean_interarrival must be > 0");
  }
  if (!(c.duration_median > 0.0) || !std::isfinite(c.duration_median)) {
    fail("duration_median must be > 0");
  }
  if (!(c.duration_sigma >= 0.0) || !std::isfinite(c.duration_sigma)) {
    fail("duration_sigma must be >= 0");
  }
  if (c.duration_max < 0.0) fail("duration_max must be >= 0");
  if (!(c.compute_fraction_min > 0.0 && c.compute_fraction_min <= c.compute_fraction_max &&
        c.compute_fraction_max <= 1.0)) {
    fail("need 0 < compute_fraction_min <= compute_fraction_max <= 1");
  }
  if (!c.weights.empty()) {
    if (c.weights.size() != c.tags.size()) fail("weights must align with tags");
    double total = 0.0;
    for (double w : c.weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) fail("weights must be finite and >= 0");
      total += w;
    }
    if (!(total > 0.0)) fail("weights must not all be zero");
  }
}

SynthConfig parse_synth_config(std::string_view text, std::uint64_t* seed) {
  SynthConfig c;
  auto number = [](std::string_view key, std::string_view v) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
      throw ConfigError("synth: bad value for " + std::string(key) + ": '" + std::string(v) + "'");
    }
    return out;
  };
  auto seconds = [](std::string_view key, std::string_view v) {
    try {
      return parse_seconds(v);
    } catch (const ParseError&) {
      throw ConfigError("synth: bad value for " + std::string(key) + ": '" + std::string(v) + "'");
    }
  };
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("synth: expected key=value, got '" + std::string(item) + "'");
    }
    const auto key = item.substr(0, eq);
    const auto value = item.substr(eq + 1);
    if (key == "count") {
      const double v = number(key, value);
      if (v != std::floor(v)) throw ConfigError("synth: count must be an integer");
      c.count = static_cast<std::int64_t>(v);
    } else if (key == "seed") {
      const double v = number(key, value);
      if (v < 0 || v != std::floor(v)) throw ConfigError("synth: seed must be a natural number");
      if (seed != nullptr) *seed = static_cast<std::uint64_t>(v);
    } else if (key == "mean_interarrival") {
      c.mean_interarrival = seconds(key, value);
    } else if (key == "duration_median") {
      c.duration_median = seconds(key, value);
    } else if (key == "duration_sigma") {
      c.duration_sigma = number(key, value);
    } else if (key == "duration_max") {
      c.duration_max = seconds(key, value);
    } else if (key == "cf_min" || key == "compute_fraction_min") {
      c.compute_fraction_min = number(key, value);
    } else if (key == "cf_max" || key == "compute_fraction_max") {
      c.compute_fraction_max = number(key, value);
    } else if (key == "tags") {
      // Tags are separated by ';' since ',' separates keys.
      std::string_view rest = value;
      while (!rest.empty()) {
        const auto semi = rest.find(';');
        if (semi != 0) c.tags.emplace_back(rest.substr(0, semi));
        rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
      }
    } else {
      throw ConfigError("synth: unknown key '" + std::string(key) + "'");
    }
  }
  validate(c);
  return c;
}

std::vector<JobSpec> synth_trace(const SynthConfig& config, std::uint64_t seed,
                                 const Catalog& catalog) {
  validate(config);
  std::vector<const CatalogEntry*> pool;
  if (config.tags.empty()) {
    for (const auto& e : catalog.entries()) {
      if (!e.placeholder) pool.push_back(&e);
    }
  } else {
    for (const auto& tag : config.tags) {
      const auto cut = tag.rfind('_');
      if (cut == std::string::npos) throw ConfigError("synth: tag '" + tag + "' is not model_batch");
      try {
        pool.push_back(&catalog.lookup(tag.substr(0, cut), tag.substr(cut + 1)));
      } catch (const NotFoundError& ex) {
        throw ConfigError(std::string("synth: ") + ex.what());
      }
    }
  }
  if (pool.empty()) throw ConfigError("synth: no catalog entries to draw from");

  std::vector<double> cumulative;
  double total = 0.0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    total += config.weights.empty() ? 1.0 : config.weights[i];
    cumulative.push_back(total);
  }

  PortableRandom rng(seed);
  std::vector<JobSpec> jobs;
  jobs.reserve(static_cast<std::size_t>(config.count));
  Seconds now = 0.0;
  for (std::int64_t k = 0; k < config.count; ++k) {
    now += rng.exponential(config.mean_interarrival);
    const CatalogEntry& entry = *pool[rng.categorical(cumulative)];
    double duration = config.duration_median * std::exp(config.duration_sigma * rng.normal());
    if (config.duration_max > 0.0) duration = std::min(duration, config.duration_max);
    const auto iterations =
        std::max<std::int64_t>(1, std::llround(duration / entry.solo_iteration_duration));
    const double cf = config.compute_fraction_min +
                      (config.compute_fraction_max - config.compute_fraction_min) * rng.uniform();
    jobs.push_back(catalog.training_job(entry, k, now, iterations, cf));
  }
  return jobs;
}

}  // namespace gpulane::workload

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

#include "gpulane/workload/trace.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "gpulane/errors.hpp"
#include "json.hpp"

namespace gpulane::workload {
namespace {

using ordered_json = nlohmann::ordered_json;

template <typename T>
T field(const ordered_json& obj, const char* key, int line) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing key '") + key + "'", line);
  try {
    if constexpr (std::is_integral_v<T>) {
      // Accept 1e9-style numbers as long as they are integral.
      if (it->is_number_float()) {
        const double v = it->get<double>();
        if (v != static_cast<double>(static_cast<T>(v))) {
          throw ParseError(std::string("key '") + key + "' must be an integer", line);
        }
        return static_cast<T>(v);
      }
      if (!it->is_number_integer()) {
        throw ParseError(std::string("key '") + key + "' must be an integer", line);
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!it->is_number()) throw ParseError(std::string("key '") + key + "' must be a number", line);
    } else {
      if (!it->is_string()) throw ParseError(std::string("key '") + key + "' must be a string", line);
    }
    return it->get<T>();
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("key '") + key + "': " + ex.what(), line);
  }
}

JobSpec parse_line(const std::string& text, int line) {
  ordered_json obj;
  try {
    obj = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw ParseError(std::string("invalid JSON: ") + ex.what(), line);
  }
  if (!obj.is_object()) throw ParseError("expected a JSON object", line);

  JobSpec job;
  job.id = field<JobId>(obj, "id", line);
  job.name = field<std::string>(obj, "name", line);
  job.arrival_time = field<double>(obj, "arrival_time_s", line);
  job.persistent_bytes = field<Bytes>(obj, "persistent_bytes", line);
  job.ephemeral_bytes = field<Bytes>(obj, "ephemeral_bytes", line);
  job.iteration_duration = field<double>(obj, "iteration_duration_s", line);
  job.iteration_count = field<std::int64_t>(obj, "iteration_count", line);
  job.compute_fraction = field<double>(obj, "compute_fraction", line);
  try {
    job.kind = parse_job_kind(field<std::string>(obj, "kind", line));
  } catch (const ParseError& ex) {
    if (ex.line() > 0) throw;
    throw ParseError(ex.what(), line);
  }
  try {
    validate(job);
  } catch (const ValidationError& ex) {
    throw ValidationError("line " + std::to_string(line) + ": " + ex.what());
  }
  return job;
}

}  // namespace

std::vector<JobSpec> load_trace(std::istream& in) {
  std::vector<JobSpec> jobs;
  std::set<JobId> seen;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    JobSpec job = parse_line(text, line);
    if (!seen.insert(job.id).second) {
      throw ValidationError("line " + std::to_string(line) + ": duplicate job id " +
                            std::to_string(job.id));
    }
    jobs.push_back(std::move(job));
  }
  std::stable_sort(jobs.begin(), jobs.end(), [](const JobSpec& a, const JobSpec& b) {
    if (a.arrival_time != b.arrival_time) return a.arrival_time < b.arrival_time;
    return a.id < b.id;
  });
  return jobs;
}

std::vector<JobSpec> load_trace_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_trace(in);
}

std::vector<JobSpec> load_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open trace file '" + path + "'", 0);
  return load_trace(in);
}

std::string serialize_job(const JobSpec& job) {
  ordered_json obj;
  obj["id"] = job.id;
  obj["name"] = job.name;
  obj["arrival_time_s"] = job.arrival_time;
  obj["persistent_bytes"] = job.persistent_bytes;
  obj["ephemeral_bytes"] = job.ephemeral_bytes;
  obj["iteration_duration_s"] = job.iteration_duration;
  obj["iteration_count"] = job.iteration_count;
  obj["compute_fraction"] = job.compute_fraction;
  obj["kind"] = std::string(to_string(job.kind));
  return obj.dump();
}

std::string serialize_trace(const std::vector<JobSpec>& jobs) {
  std::string out;
  for (const auto& job : jobs) {
    out += serialize_job(job);
    out += '\n';
  }
  return out;
}

}  // namespace gpulane::workload

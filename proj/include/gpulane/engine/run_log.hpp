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

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gpulane/types.hpp"
#include "json.hpp"

namespace gpulane::engine {

// One line of the run log: {"t", "kind", "job", "lane", "detail"}. Absent
// job or lane ids are written as null.
struct LogEvent {
  Seconds t = 0.0;
  std::string kind;
  std::optional<JobId> job;
  std::optional<LaneId> lane;
  nlohmann::ordered_json detail = nlohmann::ordered_json::object();

  friend bool operator==(const LogEvent&, const LogEvent&) = default;
};

class RunLog {
 public:
  void append(LogEvent event) { events_.push_back(std::move(event)); }
  const std::vector<LogEvent>& events() const { return events_; }
  bool empty() const { return events_.empty(); }

  void write(std::ostream& out) const;
  std::string to_jsonl() const;

  // Throws ParseError with the 1-based line of the first bad record.
  static RunLog read(std::istream& in);
  static RunLog parse(std::string_view text);
  static RunLog read_file(const std::string& path);

 private:
  std::vector<LogEvent> events_;
};

}  // namespace gpulane::engine

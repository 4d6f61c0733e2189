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


#include "gpulane/engine/run_log.hpp"

#include <fstream>
#include <sstream>

#include "gpulane/errors.hpp"

namespace gpulane::engine {

namespace {

nlohmann::ordered_json to_json(const LogEvent& event) {
  nlohmann::ordered_json j;
  j["t"] = event.t;
  j["kind"] = event.kind;
  j["job"] = event.job ? nlohmann::ordered_json(*event.job) : nlohmann::ordered_json();
  j["lane"] = event.lane ? nlohmann::ordered_json(*event.lane) : nlohmann::ordered_json();
  j["detail"] = event.detail;
  return j;
}

std::optional<std::int64_t> optional_id(const nlohmann::ordered_json& j, const char* key,
                                        int line) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_number_integer()) throw ParseError(std::string("'") + key + "' must be an integer", line);
  return j[key].get<std::int64_t>();
}

}  // namespace

void RunLog::write(std::ostream& out) const {
  for (const auto& event : events_) out << to_json(event).dump() << '\n';
}

std::string RunLog::to_jsonl() const {
  std::ostringstream out;
  write(out);
  return out.str();
}

RunLog RunLog::read(std::istream& in) {
  RunLog log;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::ordered_json j;
    try {
      j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line);
    }
    if (!j.is_object()) throw ParseError("record must be a JSON object", line);
    if (!j.contains("t") || !j["t"].is_number()) throw ParseError("missing numeric 't'", line);
    if (!j.contains("kind") || !j["kind"].is_string()) throw ParseError("missing string 'kind'", line);
    LogEvent event;
    event.t = j["t"].get<double>();
    event.kind = j["kind"].get<std::string>();
    event.job = optional_id(j, "job", line);
    event.lane = optional_id(j, "lane", line);
    if (j.contains("detail")) {
      if (!j["detail"].is_object()) throw ParseError("'detail' must be an object", line);
      event.detail = j["detail"];
    }
    log.append(std::move(event));
  }
  return log;
}

RunLog RunLog::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read(in);
}

RunLog RunLog::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open run log " + path);
  return read(in);
}

}  // namespace gpulane::engine

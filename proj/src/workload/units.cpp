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

#include "gpulane/units.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "gpulane/errors.hpp"

namespace gpulane {
namespace {

struct Suffix {
  std::string_view name;
  double scale;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Splits "12.5GiB" into 12.5 and "GiB".
std::pair<double, std::string_view> split_number(std::string_view text, std::string_view what) {
  text = trim(text);
  std::size_t end = 0;
  while (end < text.size() &&
         ((text[end] >= '0' && text[end] <= '9') || text[end] == '.' || text[end] == 'e' ||
          text[end] == 'E' || text[end] == '+' || text[end] == '-')) {
    // Do not swallow the 'E' of a unit such as "EB"; only digits may follow.
    if ((text[end] == 'e' || text[end] == 'E') &&
        (end + 1 >= text.size() || !(text[end + 1] >= '0' && text[end + 1] <= '9'))) {
      break;
    }
    ++end;
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + end, value);
  if (end == 0 || ec != std::errc() || ptr != text.data() + end || !std::isfinite(value)) {
    throw ParseError("invalid " + std::string(what) + " '" + std::string(text) + "'", 0);
  }
  return {value, trim(text.substr(end))};
}

double lookup(std::string_view unit, std::initializer_list<Suffix> table, std::string_view text,
              std::string_view what) {
  for (const auto& s : table) {
    if (unit == s.name) return s.scale;
  }
  throw ParseError("unknown " + std::string(what) + " unit in '" + std::string(text) + "'", 0);
}

}  // namespace

Bytes parse_bytes(std::string_view text) {
  auto [value, unit] = split_number(text, "byte quantity");
  const double scale = lookup(unit,
                              {{"", 1.0},
                               {"B", 1.0},
                               {"KB", 1e3},
                               {"MB", 1e6},
                               {"GB", 1e9},
                               {"KiB", double(kKiB)},
                               {"MiB", double(kMiB)},
                               {"GiB", double(kGiB)}},
                              text, "byte");
  const double bytes = std::round(value * scale);
  if (bytes < 0 || bytes > double(std::numeric_limits<Bytes>::max() / 2)) {
    throw ParseError("byte quantity out of range '" + std::string(text) + "'", 0);
  }
  return static_cast<Bytes>(bytes);
}

Seconds parse_seconds(std::string_view text) {
  auto [value, unit] = split_number(text, "duration");
  const double scale =
      lookup(unit, {{"", 1.0}, {"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"min", 60.0}, {"h", 3600.0}},
             text, "duration");
  if (value < 0) throw ParseError("negative duration '" + std::string(text) + "'", 0);
  return value * scale;
}

double parse_bandwidth(std::string_view text) {
  text = trim(text);
  if (text.size() > 2 && text.substr(text.size() - 2) == "/s") text.remove_suffix(2);
  return static_cast<double>(parse_bytes(text));
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string format_bytes(Bytes bytes) {
  char buf[64];
  if (bytes != 0 && bytes % kGiB == 0) {
    std::snprintf(buf, sizeof buf, "%lld GiB", static_cast<long long>(bytes / kGiB));
  } else if (bytes != 0 && bytes % kMiB == 0) {
    std::snprintf(buf, sizeof buf, "%lld MiB", static_cast<long long>(bytes / kMiB));
  } else if (bytes >= kGB) {
    std::snprintf(buf, sizeof buf, "%.1f GB", double(bytes) / double(kGB));
  } else if (bytes >= kMB) {
    std::snprintf(buf, sizeof buf, "%.1f MB", double(bytes) / double(kMB));
  } else {
    std::snprintf(buf, sizeof buf, "%lld B", static_cast<long long>(bytes));
  }
  return buf;
}

}  // namespace gpulane

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

#include "gpulane/workload/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>

#include "gpulane/errors.hpp"
#include "gpulane/units.hpp"
#include "json.hpp"

namespace gpulane::workload {
namespace detail {
extern const std::string_view kBuiltinCatalogJson;
}  // namespace detail

namespace {

using nlohmann::json;

// Numeric batch labels order numerically; text labels keep catalog order.
std::optional<long> numeric_batch(const std::string& label) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(label.data(), label.data() + label.size(), value);
  if (ec != std::errc() || ptr != label.data() + label.size()) return std::nullopt;
  return value;
}

CatalogEntry parse_entry(const json& j, std::size_t index) {
  CatalogEntry e;
  try {
    e.model = j.at("model").get<std::string>();
    e.batch = j.at("batch").get<std::string>();
    e.task = j.value("task", std::string{});
    e.peak_bytes = j.at("peak_bytes").get<Bytes>();
    e.average_bytes = j.at("average_bytes").get<Bytes>();
    e.persistent_bytes = j.at("persistent_bytes").get<Bytes>();
    e.solo_iteration_duration = j.at("solo_iteration_s").get<double>();
    e.inference_ephemeral_bytes = j.value("inference_ephemeral_bytes", Bytes{0});
    e.approx = j.at("approx").get<bool>();
    e.placeholder = j.value("placeholder", false);
    e.exact_fields = j.value("exact_fields", std::vector<std::string>{});
  } catch (const json::exception& ex) {
    throw ParseError("catalog entry " + std::to_string(index) + ": " + ex.what(), 0);
  }
  if (!(0 < e.persistent_bytes && e.persistent_bytes <= e.average_bytes &&
        e.average_bytes <= e.peak_bytes)) {
    throw ValidationError("catalog entry " + e.tag() +
                          ": expected 0 < persistent <= average <= peak");
  }
  if (!(e.solo_iteration_duration > 0.0)) {
    throw ValidationError("catalog entry " + e.tag() + ": solo_iteration_s must be > 0");
  }
  return e;
}

}  // namespace

Catalog Catalog::from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw ParseError(std::string("catalog: ") + ex.what(), 0);
  }
  Catalog catalog;
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
    throw ParseError("catalog: expected an object with an 'entries' array", 0);
  }
  catalog.version_ = doc.value("version", 0);
  const auto& entries = doc["entries"];
  for (std::size_t i = 0; i < entries.size(); ++i) {
    catalog.entries_.push_back(parse_entry(entries[i], i));
  }
  for (std::size_t i = 0; i < catalog.entries_.size(); ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      if (catalog.entries_[i].tag() == catalog.entries_[k].tag()) {
        throw ValidationError("catalog: duplicate entry " + catalog.entries_[i].tag());
      }
    }
  }
  return catalog;
}

const Catalog& Catalog::builtin() {
  static const Catalog catalog = from_json(detail::kBuiltinCatalogJson);
  return catalog;
}

const CatalogEntry& Catalog::lookup(std::string_view model, std::string_view batch) const {
  for (const auto& e : entries_) {
    if (e.model == model && e.batch == batch) return e;
  }
  throw NotFoundError("catalog has no entry '" + std::string(model) + "_" + std::string(batch) +
                      "'");
}

const CatalogEntry& Catalog::largest_batch(std::string_view model) const {
  const CatalogEntry* best = nullptr;
  for (const auto& e : entries_) {
    if (e.model != model) continue;
    if (best == nullptr) {
      best = &e;
      continue;
    }
    auto a = numeric_batch(e.batch), b = numeric_batch(best->batch);
    if (!a || !b || *a > *b) best = &e;
  }
  if (best == nullptr) throw NotFoundError("catalog has no model '" + std::string(model) + "'");
  return *best;
}

const CatalogEntry& Catalog::smallest_batch(std::string_view model) const {
  const CatalogEntry* best = nullptr;
  for (const auto& e : entries_) {
    if (e.model != model) continue;
    if (best == nullptr) {
      best = &e;
      continue;
    }
    auto a = numeric_batch(e.batch), b = numeric_batch(best->batch);
    if (a && b && *a < *b) best = &e;
  }
  if (best == nullptr) throw NotFoundError("catalog has no model '" + std::string(model) + "'");
  return *best;
}

std::vector<std::string> Catalog::models() const {
  std::vector<std::string> out;
  for (const auto& e : entries_) {
    if (std::find(out.begin(), out.end(), e.model) == out.end()) out.push_back(e.model);
  }
  return out;
}

JobSpec Catalog::training_job(const CatalogEntry& entry, JobId id, Seconds arrival,
                              std::int64_t iterations, double compute_fraction) const {
  JobSpec job;
  job.id = id;
  job.name = entry.tag();
  job.arrival_time = arrival;
  job.persistent_bytes = entry.persistent_bytes;
  job.ephemeral_bytes = entry.training_ephemeral_bytes();
  job.iteration_duration = entry.solo_iteration_duration;
  job.iteration_count = iterations;
  job.compute_fraction = compute_fraction;
  job.kind = JobKind::training;
  return job;
}

const CatalogEntry& catalog_lookup(std::string_view model, std::string_view batch) {
  return Catalog::builtin().lookup(model, batch);
}

std::string catalog_csv(const Catalog& catalog) {
  std::ostringstream out;
  out << "model,batch,task,peak_bytes,average_bytes,persistent_bytes,solo_iteration_s,"
         "inference_ephemeral_bytes,approx,exact_fields\n";
  for (const auto& e : catalog.entries()) {
    std::string exact;
    for (const auto& f : e.exact_fields) {
      if (!exact.empty()) exact += ';';
      exact += f;
    }
    out << e.model << ',' << e.batch << ',' << e.task << ',' << e.peak_bytes << ','
        << e.average_bytes << ',' << e.persistent_bytes << ','
        << format_number(e.solo_iteration_duration) << ',' << e.inference_ephemeral_bytes << ','
        << (e.approx ? "true" : "false") << ',' << exact << '\n';
  }
  return out.str();
}

}  // namespace gpulane::workload

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

#include <string>
#include <string_view>
#include <vector>

#include "gpulane/types.hpp"
#include "gpulane/workload/job.hpp"

namespace gpulane::workload {

// Measured memory profile of one (model, batch) workload on a 16 GB GPU.
// Entries whose values were read off bar charts carry approx = true; the
// fields that are exact published numbers are listed in exact_fields.
struct CatalogEntry {
  std::string model;
  std::string batch;  // batch size or a size label ("Small")
  std::string task;
  Bytes peak_bytes = 0;
  Bytes average_bytes = 0;
  Bytes persistent_bytes = 0;
  Seconds solo_iteration_duration = 0.0;
  Bytes inference_ephemeral_bytes = 0;  // forward-only scratch of one request
  bool approx = true;
  bool placeholder = false;  // no published memory numbers at all
  std::vector<std::string> exact_fields;

  std::string tag() const { return model + "_" + batch; }
  // Per-iteration scratch when training: everything above the persistent floor.
  Bytes training_ephemeral_bytes() const { return peak_bytes - persistent_bytes; }
};

class Catalog {
 public:
  // Parses a catalog document. Throws ParseError / ValidationError.
  static Catalog from_json(std::string_view text);
  // The catalog compiled into the library.
  static const Catalog& builtin();

  int version() const { return version_; }
  const std::vector<CatalogEntry>& entries() const { return entries_; }

  // Throws NotFoundError naming the key.
  const CatalogEntry& lookup(std::string_view model, std::string_view batch) const;
  // Largest listed batch of a model (numeric labels compare numerically).
  const CatalogEntry& largest_batch(std::string_view model) const;
  const CatalogEntry& smallest_batch(std::string_view model) const;

  // Distinct model names in catalog order.
  std::vector<std::string> models() const;

  // Training job built from an entry: P = persistent, E = peak - persistent.
  JobSpec training_job(const CatalogEntry& entry, JobId id, Seconds arrival,
                       std::int64_t iterations, double compute_fraction) const;

 private:
  int version_ = 0;
  std::vector<CatalogEntry> entries_;
};

// Convenience wrapper over Catalog::builtin().lookup().
const CatalogEntry& catalog_lookup(std::string_view model, std::string_view batch);

// CSV rendering used by the `catalog` command.
std::string catalog_csv(const Catalog& catalog);

}  // namespace gpulane::workload

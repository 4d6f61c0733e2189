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

#include "gpulane/errors.hpp"
#include "gpulane/workload/transfer.hpp"

#include <cmath>

namespace gpulane::workload {

Seconds min_transfer_time(Bytes bytes, double bandwidth) {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw DomainError("transfer bandwidth must be positive");
  }
  if (bytes < 0) throw DomainError("transfer size must be non-negative");
  return double(bytes) / bandwidth;
}

}  // namespace gpulane::workload

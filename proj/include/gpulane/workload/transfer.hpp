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

#include "gpulane/types.hpp"

namespace gpulane::workload {

// Host<->device link speed assumed for checkpoint-style swapping.
inline constexpr double kDefaultTransferBandwidth = 30e9;  // bytes/s

// Lower bound on moving `bytes` across a link of `bandwidth` bytes/s.
// Throws DomainError unless bandwidth > 0 and bytes >= 0.
Seconds min_transfer_time(Bytes bytes, double bandwidth);

}  // namespace gpulane::workload

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

namespace gpulane {

// Memory is accounted in whole bytes, time in seconds.
using Bytes = std::int64_t;
using Seconds = double;

using JobId = std::int64_t;
using LaneId = std::int64_t;

inline constexpr Bytes kKiB = Bytes{1} << 10;
inline constexpr Bytes kMiB = Bytes{1} << 20;
inline constexpr Bytes kGiB = Bytes{1} << 30;

inline constexpr Bytes kKB = 1'000;
inline constexpr Bytes kMB = 1'000'000;
inline constexpr Bytes kGB = 1'000'000'000;

}  // namespace gpulane

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

#include "gpulane/types.hpp"

namespace gpulane {

// Parses a byte quantity: a raw integer ("17179869184") or a number with one
// of the suffixes B, KB, MB, GB (decimal) or KiB, MiB, GiB (binary).
// Fractional values are rounded to the nearest byte. Throws ParseError.
Bytes parse_bytes(std::string_view text);

// Parses a duration such as "5ms", "0.25s", "2min" or a bare number of
// seconds. Throws ParseError.
Seconds parse_seconds(std::string_view text);

// Parses a bandwidth such as "30GB/s" or "12GiB/s" into bytes per second.
double parse_bandwidth(std::string_view text);

// Shortest decimal text that parses back to exactly `value` ("0.5", "18204").
std::string format_number(double value);

// Human readable form used in diagnostics, e.g. "2 GiB" or "822.2 MB".
std::string format_bytes(Bytes bytes);

}  // namespace gpulane

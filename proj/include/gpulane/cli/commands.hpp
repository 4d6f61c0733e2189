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
#include <string>
#include <vector>

namespace gpulane::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;      // bad input file, I/O error
inline constexpr int kUsage = 2;        // bad flags
inline constexpr int kUnschedulable = 3;

// Runs one command line. `args` excludes the program name. Data goes to
// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gpulane::cli

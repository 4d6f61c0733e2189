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

#include <stdexcept>
#include <string>

#include "gpulane/types.hpp"

namespace gpulane {

// Lookup of an unknown catalog key.
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `line()` is 1-based, 0 when not line oriented.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Well-formed input that breaks a data invariant (duplicate ids, bad ranges).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Generator or engine parameters outside their domain.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside a function's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A job whose persistent + ephemeral demand exceeds the GPU capacity. It can
// never be placed, so it is rejected instead of queued.
class UnschedulableError : public std::runtime_error {
 public:
  UnschedulableError(JobId job, const std::string& what)
      : std::runtime_error(what), job_(job) {}
  JobId job() const noexcept { return job_; }

 private:
  JobId job_;
};

// Operation on an id the state does not know about.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Caller broke an operation's precondition (e.g. moving a busy lane).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gpulane

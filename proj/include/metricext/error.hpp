// Copyright 2026 The metricext Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace metricext {

enum class ErrorCode {
  reject_malformed,
  unknown_vertex,
  disconnected,
  not_graph_metric,
  not_floppy,
  already_edge,
  r_out_of_range,
  extension_diverged,
  choice_set_misses_interval,
  missing_choice_set,
  empty_b,
  depth_zero,
  generation_exhausted,
  patchwork_invalid,
  invalid_argument,
  invariant_violated,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::reject_malformed: return "REJECT_MALFORMED";
    case ErrorCode::unknown_vertex: return "UNKNOWN_VERTEX";
    case ErrorCode::disconnected: return "DISCONNECTED";
    case ErrorCode::not_graph_metric: return "NOT_GRAPH_METRIC";
    case ErrorCode::not_floppy: return "NOT_FLOPPY";
    case ErrorCode::already_edge: return "ALREADY_EDGE";
    case ErrorCode::r_out_of_range: return "R_OUT_OF_RANGE";
    case ErrorCode::extension_diverged: return "EXTENSION_DIVERGED";
    case ErrorCode::choice_set_misses_interval: return "CHOICE_SET_MISSES_INTERVAL";
    case ErrorCode::missing_choice_set: return "MISSING_CHOICE_SET";
    case ErrorCode::empty_b: return "EMPTY_B";
    case ErrorCode::depth_zero: return "DEPTH_ZERO";
    case ErrorCode::generation_exhausted: return "GENERATION_EXHAUSTED";
    case ErrorCode::patchwork_invalid: return "PATCHWORK_INVALID";
    case ErrorCode::invalid_argument: return "INVALID_ARGUMENT";
    case ErrorCode::invariant_violated: return "INVARIANT_VIOLATED";
  }
  return "UNKNOWN";
}

/// Exception carrying a machine-readable code. `detail` holds an optional
/// short tag (for example which bound of an interval was violated).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string detail = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        message_(message),
        detail_(std::move(detail)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string message_;
  std::string detail_;
};

}  // namespace metricext

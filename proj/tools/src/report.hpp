// Copyright 2026 The casmat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "casmat/scheme.hpp"
#include "json.hpp"

namespace casmat::cli {

inline constexpr const char* kReportSchema = "casmat-report/v1";

struct WitnessRecord {
  std::vector<NodePair> pairs;
  std::string detail;
};

struct CheckRecord {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  // Non-gating checks are reported but do not affect the exit code.
  bool gating = true;
  std::vector<WitnessRecord> witnesses;

  bool passed() const noexcept { return residual <= tolerance; }
};

struct Report {
  std::string command;
  std::vector<std::string> arguments;
  std::string input_digest;
  std::vector<CheckRecord> checks;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  double wall_time_seconds = 0.0;

  CheckRecord& add(std::string name, double residual, double tolerance, bool gating = true);
  bool passed() const noexcept;
  nlohmann::ordered_json to_json() const;
};

std::string sha256_hex(std::string_view bytes);

}  // namespace casmat::cli

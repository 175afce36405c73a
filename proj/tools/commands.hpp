// Copyright 2026 The GSQC Authors
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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace gsqc::cli {

/// Everything a command needs; echoed into the manifest so a run can be
/// replayed from it.
struct RunConfig {
  std::string command;
  std::string circuit_path;
  /// Circuit document, embedded so a manifest is self-contained.
  std::optional<nlohmann::json> circuit;
  double epsilon = 1.0;
  double lambda = 4.0;
  /// Explicit Lambda grid; empty means the command default.
  std::vector<double> lambda_grid;
  std::optional<double> tmax;
  std::optional<nlohmann::json> schedule;
  double tol = 1e-9;
  std::uint64_t cap = std::uint64_t{1} << 26;
  std::uint64_t seed = 7;
  std::string out = "gsqc-out";
  int threads = 0;
  std::vector<int> gate_counts = {1, 2, 3};
  double target = 1e-3;

  /// Throws ValidationError on out-of-range values.
  void validate() const;
  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
};

/// "max:points" or a comma-separated list of values.
std::vector<double> parse_lambda_grid(const std::string& text);
/// Inline JSON, or "@path" to read it from a file.
nlohmann::json parse_json_argument(const std::string& text);

enum ExitCode : int {
  kOk = 0,
  kAssertionFailed = 1,
  kInvalidInput = 2,
  kSolverFailure = 3,
};

/// Runs `config.command`, writes its outputs and manifest.json into
/// config.out, and returns an ExitCode.
int run(const RunConfig& config);

/// Re-runs the configuration stored in a manifest, optionally into a
/// different output directory.
int replay(const std::string& manifest_path, const std::string& out);

}  // namespace gsqc::cli

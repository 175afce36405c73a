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

#include <string>

#include <nlohmann/json.hpp>

#include "gsqc/circuit.hpp"

namespace gsqc {

// Circuit documents look like
//
//   {"lines": 2, "mode": "teleport",
//    "gates": [{"stage": 1, "targets": [0, 1], "name": "CPHASE"},
//              {"stage": 2, "targets": [0], "matrix": [[0,0],[1,0],[1,0],[0,0]]}],
//    "projections": [{"ancilla": 1, "basis": "Z", "lambda": 3.0}]}
//
// Matrices are row-major lists of [re, im] pairs; a list of rows of pairs is
// accepted as well. A gate carries exactly one of "name" and "matrix".
// "lambda" on a projection is optional.

CircuitSpec circuit_from_json(const nlohmann::json& doc);
nlohmann::json circuit_to_json(const CircuitSpec& circuit);

/// Parses and validates; ValidationError messages carry the JSON path of the
/// offending field (e.g. "gates[2].targets").
CircuitSpec parse_circuit(const std::string& text);
CircuitSpec load_circuit(const std::string& path);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& doc, const std::string& where);

}  // namespace gsqc

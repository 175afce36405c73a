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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gsqc/circuit.hpp"
#include "gsqc/compile.hpp"
#include "gsqc/spectral.hpp"

namespace gsqc {

/// The four gauge-operator measurements of the [[4,1,2]] Bacon-Shor code on
/// the square Q R / S T: the two Z rows and the two X columns.
enum class DetectionSelector { ZRowTop, ZRowBottom, XColumnLeft, XColumnRight };

inline constexpr std::array<DetectionSelector, 4> kAllDetectionSelectors = {
    DetectionSelector::ZRowTop, DetectionSelector::ZRowBottom,
    DetectionSelector::XColumnLeft, DetectionSelector::XColumnRight};

/// "ZQZR", "ZSZT", "XQXS", "XRXT".
const char* to_string(DetectionSelector which);
DetectionSelector detection_selector_from_string(std::string_view name);

struct DetectionCircuit {
  DetectionSelector which = DetectionSelector::ZRowTop;
  /// Lines 0..3 are the data qubits Q, R, S, T; line 4 is the ancilla.
  CircuitSpec circuit;
  std::array<std::string, 5> labels = {"Q", "R", "S", "T", "A"};
  /// The two data lines the measured operator acts on.
  std::array<int, 2> data = {0, 1};
  static constexpr int kAncilla = 4;

  /// CNOTs plus terminal projections.
  int gate_count() const;
  /// Only the two touched data lines and the ancilla (lines 0, 1, 2).
  CircuitSpec active_subcircuit() const;
  nlohmann::json to_json() const;
};

/// Z type: CNOT(data_a -> A), CNOT(data_b -> A), Z projection on A.
/// X type: CNOT(A -> data_a) with the ancilla Hadamard folded in, CNOT(A ->
/// data_b), X projection on A.
DetectionCircuit build_detection_circuit(DetectionSelector which,
                                         std::optional<double> boost =
                                             std::nullopt);

struct GateTally {
  int per_detection_round = 0;  // sum over the four circuits
  int transverse = 4;
  int extended_rectangle = 0;   // 4 * per_detection_round + transverse
};

GateTally extended_rectangle_tally();

struct SubcircuitCheck {
  DetectionSelector which = DetectionSelector::ZRowTop;
  std::size_t dimension = 0;
  double lambda = 0.0;
  /// ||H psi|| for the analytic zero mode; bounds E0 from above since H >= 0.
  double residual = 0.0;
  double rayleigh = 0.0;
};

/// Compiles the active sub-circuit and checks its analytic zero mode.
SubcircuitCheck check_detection_subcircuit(DetectionSelector which,
                                           double lambda,
                                           const CompileOptions& options = {});

struct AmplificationReport {
  double lambda = 0.0;
  double theta = 0.0;
  std::size_t dimension = 0;
  double e0 = 0.0;
  double e1 = 0.0;
  /// Overlap of the eigensolver ground state with the amplified state.
  double overlap = 0.0;
  /// Weights of the syndrome-0 and syndrome-1 parts of the data before
  /// the projection acts.
  double weight_no_error = 0.0;
  double weight_error = 0.0;
  /// Weight with the ancilla in 0_0 or IDLE, in the ground state.
  double no_error_weight = 0.0;
  /// (1 + L^2) w0 / ((1 + L^2) w0 + w1).
  double expected_no_error_weight = 0.0;
  /// max_x |a(IDLE, x) - L a(0_0, x)| / max|a|: zero when the amplitude
  /// ratio is exactly L.
  double ratio_defect = 0.0;

  nlohmann::json to_json() const;
};

/// Data line 0 and ancilla line 1 with one teleported gate CNOT (Ry(theta)
/// x I) and a Z projection on the ancilla, all links at `lambda`. The
/// default angle gives equal syndrome weights.
AmplificationReport amplification_demo(double lambda,
                                       double theta = 1.5707963267948966,
                                       const SpectralOptions& options = {});

/// The demo circuit on its own.
CircuitSpec amplification_circuit(double theta, bool with_projection = true);

}  // namespace gsqc

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

#include <map>
#include <optional>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "gsqc/compile.hpp"
#include "gsqc/operator.hpp"

namespace gsqc {

// Closed-form zero modes. Nothing here calls an eigensolver; the states are
// built by applying the gate advances and link raisings to the product of
// Bell pairs, so they double as oracles for the spectral code.

/// Makes the first amplitude above `threshold * max|a|` real and positive.
void canonicalize_phase(StateVector& state, double threshold = 1e-8);

/// sum_s U_s...U_1 |0_s> / sqrt(N + 1) on the register of chain_hamiltonian.
StateVector chain_history_state(std::span<const Matrix> gates,
                                const RegisterPtr& reg);
/// Chain-mode circuits with one or two lines.
StateVector chain_history_state(const CompiledCircuit& compiled);

/// Unnormalized teleport history state: each gate contributes
/// (I + advance)/sqrt(2), each link (I + L |idle pair><transition|), each
/// projection (I + L |IDLE><g|), applied to |0_0> on every line's first
/// particle times singlets on every (bell, next) pair.
Vector teleport_history_amplitudes(const CompiledCircuit& compiled,
                                   double lambda);
/// Normalized, phase-canonical version.
StateVector teleport_history_state(const CompiledCircuit& compiled,
                                   double lambda);

struct ReadoutReport {
  double p_done = 0.0;
  double p_incorrect = 0.0;
  /// Fidelity of the done component with the ideal circuit output.
  double done_fidelity = 0.0;
  /// Terminal bit strings (line 0 first) conditioned on done.
  std::map<std::string, double> answer_distribution;

  nlohmann::json to_json() const;
};

/// Teleport-mode readout. A pending component counts as correct with the
/// singlet probability 1/4; the done component is graded by its fidelity with
/// simulate(circuit). Circuits with projections are rejected.
ReadoutReport readout(const StateVector& state,
                      const CompiledCircuit& compiled);

struct ChainReadout {
  /// Weight of the component with every line at the last stage.
  double p_final = 0.0;
  double final_fidelity = 0.0;
  std::map<std::string, double> answer_distribution;
};

ChainReadout chain_readout(const StateVector& state,
                           const CompiledCircuit& compiled);

/// [(|g> + L|IDLE>) Psi0 + |g_perp> Psi1] normalized, with the ancilla
/// appended as the last particle (1 stage + IDLE). g = |0_0> for Z and
/// (|0_0> + |1_0>)/sqrt(2) for X.
StateVector amplified_projection_state(const StateVector& psi0,
                                       const StateVector& psi1, double lambda,
                                       Basis basis = Basis::Z,
                                       const ParticleId& ancilla = {"A"});

/// Two-qubit Grover with a phase oracle on `marked` (0..3, line 0 as the
/// high bit): H H / oracle / H H / flip 00 / H H, depth 5.
CircuitSpec grover_circuit(int marked, CircuitMode mode = CircuitMode::Chain);
/// One iteration of two-qubit Grover is exact: the answer is the marked state.
int grover_reference(int marked);

}  // namespace gsqc

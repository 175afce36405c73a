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

#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "gsqc/common.hpp"

namespace gsqc {

enum class Basis { Z, X };
enum class CircuitMode { Chain, Teleport };

/// A staged one- or two-qubit gate. For two-qubit gates `targets[0]` is the
/// more significant bit of the 4x4 matrix (the control of CNOT).
struct GateSpec {
  Matrix unitary;
  std::vector<int> targets;
  int stage = 1;
  std::string name;

  int arity() const { return static_cast<int>(targets.size()); }
};

/// Terminal syndrome projection on one line. Without `boost` the projection
/// follows the global link parameter.
struct ProjectionSpec {
  int ancilla_line = 0;
  Basis basis = Basis::Z;
  std::optional<double> boost;
};

struct CircuitSpec {
  int lines = 1;
  std::vector<GateSpec> gates;
  std::vector<ProjectionSpec> projections;
  CircuitMode mode = CircuitMode::Teleport;

  int depth() const;  // largest stage index, 0 without gates
  /// Gates acting on `line`, ordered by stage.
  std::vector<const GateSpec*> line_gates(int line) const;
};

namespace gates {
Matrix identity();
Matrix hadamard();
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix phase_s();
Matrix phase_t();
Matrix cphase();
Matrix cnot();
/// diag(1,1,1,1) with -1 on the given basis state (0..3).
Matrix phase_flip(int marked);
/// Looks up H, X, Y, Z, S, T, CPHASE, CNOT (case-insensitive).
Matrix named(std::string_view name);
/// Haar-random unitary of the given side.
Matrix random_unitary(int side, std::mt19937_64& rng);
}  // namespace gates

/// max |U^dagger U - I|.
double unitarity_defect(const Matrix& u);

/// Checks targets, stages, unitarity and mode restrictions; throws
/// ValidationError naming the offending gate or field.
void validate(const CircuitSpec& circuit);

/// Plain state-vector simulation from |0...0>. Line 0 is the most
/// significant bit of the returned 2^lines vector.
Vector simulate(const CircuitSpec& circuit);

/// Bit string for basis index `index` of `lines` qubits, line 0 first.
std::string bitstring(std::size_t index, int lines);

const char* to_string(Basis basis);
const char* to_string(CircuitMode mode);

}  // namespace gsqc

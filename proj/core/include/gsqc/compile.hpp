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
#include <vector>

#include "gsqc/circuit.hpp"
#include "gsqc/hamiltonian.hpp"

namespace gsqc {

struct CompileOptions {
  double epsilon = 1.0;
  double lambda = 4.0;
  std::uint64_t dimension_cap = Register::kDefaultDimensionCap;
  /// Optional fixed link parameter per gate (indexed like circuit.gates).
  /// Gates without an entry follow the global parameter.
  std::vector<std::optional<double>> gate_lambdas;
};

/// Where each line lives in the register.
///
/// Teleport mode: line l owns particles "Ll.in1", "Ll.bell1", ...,
/// "Ll.out", in that order. Chain mode: one particle "Ll" with depth + 1
/// stages and no IDLE.
struct LineLayout {
  struct Block {
    std::size_t gate = 0;   // index into circuit.gates
    std::size_t input = 0;  // register positions
    std::size_t bell = 0;
  };
  std::vector<Block> blocks;
  std::size_t terminal = 0;
  std::optional<std::size_t> projection;  // index into circuit.projections
};

struct CompiledCircuit {
  CircuitSpec circuit;
  CompileOptions options;
  RegisterPtr reg;
  HamiltonianSpec spec;
  std::vector<LineLayout> lines;

  const ParticleId& particle_id(std::size_t position) const {
    return reg->particle(position).id;
  }
};

/// Validates the circuit and emits its Hamiltonian. Throws SizingError if the
/// register exceeds the cap and ValidationError on a malformed circuit.
CompiledCircuit compile(const CircuitSpec& circuit,
                        const CompileOptions& options = {});

/// Chain mode, two lines: the 4x4 operator applied at `stage` with line 0 as
/// the more significant bit (identity fill for idle lines).
Matrix stage_unitary(const CircuitSpec& circuit, int stage);

/// Orbital counts of the particles compile() would allocate; cheap.
std::vector<int> register_shape(const CircuitSpec& circuit);

}  // namespace gsqc

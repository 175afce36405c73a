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

#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "gsqc/compile.hpp"
#include "gsqc/operator.hpp"

namespace gsqc {

/// Matrix Market "coordinate complex hermitian": lower triangle, 1-based
/// indices, %.17g values.
void write_matrix_market(std::ostream& os, const SparseOperator& op);

/// Reads a file written by write_matrix_market (general or hermitian
/// complex coordinate) back into a dense-free CSR matrix.
CsrMatrix read_matrix_market(std::istream& is);

/// Particle list with orbital labels in basis order; the basis is the
/// lexicographic product with the first particle varying slowest.
nlohmann::json basis_to_json(const Register& reg);

/// {particles, dimension, terms, links, nonzeros, epsilon, lambda}.
nlohmann::json resource_report(const CompiledCircuit& compiled,
                               const SparseOperator& h);

}  // namespace gsqc

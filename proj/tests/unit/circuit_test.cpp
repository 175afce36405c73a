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

#include <gtest/gtest.h>

#include <random>

#include "gsqc/circuit.hpp"
#include "gsqc/circuit_json.hpp"
#include "oracles.hpp"

namespace gsqc {
namespace {

std::string error_of(const std::string& text) {
  try {
    parse_circuit(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(Gates, NamedGatesAreUnitary) {
  for (const char* n : {"H", "X", "Y", "Z", "S", "T", "I", "CPHASE", "CNOT"}) {
    EXPECT_LE(unitarity_defect(gates::named(n)), 1e-15) << n;
  }
  EXPECT_THROW(gates::named("FOO"), ValidationError);
}

TEST(Gates, CphaseAndCnotEntries) {
  const Matrix cz = gates::cphase();
  EXPECT_EQ(cz, Matrix(Eigen::Vector4cd(1, 1, 1, -1).asDiagonal()));
  const Matrix cx = gates::cnot();
  // Control is the first (more significant) target.
  EXPECT_EQ(cx(3, 2), Complex(1.0));
  EXPECT_EQ(cx(2, 3), Complex(1.0));
  EXPECT_EQ(cx(0, 0), Complex(1.0));
  for (int m = 0; m < 4; ++m) {
    const Matrix f = gates::phase_flip(m);
    for (int k = 0; k < 4; ++k) {
      EXPECT_EQ(f(k, k), Complex(k == m ? -1.0 : 1.0));
    }
  }
}

TEST(Gates, RandomUnitaryIsUnitaryAndSeeded) {
  std::mt19937_64 a(42), b(42);
  const Matrix u = gates::random_unitary(4, a);
  EXPECT_LE(unitarity_defect(u), 1e-12);
  EXPECT_EQ(u, gates::random_unitary(4, b));
}

TEST(Simulate, MatchesKroneckerOracle) {
  std::mt19937_64 rng(8);
  CircuitSpec c;
  c.lines = 2;
  const Matrix u0 = testing::haar_unitary(2, rng);
  const Matrix u1 = testing::haar_unitary(2, rng);
  const Matrix u2 = testing::haar_unitary(4, rng);
  c.gates.push_back({u0, {0}, 1, "a"});
  c.gates.push_back({u1, {1}, 1, "b"});
  c.gates.push_back({u2, {1, 0}, 2, "c"});
  // Swap (q1, q0) ordering into (q0, q1) for the reference.
  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
  Vector zero = Vector::Zero(4);
  zero(0) = 1.0;
  const Vector expected =
      swap * u2 * swap * testing::kron(u0, u1) * zero;
  EXPECT_LE((simulate(c) - expected).norm(), 1e-14);
}

TEST(Validate, RejectsStructuralErrors) {
  CircuitSpec c;
  c.lines = 2;
  c.gates.push_back({gates::hadamard(), {0}, 2, "H"});
  EXPECT_THROW(validate(c), ValidationError);  // stage 1 empty
  c.gates[0].stage = 1;
  EXPECT_NO_THROW(validate(c));
  c.gates.push_back({gates::cphase(), {1, 1}, 2, "CZ"});
  EXPECT_THROW(validate(c), ValidationError);
  c.gates.back().targets = {0, 1};
  EXPECT_NO_THROW(validate(c));
  c.gates.back().unitary(0, 0) = 2.0;
  EXPECT_THROW(validate(c), ValidationError);
  c.gates.back().unitary = gates::cphase();
  c.projections.push_back({1, Basis::Z, -1.0});
  EXPECT_THROW(validate(c), ValidationError);
  c.projections.back().boost = 2.0;
  EXPECT_NO_THROW(validate(c));
  c.mode = CircuitMode::Chain;
  EXPECT_THROW(validate(c), ValidationError);
}

TEST(CircuitJson, RoundTrip) {
  std::mt19937_64 rng(4);
  CircuitSpec c;
  c.lines = 2;
  c.gates.push_back({gates::hadamard(), {0}, 1, "H"});
  c.gates.push_back({gates::random_unitary(2, rng), {1}, 1, "custom"});
  c.gates.push_back({gates::cnot(), {0, 1}, 2, "CNOT"});
  c.projections.push_back({1, Basis::X, 3.0});
  const auto back = circuit_from_json(circuit_to_json(c));
  ASSERT_EQ(back.gates.size(), 3u);
  EXPECT_EQ(back.lines, 2);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_LE((back.gates[i].unitary - c.gates[i].unitary).norm(), 1e-15);
    EXPECT_EQ(back.gates[i].targets, c.gates[i].targets);
    EXPECT_EQ(back.gates[i].stage, c.gates[i].stage);
  }
  ASSERT_EQ(back.projections.size(), 1u);
  EXPECT_EQ(back.projections[0].basis, Basis::X);
  EXPECT_EQ(*back.projections[0].boost, 3.0);
}

TEST(CircuitJson, MatrixAsReImPairs) {
  const auto c = parse_circuit(R"({"lines": 1, "gates": [{"stage": 1,
      "targets": [0], "matrix": [[0, 0], [1, 0], [1, 0], [0, 0]]}]})");
  EXPECT_EQ(c.gates[0].unitary, gates::pauli_x());
  const auto y = parse_circuit(R"({"lines": 1, "gates": [{"stage": 1,
      "targets": [0], "matrix": [[[0, 0], [0, -1]], [[0, 1], [0, 0]]]}]})");
  EXPECT_EQ(y.gates[0].unitary, gates::pauli_y());
}

TEST(CircuitJson, DiagnosticsNameTheField) {
  EXPECT_NE(error_of(R"({"lines": 2, "gates": [{"stage": 1, "targets": [3],
      "name": "X"}]})").find("gates[0].targets"), std::string::npos);
  EXPECT_NE(error_of(R"({"lines": 1, "gates": [{"targets": [0],
      "name": "X"}]})").find("gates[0].stage"), std::string::npos);
  EXPECT_NE(error_of(R"({"lines": 1, "gates": [{"stage": 1, "targets": [0],
      "matrix": [[1, 0], [0, 0], [0, 0], [2, 0]]}]})").find("gates[0]"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"lines": 1, "mode": "other"})").find("mode"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"gates": []})").find("lines"), std::string::npos);
  EXPECT_NE(error_of("{not json").size(), 0u);
}

TEST(Bitstring, LineZeroFirst) {
  EXPECT_EQ(bitstring(2, 2), "10");
  EXPECT_EQ(bitstring(1, 3), "001");
}

}  // namespace
}  // namespace gsqc

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

#include "gsqc/compile.hpp"
#include "gsqc/spectral.hpp"
#include "oracles.hpp"

namespace gsqc {
namespace {

using testing::dense;
using testing::dense_eigenvalues;

CircuitSpec single(const Matrix& u) {
  CircuitSpec c;
  c.gates.push_back({u, {0}, 1, "U"});
  return c;
}

TEST(Compile, SingleGateLayout) {
  const auto compiled = compile(single(gates::hadamard()));
  EXPECT_EQ(compiled.reg->dimension(), 30u);
  ASSERT_EQ(compiled.reg->particle_count(), 3u);
  EXPECT_EQ(compiled.particle_id(0).value, "L0.in1");
  EXPECT_EQ(compiled.particle_id(1).value, "L0.bell1");
  EXPECT_EQ(compiled.particle_id(2).value, "L0.out");
  ASSERT_EQ(compiled.lines.size(), 1u);
  EXPECT_EQ(compiled.lines[0].blocks.size(), 1u);
  EXPECT_EQ(compiled.lines[0].terminal, 2u);
  EXPECT_FALSE(compiled.lines[0].projection.has_value());
  EXPECT_EQ(compiled.spec.links().size(), 1u);
  EXPECT_EQ(compiled.spec.links()[0].gate, 0);
}

TEST(Compile, RegisterShapeMatchesRegister) {
  CircuitSpec c;
  c.lines = 2;
  c.gates.push_back({gates::hadamard(), {0}, 1, "H"});
  c.gates.push_back({gates::cphase(), {0, 1}, 2, "CZ"});
  const auto shape = register_shape(c);
  std::size_t product = 1;
  for (int s : shape) product *= static_cast<std::size_t>(s);
  EXPECT_EQ(compile(c).reg->dimension(), product);
  EXPECT_EQ(shape, (std::vector<int>{5, 3, 5, 3, 2, 5, 3, 2}));
}

TEST(Compile, EmptyCircuitIsTrivial) {
  CircuitSpec c;
  const auto compiled = compile(c);
  EXPECT_EQ(compiled.reg->dimension(), 2u);
  const auto ev = dense_eigenvalues(dense(compiled.spec.evaluate(1.0)));
  EXPECT_NEAR(ev(0), 0.0, 1e-15);
  EXPECT_NEAR(ev(1), 1.0, 1e-15);
}

TEST(Compile, RandomCircuitsHaveZeroGroundEnergy) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 6; ++trial) {
    CircuitSpec c;
    const int n = 1 + trial % 2;
    for (int s = 1; s <= n; ++s) {
      c.gates.push_back({testing::haar_unitary(2, rng), {0}, s, "U"});
    }
    const auto compiled = compile(c);
    for (double l : {0.0, 1.0, 4.0}) {
      const auto ev = dense_eigenvalues(dense(compiled.spec.evaluate(l)));
      EXPECT_NEAR(ev(0), 0.0, 1e-10);
      EXPECT_GT(ev(1), 1e-6);
    }
  }
}

TEST(Compile, TwoQubitGateOrderFollowsTargets) {
  // CNOT with control on line 1 equals the swapped matrix on lines (0, 1).
  CircuitSpec a;
  a.lines = 2;
  a.gates.push_back({gates::cnot(), {1, 0}, 1, "CNOT"});
  Matrix swapped = Matrix::Zero(4, 4);
  const int perm[4] = {0, 2, 1, 3};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) swapped(perm[i], perm[j]) = gates::cnot()(i, j);
  }
  CircuitSpec b = a;
  b.gates[0] = {swapped, {0, 1}, 1, "U"};
  const Matrix ha = dense(compile(a).spec.evaluate(2.0));
  const Matrix hb = dense(compile(b).spec.evaluate(2.0));
  EXPECT_LE((ha - hb).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Compile, StageUnitaryFillsIdentity) {
  CircuitSpec c;
  c.lines = 2;
  c.mode = CircuitMode::Chain;
  c.gates.push_back({gates::hadamard(), {1}, 1, "H"});
  c.gates.push_back({gates::pauli_x(), {0}, 2, "X"});
  EXPECT_LE((stage_unitary(c, 1) -
             testing::kron(gates::identity(), gates::hadamard()))
                .cwiseAbs()
                .maxCoeff(),
            1e-15);
  EXPECT_LE((stage_unitary(c, 2) -
             testing::kron(gates::pauli_x(), gates::identity()))
                .cwiseAbs()
                .maxCoeff(),
            1e-15);
}

TEST(Compile, ChainModeRegister) {
  CircuitSpec c;
  c.lines = 2;
  c.mode = CircuitMode::Chain;
  c.gates.push_back({gates::hadamard(), {0}, 1, "H"});
  c.gates.push_back({gates::cnot(), {0, 1}, 2, "CNOT"});
  const auto compiled = compile(c);
  EXPECT_EQ(compiled.reg->dimension(), 36u);
  EXPECT_TRUE(compiled.spec.links().empty());
  const auto ev = dense_eigenvalues(dense(compiled.spec.evaluate(0.0)));
  EXPECT_NEAR(ev(0), 0.0, 1e-12);
  EXPECT_GT(ev(1), 1e-3);
}

TEST(Compile, GateLambdasFixLinks) {
  CircuitSpec c;
  c.gates.push_back({gates::hadamard(), {0}, 1, "H"});
  c.gates.push_back({gates::phase_t(), {0}, 2, "T"});
  CompileOptions o;
  o.gate_lambdas = {std::nullopt, 2.5};
  const auto compiled = compile(c, o);
  ASSERT_EQ(compiled.spec.links().size(), 2u);
  EXPECT_FALSE(compiled.spec.links()[0].fixed_lambda.has_value());
  EXPECT_EQ(compiled.spec.links()[1].fixed_lambda.value(), 2.5);
  EXPECT_EQ(compiled.spec.free_link_count(), 1u);
  o.gate_lambdas = {1.0};
  EXPECT_THROW(compile(c, o), ValidationError);
}

TEST(Compile, ProjectionAddsIdleToTerminal) {
  CircuitSpec c;
  c.lines = 2;
  c.gates.push_back({gates::cnot(), {0, 1}, 1, "CNOT"});
  c.projections.push_back({1, Basis::Z, std::nullopt});
  const auto compiled = compile(c);
  ASSERT_TRUE(compiled.lines[1].projection.has_value());
  const auto& out = compiled.reg->particle(compiled.lines[1].terminal);
  EXPECT_TRUE(out.has_idle);
  EXPECT_EQ(compiled.spec.links().size(), 3u);
}

TEST(Compile, SizingAndValidation) {
  CompileOptions o;
  o.dimension_cap = 100;
  CircuitSpec c;
  c.lines = 2;
  c.gates.push_back({gates::cphase(), {0, 1}, 1, "CZ"});
  EXPECT_THROW(compile(c, o), SizingError);
  CircuitSpec bad;
  bad.gates.push_back({gates::hadamard(), {0}, 2, "H"});
  EXPECT_THROW(compile(bad), ValidationError);
}

TEST(Compile, EpsilonScalesEveryTerm) {
  std::mt19937_64 rng(4);
  const auto c = single(testing::haar_unitary(2, rng));
  CompileOptions o;
  o.epsilon = 2.5;
  const Matrix h1 = dense(compile(c).spec.evaluate(1.5));
  const Matrix h2 = dense(compile(c, o).spec.evaluate(1.5));
  EXPECT_LE((h2 - 2.5 * h1).cwiseAbs().maxCoeff(), 1e-14);
}

}  // namespace
}  // namespace gsqc

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
#include <sstream>

#include "gsqc/export.hpp"
#include "oracles.hpp"

namespace gsqc {
namespace {

CompiledCircuit sample() {
  std::mt19937_64 rng(71);
  CircuitSpec c;
  c.gates.push_back({testing::haar_unitary(2, rng), {0}, 1, "U"});
  return compile(c);
}

TEST(MatrixMarket, RoundTripIsExact) {
  const auto compiled = sample();
  const auto h = compiled.spec.evaluate(1.7);
  std::stringstream ss;
  write_matrix_market(ss, h);
  const std::string text = ss.str();
  EXPECT_EQ(text.rfind("%%MatrixMarket matrix coordinate complex hermitian\n",
                       0),
            0u);
  const CsrMatrix back = read_matrix_market(ss);
  EXPECT_EQ(back.rows(), 30);
  EXPECT_EQ(Matrix(back - h.matrix()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(MatrixMarket, GeneralFormAndErrors) {
  std::istringstream general(
      "%%MatrixMarket matrix coordinate complex general\n% note\n2 2 2\n"
      "1 2 0.5 1\n2 1 0.5 -1\n");
  const Matrix m(read_matrix_market(general));
  EXPECT_EQ(m(0, 1), Complex(0.5, 1));
  EXPECT_EQ(m(1, 0), Complex(0.5, -1));
  EXPECT_EQ(m(0, 0), Complex(0, 0));
  std::istringstream bad("not a header\n");
  EXPECT_THROW(read_matrix_market(bad), ValidationError);
  std::istringstream real("%%MatrixMarket matrix coordinate real general\n");
  EXPECT_THROW(read_matrix_market(real), ValidationError);
  std::istringstream cut(
      "%%MatrixMarket matrix coordinate complex general\n2 2 3\n1 1 1 0\n");
  EXPECT_THROW(read_matrix_market(cut), ValidationError);
}

TEST(BasisJson, ListsOrbitalsInOrder) {
  const auto compiled = sample();
  const auto j = basis_to_json(*compiled.reg);
  EXPECT_EQ(j.at("dimension"), 30);
  ASSERT_EQ(j.at("particles").size(), 3u);
  const auto& in = j.at("particles")[0];
  EXPECT_EQ(in.at("id"), "L0.in1");
  EXPECT_EQ(in.at("orbitals").size(), 5u);
  EXPECT_EQ(in.at("orbitals")[4], orbital_label(Orbital::idle()));
  EXPECT_EQ(in.at("orbitals")[1],
            orbital_label(Orbital::computational(0, 1)));
}

TEST(ResourceReport, CountsTermsAndLinks) {
  const auto compiled = sample();
  const auto h = compiled.spec.evaluate(4.0);
  const auto j = resource_report(compiled, h);
  EXPECT_EQ(j.at("dimension"), 30);
  EXPECT_EQ(j.at("nonzeros"), h.nonzeros());
  EXPECT_EQ(j.at("links").size(), 1u);
  EXPECT_EQ(j.at("term_count"),
            compiled.spec.terms().size() + compiled.spec.links().size());
  EXPECT_EQ(j.at("lambda"), 4.0);
}

}  // namespace
}  // namespace gsqc

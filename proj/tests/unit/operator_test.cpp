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

#include <numeric>
#include <random>

#include "gsqc/operator.hpp"
#include "oracles.hpp"

namespace gsqc {
namespace {

using testing::dense;
using testing::dense_eigenvalues;
using testing::kron;

RegisterPtr thirty() {
  return build_register(
      {{{"Q3"}, 1, false}, {{"Q2"}, 1, true}, {{"Q1"}, 2, true}});
}

Matrix random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

TEST(Embed, IdentityIsIdentity) {
  const auto reg = thirty();
  const auto& p = reg->particle(1);
  const LocalMatrix id{p.id, Matrix::Identity(p.orbital_count(),
                                               p.orbital_count())};
  const Matrix e = dense(embed(reg, id));
  EXPECT_EQ((e - Matrix::Identity(30, 30)).norm(), 0.0);
}

TEST(Embed, ProjectorOnQ1HasSixOnes) {
  const auto reg = thirty();
  const Orbital o = Orbital::computational(0, 1);
  const auto op = embed(reg, local_projector(reg->particle(2), {&o, 1}));
  const Matrix e = dense(op);
  EXPECT_EQ(op.nonzeros(), 6u);
  EXPECT_EQ(e.diagonal().real().sum(), 6.0);
  EXPECT_EQ((e - Matrix(e.diagonal().asDiagonal())).norm(), 0.0);
}

TEST(Embed, DistinctOrbitalTransitionIsNilpotent) {
  const auto reg = thirty();
  const auto op = embed(reg, local_transition(reg->particle(2),
                                              Orbital::computational(1, 0),
                                              Orbital::computational(0, 0)));
  const Matrix e = dense(op);
  EXPECT_GT(e.norm(), 0.0);
  EXPECT_EQ((e * e).norm(), 0.0);
}

TEST(Embed, MatchesKroneckerProduct) {
  std::mt19937_64 rng(3);
  const auto reg = thirty();
  const Matrix a = random_matrix(3, rng);
  const Matrix e = dense(embed(reg, {{"Q2"}, a}));
  const Matrix expected =
      kron(kron(Matrix::Identity(2, 2), a), Matrix::Identity(5, 5));
  EXPECT_LE((e - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Embed, DistributesOverProducts) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    std::uniform_int_distribution<int> stages(1, 2);
    std::bernoulli_distribution idle(0.5);
    std::vector<ParticleSpec> ps;
    for (int k = 0; k < 3; ++k) {
      ps.push_back({{"p" + std::to_string(k)}, stages(rng), idle(rng)});
    }
    const auto reg = build_register(ps);
    const std::size_t k = static_cast<std::size_t>(trial % 3);
    const int n = ps[k].orbital_count();
    const Matrix a = random_matrix(n, rng);
    const Matrix b = random_matrix(n, rng);
    const Matrix lhs = dense(embed(reg, {ps[k].id, a * b}));
    const Matrix rhs = dense(embed(reg, {ps[k].id, a})) *
                       dense(embed(reg, {ps[k].id, b}));
    EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Embed, SparsityBound) {
  const auto reg = thirty();
  const Orbital o[] = {Orbital::computational(0, 0), Orbital::idle()};
  const auto local = local_projector(reg->particle(2), o);
  const auto nnz_local = static_cast<std::size_t>(
      (local.entries.array() != Complex(0.0)).count());
  EXPECT_LE(embed(reg, local).nonzeros(), nnz_local * 30 / 5);
}

TEST(Embed, UnknownParticle) {
  EXPECT_THROW(embed(thirty(), {{"nope"}, Matrix::Identity(2, 2)}),
               ValidationError);
}

TEST(Assemble, EmptyIsZero) {
  const auto reg = thirty();
  const auto op = assemble(reg, {}, true);
  EXPECT_EQ(op.nonzeros(), 0u);
  EXPECT_EQ(op.dimension(), 30u);
}

TEST(Assemble, ProjectorSpectrumIsZeroOrEpsilon) {
  const auto reg = thirty();
  const double eps = 2.5;
  const Orbital o[] = {Orbital::computational(0, 1), Orbital::idle()};
  OperatorTerm t{eps, {local_projector(reg->particle(2), o)}};
  const auto ev = dense_eigenvalues(dense(assemble(reg, {&t, 1}, true)));
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    EXPECT_TRUE(std::abs(ev(i)) < 1e-12 || std::abs(ev(i) - eps) < 1e-12)
        << ev(i);
  }
}

TEST(Assemble, RankOneTermSpectrum) {
  // v v^dagger with v = |0_0> - |0_1>: eigenvalues 0 and 2 on the block.
  const auto reg = build_register({{{"q"}, 2, false}});
  const auto& p = reg->particle(0);
  Vector v = Vector::Zero(4);
  v(p.index_of(Orbital::computational(0, 0))) = 1.0;
  v(p.index_of(Orbital::computational(1, 0))) = -1.0;
  OperatorTerm t{1.0, {{p.id, v * v.adjoint()}}};
  const auto ev = dense_eigenvalues(dense(assemble(reg, {&t, 1}, true)));
  // Dense 2x2 oracle on the active block.
  Eigen::Matrix2d block;
  block << 1, -1, -1, 1;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(block);
  EXPECT_NEAR(ev(3), es.eigenvalues()(1), 1e-14);
  EXPECT_NEAR(ev(3), 2.0, 1e-14);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(ev(i), 0.0, 1e-14);
}

TEST(Assemble, HermitizeAddsAdjointOnce) {
  const auto reg = thirty();
  const auto a = local_transition(reg->particle(2),
                                  Orbital::computational(1, 1),
                                  Orbital::computational(0, 0));
  OperatorTerm t{Complex(0.0, 1.0), {a}};
  const auto op = assemble(reg, {&t, 1}, true);
  EXPECT_EQ(op.hermiticity_defect(), 0.0);
  const Matrix e = dense(embed(reg, a));
  const Matrix expected = kI * e + (kI * e).adjoint();
  EXPECT_EQ((dense(op) - expected).norm(), 0.0);
}

TEST(Assemble, AssembledOperatorsAreExactlyHermitian) {
  std::mt19937_64 rng(9);
  const auto reg = thirty();
  std::vector<OperatorTerm> terms;
  for (int k = 0; k < 4; ++k) {
    terms.push_back({1.0,
                     {{{"Q2"}, random_matrix(3, rng)},
                      {{"Q1"}, random_matrix(5, rng)}}});
  }
  EXPECT_EQ(assemble(reg, terms, true).hermiticity_defect(), 0.0);
}

TEST(Assemble, DuplicateParticleInOneTerm) {
  const auto reg = thirty();
  OperatorTerm t{1.0,
                 {{{"Q2"}, Matrix::Identity(3, 3)},
                  {{"Q2"}, Matrix::Identity(3, 3)}}};
  EXPECT_THROW(assemble(reg, {&t, 1}, true), ValidationError);
}

TEST(Occupation, BasisStateIsIndicator) {
  const auto reg = thirty();
  const auto s = StateVector::basis(reg, 17);
  const auto digits = reg->digits(17);
  for (std::size_t k = 0; k < 3; ++k) {
    const auto d = occupation_distribution(s, reg->particle(k).id);
    for (std::size_t o = 0; o < d.size(); ++o) {
      EXPECT_EQ(d[o], static_cast<int>(o) == digits[k] ? 1.0 : 0.0);
    }
  }
}

TEST(Occupation, BellPairIsUniform) {
  const auto reg = build_register({{{"a"}, 1, false}, {{"b"}, 1, false}});
  Vector v = Vector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  const StateVector s(reg, v);
  for (const char* id : {"a", "b"}) {
    const auto d = occupation_distribution(s, {id});
    EXPECT_NEAR(d[0], 0.5, 1e-15);
    EXPECT_NEAR(d[1], 0.5, 1e-15);
  }
}

TEST(Occupation, SumsToOneForRandomStates) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  const auto reg = thirty();
  Vector v(30);
  for (int i = 0; i < 30; ++i) v(i) = Complex(g(rng), g(rng));
  const auto s = StateVector(reg, v).normalized();
  for (std::size_t k = 0; k < 3; ++k) {
    const auto d = occupation_distribution(s, reg->particle(k).id);
    double total = 0.0;
    for (double x : d) {
      EXPECT_GE(x, 0.0);
      total += x;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(Occupation, RejectsUnnormalizedState) {
  const auto reg = thirty();
  const StateVector s(reg, Vector::Constant(30, 1.0));
  EXPECT_THROW(occupation_distribution(s, {"Q1"}), ValidationError);
}

TEST(StateVector, NormalizeAndInner) {
  const auto reg = thirty();
  EXPECT_THROW(StateVector::zero(reg).normalized(), ValidationError);
  const auto a = StateVector::basis(reg, 3);
  const auto b = StateVector::basis(reg, 4);
  EXPECT_EQ(a.inner(b), Complex(0.0));
  EXPECT_EQ(a.inner(a), Complex(1.0));
  EXPECT_THROW(StateVector(reg, Vector::Zero(5)), ValidationError);
}

}  // namespace
}  // namespace gsqc

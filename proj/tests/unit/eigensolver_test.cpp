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

#include "gsqc/eigensolver.hpp"
#include "oracles.hpp"

namespace gsqc {
namespace {

CsrMatrix sparse_of(const Matrix& m) { return m.sparseView(); }

TEST(Lanczos, DiagonalMatrix) {
  Matrix d = Matrix::Zero(3, 3);
  d(1, 1) = 1.0;
  d(2, 2) = 2.0;
  const auto r = lowest_eigenpairs(sparse_of(d), 3);
  ASSERT_EQ(r.values.size(), 3u);
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(r.values[static_cast<std::size_t>(k)], k, 1e-12);
    EXPECT_NEAR(std::abs(r.vectors[static_cast<std::size_t>(k)](k)), 1.0,
                1e-10);
  }
}

TEST(Lanczos, MatchesDenseDiagonalization) {
  std::mt19937_64 rng(41);
  for (int n : {10, 60, 200}) {
    const Matrix h = testing::random_hermitian(n, rng);
    const auto ref = testing::dense_eigenvalues(h);
    LanczosOptions o;
    o.tolerance = 1e-10;
    o.basis_size = std::min(n, 48);
    const auto r = lowest_eigenpairs(sparse_of(h), 4, o);
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_NEAR(r.values[k], ref(static_cast<Eigen::Index>(k)), 1e-9);
      EXPECT_LE(r.residuals[k], 1e-10);
      EXPECT_LE((h * r.vectors[k] - r.values[k] * r.vectors[k]).norm(),
                1e-10);
      EXPECT_NEAR(r.vectors[k].norm(), 1.0, 1e-12);
    }
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = a + 1; b < 4; ++b) {
        EXPECT_LE(std::abs(r.vectors[a].dot(r.vectors[b])), 1e-9);
      }
    }
  }
}

TEST(Lanczos, DegenerateLevelsComeOutSeparately) {
  // diag(0, 1, 1, 1, 2, ...) rotated by a random unitary.
  std::mt19937_64 rng(42);
  const int n = 40;
  Matrix d = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = (i == 0) ? 0.0 : (i < 4 ? 1.0 : i);
  const Matrix u = testing::haar_unitary(n, rng);
  const Matrix h = u * d * u.adjoint();
  const auto r = lowest_eigenpairs(sparse_of(h), 4);
  EXPECT_NEAR(r.values[0], 0.0, 1e-9);
  for (std::size_t k = 1; k < 4; ++k) EXPECT_NEAR(r.values[k], 1.0, 1e-9);
  Matrix v(n, 3);
  for (int k = 0; k < 3; ++k) v.col(k) = r.vectors[static_cast<std::size_t>(k + 1)];
  const Eigen::VectorXd s = Eigen::JacobiSVD<Matrix>(v).singularValues();
  EXPECT_NEAR(s(2), 1.0, 1e-8);
}

TEST(Lanczos, MatrixFreeAndSeeded) {
  std::mt19937_64 rng(43);
  const Matrix h = testing::random_hermitian(80, rng);
  LinearMap apply = [&](const Vector& x, Vector& y) { y = h * x; };
  const auto a = lowest_eigenpairs(apply, 80, 2);
  const auto b = lowest_eigenpairs(apply, 80, 2);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.matvecs, b.matvecs);
  EXPECT_GT(a.matvecs, 0);
}

TEST(Lanczos, BudgetExhaustionThrows) {
  std::mt19937_64 rng(44);
  const Matrix h = testing::random_hermitian(300, rng);
  LanczosOptions o;
  o.max_matvecs = 20;
  o.basis_size = 10;
  o.keep = 3;
  o.tolerance = 1e-14;
  try {
    lowest_eigenpairs(sparse_of(h), 1, o);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.best_residual(), 0.0);
  }
}

TEST(Lanczos, InvalidArguments) {
  const CsrMatrix h = sparse_of(Matrix::Identity(3, 3));
  EXPECT_THROW(lowest_eigenpairs(h, 4), ValidationError);
  EXPECT_THROW(lowest_eigenpairs(h, 0), ValidationError);
}

}  // namespace
}  // namespace gsqc

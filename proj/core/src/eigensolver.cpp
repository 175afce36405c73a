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

#include "gsqc/eigensolver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace gsqc {
namespace {

// Two passes of classical Gram-Schmidt against `locked` and `basis`;
// returns the coefficients against `basis`.
Vector orthogonalize(Vector& w, const std::vector<Vector>& locked,
                     const std::vector<Vector>& basis, std::size_t count) {
  Vector h = Vector::Zero(static_cast<Eigen::Index>(count));
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& u : locked) w -= u.dot(w) * u;
    for (std::size_t i = 0; i < count; ++i) {
      const Complex c = basis[i].dot(w);
      h(static_cast<Eigen::Index>(i)) += c;
      w -= c * basis[i];
    }
  }
  return h;
}

Vector random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v(i) = Complex(normal(rng), normal(rng));
  }
  return v;
}

// Fresh unit vector orthogonal to everything so far, or an empty vector if
// the complement is numerically empty.
Vector fresh_direction(std::size_t n, std::mt19937_64& rng,
                       const std::vector<Vector>& locked,
                       const std::vector<Vector>& basis) {
  for (int attempt = 0; attempt < 4; ++attempt) {
    Vector v = random_vector(n, rng);
    const double before = v.norm();
    orthogonalize(v, locked, basis, basis.size());
    const double after = v.norm();
    if (after > 1e-8 * before) return v / after;
  }
  return {};
}

}  // namespace

Eigenpairs lowest_eigenpairs(const LinearMap& apply, std::size_t n, int count,
                             const LanczosOptions& options) {
  if (count < 1) throw ValidationError("lowest_eigenpairs: count must be >= 1");
  if (static_cast<std::size_t>(count) > n) {
    throw ValidationError("lowest_eigenpairs: count exceeds dimension");
  }
  std::mt19937_64 rng(options.seed);
  Eigenpairs out;
  std::vector<Vector> locked;
  Vector w(static_cast<Eigen::Index>(n));
  Vector ax(static_cast<Eigen::Index>(n));

  for (int target = 0; target < count; ++target) {
    const std::size_t avail = n - locked.size();
    const int m = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(options.basis_size),
                              avail));
    const int keep = std::max(1, std::min(options.keep, m - 1));
    std::vector<Vector> basis;
    basis.push_back(fresh_direction(n, rng, locked, basis));
    Matrix t = Matrix::Zero(m, m);
    int j0 = 0;
    int used = 0;
    double best = std::numeric_limits<double>::infinity();
    bool done = false;

    while (!done) {
      // Extend the Krylov basis to m vectors; basis[m] holds the residual
      // direction when the cycle completes without breakdown.
      int size = m;
      double beta = 0.0;
      for (int j = j0; j < m; ++j) {
        apply(basis[static_cast<std::size_t>(j)], w);
        ++used;
        const Vector h =
            orthogonalize(w, locked, basis, static_cast<std::size_t>(j + 1));
        for (int i = 0; i <= j; ++i) {
          t(i, j) = h(i);
          t(j, i) = std::conj(h(i));
        }
        t(j, j) = t(j, j).real();
        beta = w.norm();
        const double scale = std::max(1.0, t.topLeftCorner(j + 1, j + 1)
                                               .cwiseAbs()
                                               .maxCoeff());
        if (beta <= 1e-12 * scale) {
          // Invariant subspace found. Continue with a fresh direction if
          // there is room, otherwise the Ritz values are exact.
          beta = 0.0;
          if (j + 1 == m) {
            size = m;
            basis.resize(static_cast<std::size_t>(m));
            break;
          }
          auto v = fresh_direction(n, rng, locked, basis);
          if (v.size() == 0) {
            size = j + 1;
            basis.resize(static_cast<std::size_t>(size));
            break;
          }
          basis.push_back(std::move(v));
          continue;
        }
        basis.push_back(w / beta);
      }

      Eigen::SelfAdjointEigenSolver<Matrix> es(t.topLeftCorner(size, size));
      const auto& y = es.eigenvectors();
      const double estimate = beta * std::abs(y(size - 1, 0));
      best = std::min(best, estimate);

      const bool exhausted = beta == 0.0;
      if (estimate <= options.tolerance || exhausted) {
        Vector x = Vector::Zero(static_cast<Eigen::Index>(n));
        for (int i = 0; i < size; ++i) {
          x += y(i, 0) * basis[static_cast<std::size_t>(i)];
        }
        for (int pass = 0; pass < 2; ++pass) {
          for (const auto& u : locked) x -= u.dot(x) * u;
        }
        x.normalize();
        apply(x, ax);
        ++used;
        const double theta = x.dot(ax).real();
        const double residual = (ax - theta * x).norm();
        best = std::min(best, residual);
        if (residual <= options.tolerance) {
          out.values.push_back(theta);
          out.vectors.push_back(x);
          out.residuals.push_back(residual);
          locked.push_back(std::move(x));
          done = true;
          break;
        }
      }
      if (used >= options.max_matvecs) {
        throw ConvergenceError(
            "Lanczos did not converge for eigenpair " + std::to_string(target) +
                " within " + std::to_string(options.max_matvecs) + " matvecs",
            best);
      }

      // Thick restart: keep the lowest Ritz vectors plus the residual
      // direction; the arrow couplings are recomputed by the next matvec.
      const int kept = std::min(keep, size);
      std::vector<Vector> next;
      next.reserve(static_cast<std::size_t>(m + 1));
      for (int c = 0; c < kept; ++c) {
        Vector v = Vector::Zero(static_cast<Eigen::Index>(n));
        for (int i = 0; i < size; ++i) {
          v += y(i, c) * basis[static_cast<std::size_t>(i)];
        }
        next.push_back(std::move(v));
      }
      Vector tail = exhausted ? Vector()
                              : basis[static_cast<std::size_t>(size)];
      basis = std::move(next);
      if (tail.size() == 0) {
        tail = fresh_direction(n, rng, locked, basis);
      } else {
        orthogonalize(tail, locked, basis, basis.size());
        tail.normalize();
      }
      if (tail.size() == 0) {
        throw ConvergenceError("Lanczos restart lost its search direction",
                               best);
      }
      basis.push_back(std::move(tail));
      t.setZero();
      for (int c = 0; c < kept; ++c) t(c, c) = es.eigenvalues()(c);
      j0 = kept;
    }
    out.matvecs += used;
  }

  std::vector<std::size_t> order(out.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return out.values[a] < out.values[b];
  });
  Eigenpairs sorted;
  sorted.matvecs = out.matvecs;
  for (auto i : order) {
    sorted.values.push_back(out.values[i]);
    sorted.vectors.push_back(std::move(out.vectors[i]));
    sorted.residuals.push_back(out.residuals[i]);
  }
  return sorted;
}

Eigenpairs lowest_eigenpairs(const CsrMatrix& matrix, int count,
                             const LanczosOptions& options) {
  return lowest_eigenpairs(
      [&matrix](const Vector& x, Vector& y) { y.noalias() = matrix * x; },
      static_cast<std::size_t>(matrix.rows()), count, options);
}

}  // namespace gsqc

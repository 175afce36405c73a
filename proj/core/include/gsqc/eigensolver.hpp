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
#include <functional>
#include <vector>

#include "gsqc/common.hpp"

namespace gsqc {

/// y = A x for a Hermitian operator; y is sized by the caller.
using LinearMap = std::function<void(const Vector& x, Vector& y)>;

struct LanczosOptions {
  /// Absolute residual ||A v - theta v|| accepted per eigenpair.
  double tolerance = 1e-9;
  /// Krylov basis size per restart cycle.
  int basis_size = 48;
  /// Ritz vectors kept across a restart.
  int keep = 12;
  /// Matvec budget per eigenpair.
  int max_matvecs = 20000;
  std::uint64_t seed = 0x5eed;
};

struct Eigenpairs {
  std::vector<double> values;  // ascending
  std::vector<Vector> vectors;
  std::vector<double> residuals;
  int matvecs = 0;
};

/// Lowest `count` eigenpairs of a Hermitian operator by thick-restart Lanczos
/// with full reorthogonalization, one pair at a time; converged pairs are
/// locked and deflated, so degenerate levels come out one vector each.
///
/// Throws ConvergenceError carrying the best residual when the budget runs
/// out.
Eigenpairs lowest_eigenpairs(const LinearMap& apply, std::size_t dimension,
                             int count, const LanczosOptions& options = {});

Eigenpairs lowest_eigenpairs(const CsrMatrix& matrix, int count,
                             const LanczosOptions& options = {});

}  // namespace gsqc

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
#include <ostream>
#include <string>
#include <vector>

#include "gsqc/compile.hpp"
#include "gsqc/eigensolver.hpp"
#include "gsqc/hamiltonian.hpp"
#include "gsqc/operator.hpp"

namespace gsqc {

struct SpectralOptions {
  /// Energy unit; tolerances and thresholds below are multiples of it.
  double epsilon = 1.0;
  /// Residual tolerance in units of epsilon.
  double tolerance = 1e-9;
  /// Eigenvalues at or below this (units of epsilon) count as zero modes.
  double zero_threshold = 1e-8;
  /// Stop looking for a nonzero level after this many zero modes.
  int max_zero_modes = 8;
  std::uint64_t seed = 0x5eed;
  int basis_size = 48;
  int max_matvecs = 20000;
};

struct SpectrumResult {
  double e0 = 0.0;
  double e1 = 0.0;
  StateVector ground;
  StateVector excited;
  double ground_residual = 0.0;
  double excited_residual = 0.0;
  /// Eigenvalues at or below the zero threshold.
  int near_zero_count = 0;
  int matvecs = 0;
  /// Every eigenvalue computed along the way, ascending.
  std::vector<double> levels;
};

/// E0 and the gap E1: the lowest eigenvalue above the zero threshold. When
/// several zero modes exist they are counted and skipped.
SpectrumResult ground_and_gap(const SparseOperator& h,
                              const SpectralOptions& options = {});

/// Lowest `count` levels with vectors (thin wrapper over the Lanczos solver
/// with tolerances scaled by options.epsilon).
Eigenpairs lowest_levels(const SparseOperator& h, int count,
                         const SpectralOptions& options = {});

/// (sqrt(1 + L^2) - L)^2 / (1 + L^2) = exp(-2 asinh L) / (1 + L^2).
double gap_bound(double lambda);
/// Error probability 6 / (8 + L^2) of a single teleported gate.
double error_probability(double lambda);
/// (p / 12)^2, the weak form of the gap bound.
double weak_gap_bound(double lambda);

struct GapSweepRow {
  double lambda = 0.0;
  double e0 = 0.0;
  double e1 = 0.0;
  double bound = 0.0;
  double p = 0.0;
  double ratio = 0.0;  // E1(L) / E1(0)
  double residual = 0.0;
  int near_zero_count = 0;
  bool ok = true;
  std::string error;
};

struct GapSweep {
  std::vector<GapSweepRow> rows;
  double e_zero = 0.0;  // E1 at L = 0

  /// Rows where ratio >= bound - 1e-12 fails (solver failures excluded).
  std::vector<std::size_t> bound_violations() const;
  std::vector<std::size_t> weak_bound_violations() const;
  /// Columns lambda,E0,E1,bound,p,ratio,residual,near_zero_count; %.17g.
  void write_csv(std::ostream& os) const;
};

/// Ascending grid with `points` values from 0 to `lambda_max`.
std::vector<double> linear_grid(double lambda_max, int points);

/// Solves every grid point (threads: 0 = GSQC_THREADS or hardware). Solver
/// failures are recorded on their row; the sweep continues.
GapSweep gap_sweep(const HamiltonianSpec& spec,
                   const std::vector<double>& lambdas,
                   const SpectralOptions& options = {}, int threads = 0);

struct HellmanFeynmanReport {
  int level = 0;
  double lambda = 0.0;
  double energy = 0.0;
  double finite_difference = 0.0;
  double analytic = 0.0;
  double relative_discrepancy = 0.0;
  double spacing = 0.0;  // distance to the nearest other level
};

/// Compares the Richardson-refined central difference of E_level(L), step
/// h = 1e-4, with <Psi|dH/dL|Psi>. Throws DegeneracyError if the level is
/// within 1e-6 epsilon of a neighbour.
HellmanFeynmanReport hellman_feynman_check(const HamiltonianSpec& spec,
                                           double lambda, int level,
                                           const SpectralOptions& options = {});

struct CurvatureReport {
  double value = 0.0;  // <Psi0|d2H/dL2|Psi0>
  double bound = 0.0;  // 2 N epsilon / (1 + L^2)
  bool satisfied = true;
};

CurvatureReport curvature_bound_check(const HamiltonianSpec& spec,
                                      double lambda, int gate_count,
                                      const SpectralOptions& options = {});

struct ThresholdEstimate {
  std::uint64_t gate_count = 0;
  std::uint64_t fault_pairs = 0;
  std::uint64_t pairs = 0;  // C(gate_count, fault_pairs)
  double estimate = 0.0;    // 1 / pairs
  double published_rounded = 1e-3;  // commonly quoted rounded value
};

ThresholdEstimate pseudo_threshold_estimate(std::uint64_t gate_count = 52,
                                            std::uint64_t fault_pairs = 2);

/// Worker count: `requested` if positive, else GSQC_THREADS, else hardware.
int resolve_threads(int requested);

}  // namespace gsqc

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

#include <functional>
#include <nlohmann/json.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gsqc/common.hpp"
#include "gsqc/hamiltonian.hpp"
#include "gsqc/operator.hpp"
#include "gsqc/spectral.hpp"

namespace gsqc {

enum class ScheduleKind { Linear, PiecewiseLinear, Staggered };

/// Lambda(t) ramp from 0 at t = 0 to lambda_max at t = total_time (units of
/// hbar / epsilon).
struct Schedule {
  ScheduleKind kind = ScheduleKind::Linear;
  double lambda_max = 4.0;
  double total_time = 1.0;
  /// Piecewise-linear only: (t / T, Lambda / lambda_max) breakpoints from
  /// (0, 0) to (1, 1), nondecreasing in both coordinates.
  std::vector<std::pair<double, double>> knots;
  /// Staggered only: per-gate start as a fraction of T in [0, 1). Gate g's
  /// links stay at 0 until offsets[g] * T, then ramp linearly to lambda_max
  /// at T. Links without a gate (projections) start at 0.
  std::vector<double> offsets;

  static Schedule linear(double lambda_max, double total_time);
  static Schedule frozen(double total_time);

  /// Throws ValidationError when the ramp is not monotone or misses its
  /// endpoints.
  void validate() const;
  /// Global ramp value (for staggered schedules: the unstaggered ramp).
  double lambda_at(double t) const;
  /// One value per link of `spec`.
  std::vector<double> link_lambdas(const HamiltonianSpec& spec,
                                   double t) const;
};

Schedule schedule_from_json(const nlohmann::json& j);
nlohmann::json schedule_to_json(const Schedule& s);

struct EvolveOptions {
  /// Accepted local step error (norm of the step-doubling estimate).
  double step_tolerance = 1e-9;
  /// Allowed |norm - 1| before the run aborts.
  double norm_tolerance = 1e-8;
  /// Fidelity sample points including both endpoints (>= 2).
  int samples = 101;
  /// Record the energy and diabatic estimate at each sample.
  bool track_energy = true;
  /// Levels searched for the lowest one coupled to the ground state by the
  /// ramp (the scale of the diabatic estimate).
  int coupled_levels = 6;
  /// Largest Krylov subspace per exponential.
  int krylov_dimension = 40;
  double initial_step = 0.05;
  SpectralOptions spectral;
};

struct TraceSample {
  double t = 0.0;
  double lambda = 0.0;
  double fidelity = 0.0;
  double energy = 0.0;
  double norm = 1.0;
  /// Instantaneous gap E1(t), 0 when not tracked.
  double gap = 0.0;
  /// Lowest level with a nonzero matrix element of dH/dL to the ground
  /// state; the ramp cannot excite levels below it.
  double coupled_gap = 0.0;
  /// (1 - fidelity) * coupled_gap.
  double diabatic_estimate = 0.0;
};

struct EvolutionTrace {
  std::vector<TraceSample> samples;
  Vector final_state;
  double final_infidelity = 0.0;
  double max_norm_drift = 0.0;
  int steps = 0;
  int rejected_steps = 0;
  long matvecs = 0;

  /// Columns t,lambda,fidelity,energy,norm; %.17g.
  void write_csv(std::ostream& os) const;
};

/// Starts in the ground state at Lambda = 0 and integrates i d/dt psi = H psi
/// with a fourth-order commutator-free Magnus step, Krylov exponentials and
/// step-doubling error control. A zero total time is an instant quench.
EvolutionTrace evolve(const HamiltonianSpec& spec, const Schedule& schedule,
                      const EvolveOptions& options = {});

/// Same, from a given initial state.
EvolutionTrace evolve_from(const HamiltonianSpec& spec,
                           const Schedule& schedule, const Vector& initial,
                           const EvolveOptions& options = {});

/// hbar (L / sqrt(1 + L^2)) sqrt(N epsilon / E^3) with hbar = 1.
double sufficient_time(int gate_count, double lambda_max, double energy,
                       double epsilon = 1.0);

struct SufficientTime {
  double measured_gap = 0.0;
  double bound_gap = 0.0;  // gap_bound(L) * E1(0)
  double from_measured = 0.0;
  double from_bound = 0.0;
  /// from_measured when the gap could be computed, else from_bound.
  double value = 0.0;
};

/// Both modes of the sufficient time for a compiled system.
SufficientTime sufficient_time_for(const HamiltonianSpec& spec,
                                   int gate_count, double lambda_max,
                                   const SpectralOptions& options = {});

struct ConcurrencyRow {
  int gates = 0;
  std::size_t dimension = 0;
  double t_star = 0.0;
  double t_min = 0.0;
  double infidelity = 0.0;
  int iterations = 0;  // evolutions run during bracketing and bisection
};

struct ConcurrencyTable {
  std::vector<ConcurrencyRow> rows;
  /// Least-squares slope of log T_min against log N and its standard error;
  /// NaN when fewer than two positive T_min values exist.
  double exponent = 0.0;
  double exponent_stderr = 0.0;

  /// Columns N,T_min,iterations,T_star,infidelity; %.17g.
  void write_csv(std::ostream& os) const;
};

struct ConcurrencyOptions {
  double lambda_max = 4.0;
  double target_infidelity = 1e-3;
  /// The search stops when (hi - lo) <= relative_tolerance * hi.
  double relative_tolerance = 0.05;
  int max_doublings = 16;
  std::uint64_t seed = 7;
  int threads = 0;
  double epsilon = 1.0;
  /// A 1e-3 target needs far less than the default per-step accuracy.
  EvolveOptions evolve = coarse_evolve_options();

  static EvolveOptions coarse_evolve_options() {
    EvolveOptions o;
    o.step_tolerance = 1e-7;
    return o;
  }
};

/// Single-line teleported chains of N seeded random gates. For each N,
/// the smallest linear ramp time reaching the target infidelity.
ConcurrencyTable concurrency_experiment(const std::vector<int>& gate_counts,
                                        const ConcurrencyOptions& options = {});

/// Smallest linear ramp time reaching `target` for one system.
ConcurrencyRow minimum_ramp_time(const HamiltonianSpec& spec, int gate_count,
                                 const ConcurrencyOptions& options);

struct PerturbationLevel {
  int level = 0;  // 1 = first excited state
  double energy = 0.0;
  Complex matrix_element;  // <Psi_k|V|Psi_0>
  Complex coefficient;     // first-order c_k(t)
};

struct PerturbationResponse {
  double ground_energy = 0.0;
  std::vector<PerturbationLevel> levels;
  std::vector<Vector> states;  // ground first, then each level
};

/// First-order amplitudes for H(L) + V cos(w t) starting in the ground
/// state, for the lowest `levels` excited states. Energies are measured from
/// the ground level. Throws ResonanceError when w lies within 1e-6 of an
/// excitation energy.
PerturbationResponse perturbation_response(const HamiltonianSpec& spec,
                                           double lambda,
                                           const SparseOperator& v,
                                           double omega, double t,
                                           int levels = 4,
                                           const SpectralOptions& options = {});

/// The two-term first-order amplitude for one level.
Complex first_order_coefficient(Complex matrix_element, double energy,
                                double omega, double t);

/// Integrates i d/dt psi = (H(L) + V cos(w t)) psi from `initial` to time t.
Vector driven_evolution(const HamiltonianSpec& spec, double lambda,
                        const SparseOperator& v, double omega, double t,
                        const Vector& initial,
                        const EvolveOptions& options = {});

/// 2 pi |m|^2 rho with hbar = 1.
double golden_rule_rate(Complex matrix_element, double density);

struct GoldenRuleResult {
  int level = 0;
  double energy = 0.0;
  Complex matrix_element;
  double rate = 0.0;
};

/// Rate into the level nearest w among the lowest `levels` excitations.
/// Throws ValidationError when no level lies within `window` of w.
GoldenRuleResult golden_rule_rate(const HamiltonianSpec& spec, double lambda,
                                  const SparseOperator& v, double omega,
                                  double density, double window,
                                  int levels = 6,
                                  const SpectralOptions& options = {});

}  // namespace gsqc

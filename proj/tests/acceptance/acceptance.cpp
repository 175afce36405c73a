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

// End-to-end acceptance checks. Each check prints one PASS/FAIL line with
// the measured quantity and its pinned tolerance; the exit code is nonzero
// when any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gsqc/adiabatic.hpp"
#include "gsqc/codes.hpp"
#include "gsqc/history_state.hpp"
#include "gsqc/spectral.hpp"
#include "oracles.hpp"

namespace gsqc {
namespace {

// Pinned tolerances (energies in units of epsilon).
constexpr double kZeroEnergyTol = 1e-9;
constexpr double kResidualTol = 1e-10;
constexpr double kOverlapTol = 1e-9;
constexpr double kGapZeroTol = 1e-9;
constexpr double kSlopeTarget = -2.0;
constexpr double kSlopeTol = 0.2;
constexpr double kOccupationTol = 1e-12;
constexpr double kErrorProbabilityTol = 1e-12;
constexpr double kBoundSlack = 1e-12;
constexpr double kHellmanFeynmanTol = 1e-6;
constexpr double kGroverTol = 1e-9;
constexpr double kAdiabaticInfidelity = 1e-3;
constexpr double kQuenchTol = 1e-8;
constexpr double kSqrtRatioTol = 1e-12;
constexpr double kAmplifiedOverlapTol = 1e-9;
constexpr double kRatioDefectTol = 1e-10;
constexpr double kNoErrorWeightTol = 1e-9;
constexpr double kPerturbationRelTol = 0.05;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Solver settings for states compared at the 1e-12 level.
SpectralOptions tight() {
  SpectralOptions o;
  o.tolerance = 1e-14;
  o.max_matvecs = 200000;
  return o;
}

Matrix haar(int n, std::mt19937_64& rng) { return testing::haar_unitary(n, rng); }

CompiledCircuit teleport_chain(int n, std::mt19937_64& rng) {
  CircuitSpec c;
  for (int s = 1; s <= n; ++s) c.gates.push_back({haar(2, rng), {0}, s, "U"});
  return compile(c);
}

CircuitSpec single_cphase() {
  CircuitSpec c;
  c.lines = 2;
  c.gates.push_back({gates::cphase(), {0, 1}, 1, "CPHASE"});
  return c;
}

// Random circuit of one family: 0 chain/1 line, 1 chain/2 lines,
// 2 teleport/1 line, 3 teleport/2 lines.
CircuitSpec random_circuit(int family, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  CircuitSpec c;
  c.mode = family < 2 ? CircuitMode::Chain : CircuitMode::Teleport;
  c.lines = family % 2 == 0 ? 1 : 2;
  if (family == 0) {
    const int n = std::uniform_int_distribution<int>(1, 6)(rng);
    for (int s = 1; s <= n; ++s) c.gates.push_back({haar(2, rng), {0}, s, "U"});
  } else if (family == 1) {
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int s = 1; s <= n; ++s) {
      if (coin(rng)) {
        c.gates.push_back({haar(4, rng), {coin(rng), 0}, s, "V"});
        auto& t = c.gates.back().targets;
        t[1] = 1 - t[0];
      } else {
        c.gates.push_back({haar(2, rng), {coin(rng)}, s, "U"});
      }
    }
  } else if (family == 2) {
    const int n = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int s = 1; s <= n; ++s) c.gates.push_back({haar(2, rng), {0}, s, "U"});
  } else {
    const int first = coin(rng);
    c.gates.push_back({haar(4, rng), {first, 1 - first}, 1, "V"});
    if (coin(rng)) c.gates.push_back({haar(2, rng), {coin(rng)}, 2, "U"});
  }
  return c;
}

Outcome zero_ground_energy() {
  std::mt19937_64 rng(1001);
  const double lambdas[3] = {0.0, 1.0, 4.0};
  int count = 0;
  double worst = 0.0;
  std::size_t largest = 0;
  for (int k = 0; k < 24; ++k) {
    const auto c = random_circuit(k % 4, rng);
    const auto compiled = compile(c);
    const double lambda = lambdas[(k / 4) % 3];
    const auto r = ground_and_gap(compiled.spec.evaluate(lambda));
    worst = std::max(worst, std::abs(r.e0));
    largest = std::max(largest, compiled.reg->dimension());
    ++count;
  }
  return {worst <= kZeroEnergyTol && count >= 20,
          std::to_string(count) + " circuits, max |E0| = " + fmt(worst) +
              " (tol " + fmt(kZeroEnergyTol) + "), largest dimension " +
              std::to_string(largest)};
}

Outcome history_state_oracle() {
  struct Case {
    CompiledCircuit compiled;
    double lambda;
  };
  std::mt19937_64 rng(1002);
  std::vector<Case> cases;
  for (double l : {0.0, 1.0, 4.0}) {
    cases.push_back({teleport_chain(1, rng), l});
    cases.push_back({teleport_chain(2, rng), l});
    cases.push_back({compile(single_cphase()), l});
    cases.push_back({compile(random_circuit(3, rng)), l});
    cases.push_back({compile(amplification_circuit(0.9)), l});
  }
  for (int k = 0; k < 3; ++k) {
    cases.push_back({compile(random_circuit(0, rng)), 0.0});
    cases.push_back({compile(random_circuit(1, rng)), 0.0});
  }
  double worst_residual = 0.0, worst_overlap = 0.0;
  bool unique = true;
  for (const auto& [compiled, lambda] : cases) {
    const bool chain = compiled.circuit.mode == CircuitMode::Chain;
    const auto psi = chain ? chain_history_state(compiled)
                           : teleport_history_state(compiled, lambda);
    Vector h_psi(psi.amplitudes().size());
    compiled.spec.apply(lambda, psi.amplitudes(), h_psi);
    worst_residual = std::max(worst_residual, h_psi.norm());
    const auto r = ground_and_gap(compiled.spec.evaluate(lambda));
    unique = unique && r.near_zero_count == 1;
    worst_overlap =
        std::max(worst_overlap, 1.0 - std::norm(psi.inner(r.ground)));
  }
  return {worst_residual <= kResidualTol && worst_overlap <= kOverlapTol &&
              unique,
          std::to_string(cases.size()) + " systems, max residual " +
              fmt(worst_residual) + " (tol " + fmt(kResidualTol) +
              "), max 1 - overlap " + fmt(worst_overlap) + " (tol " +
              fmt(kOverlapTol) + ")" + (unique ? "" : ", degenerate ground")};
}

Outcome gap_at_zero() {
  const double expected = (3.0 - std::sqrt(5.0)) / 2.0;
  std::mt19937_64 rng(1003);
  double worst = 0.0, dense_worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const auto compiled = teleport_chain(1, rng);
    const auto h = compiled.spec.evaluate(0.0);
    const auto r = ground_and_gap(h);
    worst = std::max(worst, std::abs(r.e1 - expected));
    const double dense_gap =
        testing::dense_gap(testing::dense_eigenvalues(testing::dense(h)));
    dense_worst = std::max(dense_worst, std::abs(dense_gap - expected));
  }
  return {worst <= kGapZeroTol && dense_worst <= kGapZeroTol,
          "max |E1 - (3 - sqrt5)/2| = " + fmt(worst) + " (dense oracle " +
              fmt(dense_worst) + ", tol " + fmt(kGapZeroTol) + ")"};
}

Outcome chain_gap_scaling() {
  std::mt19937_64 rng(1004);
  std::vector<double> x, y;
  for (int n = 2; n <= 40; ++n) {
    std::vector<Matrix> g;
    for (int k = 0; k < n; ++k) g.push_back(haar(2, rng));
    const auto sys = chain_hamiltonian(g);
    const auto r = ground_and_gap(sys.spec.evaluate(0.0));
    x.push_back(std::log(n + 1.0));
    y.push_back(std::log(r.e1));
  }
  const double slope = testing::fit_slope(x, y);
  return {std::abs(slope - kSlopeTarget) <= kSlopeTol,
          "slope of log gap vs log(N+1), N = 2..40: " + fmt(slope) +
              " (target " + fmt(kSlopeTarget) + " +/- " + fmt(kSlopeTol) + ")"};
}

Outcome chain_readout_occupation() {
  std::mt19937_64 rng(1005);
  double worst = 0.0;
  for (int n = 1; n <= 6; ++n) {
    CircuitSpec c;
    c.mode = CircuitMode::Chain;
    for (int s = 1; s <= n; ++s) c.gates.push_back({haar(2, rng), {0}, s, "U"});
    const auto compiled = compile(c);
    const auto r = ground_and_gap(compiled.spec.evaluate(0.0), tight());
    const auto readout = chain_readout(r.ground, compiled);
    worst = std::max(worst, std::abs(readout.p_final - 1.0 / (n + 1)));
    const auto occ = occupation_distribution(r.ground, {"L0"});
    const double final_stage = occ[2 * n] + occ[2 * n + 1];
    worst = std::max(worst, std::abs(final_stage - 1.0 / (n + 1)));
  }
  return {worst <= kOccupationTol,
          "N = 1..6, max |P(final) - 1/(N+1)| = " + fmt(worst) + " (tol " +
              fmt(kOccupationTol) + ")"};
}

Outcome error_probability_readout() {
  std::mt19937_64 rng(1006);
  const auto compiled = teleport_chain(1, rng);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double l = 0.25 * k;
    const auto r = ground_and_gap(compiled.spec.evaluate(l), tight());
    const auto report = readout(r.ground, compiled);
    worst = std::max(worst, std::abs(report.p_incorrect - 6.0 / (8.0 + l * l)));
  }
  return {worst <= kErrorProbabilityTol,
          "20 values of Lambda in [0, 4.75], max |p - 6/(8+L^2)| = " +
              fmt(worst) + " (tol " + fmt(kErrorProbabilityTol) + ")"};
}

Outcome gap_bound_sweep() {
  std::mt19937_64 rng(1007);
  struct Named {
    std::string name;
    CompiledCircuit compiled;
  };
  std::vector<Named> systems = {{"single gate", teleport_chain(1, rng)},
                                {"two chained gates", teleport_chain(2, rng)},
                                {"single CPHASE", compile(single_cphase())}};
  const auto grid = linear_grid(8.0, 33);
  bool pass = true;
  std::ostringstream detail;
  for (const auto& s : systems) {
    const auto sweep = gap_sweep(s.compiled.spec, grid);
    bool solved = sweep.rows.size() == grid.size();
    double min_margin = 1e300, min_weak = 1e300, min_footnote = 1e300;
    for (const auto& row : sweep.rows) {
      solved = solved && row.ok;
      const double bound = testing::gap_bound_reference(row.lambda);
      const double p = 6.0 / (8.0 + row.lambda * row.lambda);
      min_margin = std::min(min_margin, row.ratio - bound);
      min_weak = std::min(min_weak, row.ratio - (p / 12) * (p / 12));
      min_footnote = std::min(min_footnote, row.ratio / p);
    }
    const bool ok = solved && min_margin >= -kBoundSlack &&
                    min_weak >= -kBoundSlack &&
                    sweep.bound_violations().empty() &&
                    sweep.weak_bound_violations().empty();
    pass = pass && ok;
    detail << s.name << " (dim " << s.compiled.reg->dimension()
           << "): min(E/E0 - bound) " << fmt(min_margin)
           << ", min(E/E0 - (p/12)^2) " << fmt(min_weak)
           << ", min (E/E0)/p " << fmt(min_footnote) << " [reported]; ";
  }
  detail << "33 points on [0, 8]";
  return {pass, detail.str()};
}

Outcome hellman_feynman() {
  std::mt19937_64 rng(1008);
  std::uniform_real_distribution<double> lam(0.2, 6.0);
  double worst = 0.0;
  int draws = 0, skipped = 0;
  while (draws < 10) {
    const int n = 1 + draws % 2;
    const auto compiled = teleport_chain(n, rng);
    const double l = lam(rng);
    const int level = draws % 3;
    try {
      const auto r = hellman_feynman_check(compiled.spec, l, level);
      worst = std::max(worst, r.relative_discrepancy);
      ++draws;
    } catch (const DegeneracyError&) {
      ++skipped;
    }
  }
  bool curvature_ok = true;
  double worst_curvature = -1e300;
  struct Sys {
    CompiledCircuit compiled;
    int gates;
  };
  std::vector<Sys> systems = {{teleport_chain(1, rng), 1},
                              {teleport_chain(2, rng), 2},
                              {compile(single_cphase()), 1}};
  for (const auto& s : systems) {
    for (double l : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0}) {
      const auto c = curvature_bound_check(s.compiled.spec, l, s.gates);
      const double oracle = 2.0 * s.gates / (1.0 + l * l);
      curvature_ok = curvature_ok && c.satisfied && c.value <= oracle + 1e-12;
      worst_curvature = std::max(worst_curvature, c.value / oracle);
    }
  }
  return {worst <= kHellmanFeynmanTol && curvature_ok,
          "10 draws, max relative discrepancy " + fmt(worst) + " (tol " +
              fmt(kHellmanFeynmanTol) + ", " + std::to_string(skipped) +
              " degenerate draws redrawn); curvature max <d2H>/(2N/(1+L^2)) " +
              fmt(worst_curvature)};
}

Outcome grover() {
  double worst = 0.0;
  for (int m = 0; m < 4; ++m) {
    const auto compiled = compile(grover_circuit(m));
    const auto r = ground_and_gap(compiled.spec.evaluate(0.0), tight());
    const auto out = chain_readout(r.ground, compiled);
    const auto it = out.answer_distribution.find(bitstring(m, 2));
    const double p = it == out.answer_distribution.end() ? 0.0 : it->second;
    // Independent check of the circuit itself.
    const double ideal = std::norm(simulate(compiled.circuit)(m));
    worst = std::max({worst, 1.0 - p, 1.0 - ideal});
  }
  return {worst <= kGroverTol, "4 oracles, max 1 - P(marked | final) = " +
                                   fmt(worst) + " (tol " + fmt(kGroverTol) + ")"};
}

Outcome adiabatic() {
  std::mt19937_64 rng(1010);
  const auto compiled = teleport_chain(1, rng);
  const auto& spec = compiled.spec;
  const double lambda_max = 4.0;
  const double t_star = sufficient_time_for(spec, 1, lambda_max).value;
  std::ostringstream detail;
  bool pass = true;

  const auto slow = evolve(spec, Schedule::linear(lambda_max, 10.0 * t_star));
  pass = pass && slow.final_infidelity <= kAdiabaticInfidelity;
  detail << "T* = " << fmt(t_star) << ", infidelity at 10T* "
         << fmt(slow.final_infidelity) << " (tol " << fmt(kAdiabaticInfidelity)
         << ")";

  EvolveOptions quiet;
  quiet.track_energy = false;
  quiet.samples = 2;
  const double jitter[5] = {1.00, 1.05, 1.10, 1.15, 1.20};
  std::vector<double> averages;
  for (int k = 0; k <= 12; ++k) {
    const double t = t_star * std::pow(10.0, -1.0 + k / 6.0);
    double sum = 0.0;
    for (double j : jitter) {
      sum += evolve(spec, Schedule::linear(lambda_max, t * j), quiet)
                 .final_infidelity;
    }
    averages.push_back(sum / 5.0);
  }
  bool monotone = true;
  for (std::size_t k = 1; k < averages.size(); ++k) {
    monotone = monotone && averages[k] <= averages[k - 1];
  }
  pass = pass && monotone;
  detail << "; averaged infidelity over T*/10..10T* (13 points) "
         << (monotone ? "nonincreasing" : "NOT monotone") << " from "
         << fmt(averages.front()) << " to " << fmt(averages.back());

  const auto quench = evolve(spec, Schedule::linear(lambda_max, 0.0));
  // Dense diagonalization, independent of the Lanczos solver.
  const Vector g0 =
      testing::dense_spectrum(testing::dense(spec.evaluate(0.0))).vectors.col(0);
  const Vector g1 = testing::dense_spectrum(
                        testing::dense(spec.evaluate(lambda_max)))
                        .vectors.col(0);
  const double oracle = 1.0 - std::norm(g1.dot(g0));
  const double quench_defect = std::abs(quench.final_infidelity - oracle);
  pass = pass && quench_defect <= kQuenchTol;
  detail << "; quench infidelity " << fmt(quench.final_infidelity)
         << " vs overlap oracle, defect " << fmt(quench_defect) << " (tol "
         << fmt(kQuenchTol) << ")";

  const double ratio = sufficient_time(4, lambda_max, 0.01) /
                       sufficient_time(1, lambda_max, 0.01);
  pass = pass && std::abs(ratio - 2.0) <= kSqrtRatioTol;
  detail << "; T(N=4)/T(N=1) = " << ratio;

  const auto table = concurrency_experiment({1, 2, 3});
  const bool rows_ok = table.rows.size() == 3 &&
                       std::all_of(table.rows.begin(), table.rows.end(),
                                   [](const ConcurrencyRow& r) {
                                     return r.infidelity <= 1e-3 &&
                                            r.t_min > 0.0;
                                   });
  pass = pass && rows_ok;
  detail << "; minimum ramp time exponent over N <= 3: " << fmt(table.exponent)
         << " +/- " << fmt(table.exponent_stderr)
         << " [reported, not asserted]";
  return {pass, detail.str()};
}

Outcome amplification() {
  bool pass = true;
  std::ostringstream detail;
  for (double l : {0.0, 1.0, 3.0, 10.0}) {
    const auto r = amplification_demo(l);
    const double expected =
        (1 + l * l) * r.weight_no_error /
        ((1 + l * l) * r.weight_no_error + r.weight_error);
    const bool ok = r.overlap >= 1.0 - kAmplifiedOverlapTol &&
                    r.ratio_defect <= kRatioDefectTol &&
                    std::abs(r.no_error_weight - expected) <= kNoErrorWeightTol;
    pass = pass && ok;
    detail << "L=" << l << ": 1-overlap " << fmt(1.0 - r.overlap)
           << ", ratio defect " << fmt(r.ratio_defect) << ", no-error weight "
           << fmt(r.no_error_weight) << "; ";
  }
  const double w3 = amplification_demo(3.0).no_error_weight;
  pass = pass && std::abs(w3 - 10.0 / 11.0) <= kNoErrorWeightTol;
  detail << "weight at L=3 vs 10/11: " << fmt(std::abs(w3 - 10.0 / 11.0))
         << " (tols " << fmt(kAmplifiedOverlapTol) << ", "
         << fmt(kRatioDefectTol) << ")";
  return {pass, detail.str()};
}

Outcome pseudo_threshold() {
  const auto tally = extended_rectangle_tally();
  const auto est = pseudo_threshold_estimate(
      static_cast<std::uint64_t>(tally.extended_rectangle), 2);
  // Independent count of unordered pairs.
  std::uint64_t pairs = 0;
  for (int a = 0; a < tally.extended_rectangle; ++a) {
    for (int b = a + 1; b < tally.extended_rectangle; ++b) ++pairs;
  }
  const double rounded = std::round(est.estimate * 1e5) / 1e5;
  const bool pass = tally.extended_rectangle == 52 && est.pairs == 1326 &&
                    pairs == 1326 && std::abs(rounded - 7.5e-4) < 1e-12;
  return {pass, "gates " + std::to_string(tally.extended_rectangle) +
                    ", pairs " + std::to_string(est.pairs) + ", estimate " +
                    fmt(est.estimate) + " (rounded published value 1e-3)"};
}

Outcome perturbation() {
  std::mt19937_64 rng(1013);
  const auto compiled = teleport_chain(1, rng);
  const auto& spec = compiled.spec;
  const double lambda = 1.0;
  const int dim = static_cast<int>(spec.reg().dimension());
  Matrix vd = testing::random_hermitian(dim, rng);
  vd *= 1e-3 / testing::dense_eigenvalues(vd).cwiseAbs().maxCoeff();
  const SparseOperator v(spec.register_ptr(), vd.sparseView(), true);
  const double e1 = ground_and_gap(spec.evaluate(lambda)).e1;
  const double omega = 0.1 * e1;
  const double t = 10.0;
  const auto r = perturbation_response(spec, lambda, v, omega, t, 4);
  const Vector psi = driven_evolution(spec, lambda, v, omega, t, r.states[0]);
  double worst = 0.0;
  int compared = 0;
  for (std::size_t k = 0; k < r.levels.size(); ++k) {
    const auto& lv = r.levels[k];
    if (std::abs(lv.coefficient) < 1e-8) continue;
    const Complex direct =
        std::exp(Complex(0.0, (lv.energy + r.ground_energy) * t)) *
        r.states[k + 1].dot(psi);
    worst = std::max(worst, std::abs(direct - lv.coefficient) /
                                std::abs(lv.coefficient));
    ++compared;
  }
  return {compared > 0 && worst <= kPerturbationRelTol,
          std::to_string(compared) + " levels, max relative deviation " +
              fmt(worst) + " (tol " + fmt(kPerturbationRelTol) + ")"};
}

}  // namespace
}  // namespace gsqc

int main() {
  using namespace gsqc;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"zero ground energy", zero_ground_energy},
      {"history-state oracle", history_state_oracle},
      {"gap at Lambda = 0", gap_at_zero},
      {"chain gap scaling", chain_gap_scaling},
      {"chain readout occupation", chain_readout_occupation},
      {"error probability readout", error_probability_readout},
      {"gap bound sweep", gap_bound_sweep},
      {"Hellman-Feynman and curvature", hellman_feynman},
      {"Grover", grover},
      {"adiabatic ramp", adiabatic},
      {"projection amplification", amplification},
      {"pseudo-threshold", pseudo_threshold},
      {"perturbation response", perturbation},
  };
  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = checks[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    if (!o.pass) ++failures;
    std::printf("[%2zu] %-30s %s  %s  (%.1f s)\n", i + 1,
                checks[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu checks passed\n",
              static_cast<int>(checks.size()) - failures, checks.size());
  return failures == 0 ? 0 : 1;
}

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

#include "gsqc/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

namespace gsqc {
namespace {

LanczosOptions lanczos_options(const SpectralOptions& o) {
  LanczosOptions l;
  l.tolerance = o.tolerance * o.epsilon;
  l.basis_size = o.basis_size;
  l.max_matvecs = o.max_matvecs;
  l.seed = o.seed;
  return l;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Eigenpairs lowest_levels(const SparseOperator& h, int count,
                         const SpectralOptions& options) {
  return lowest_eigenpairs(h.matrix(), count, lanczos_options(options));
}

SpectrumResult ground_and_gap(const SparseOperator& h,
                              const SpectralOptions& options) {
  const int dim = static_cast<int>(h.dimension());
  const double zero = options.zero_threshold * options.epsilon;
  int count = std::min(2, dim);
  Eigenpairs pairs;
  while (true) {
    pairs = lowest_levels(h, count, options);
    const bool found_gap = pairs.values.back() > zero;
    if (found_gap || count >= dim || count > options.max_zero_modes) break;
    count = std::min(dim, count + 2);
  }
  SpectrumResult r;
  r.levels = pairs.values;
  r.matvecs = pairs.matvecs;
  r.e0 = pairs.values.front();
  r.ground = StateVector(h.register_ptr(), pairs.vectors.front());
  r.ground_residual = pairs.residuals.front();
  std::size_t excited = pairs.values.size() - 1;
  for (std::size_t i = 0; i < pairs.values.size(); ++i) {
    if (pairs.values[i] <= zero) {
      ++r.near_zero_count;
    } else {
      excited = std::min(excited, i);
    }
  }
  if (excited == 0 && pairs.values.size() > 1) excited = 1;
  r.e1 = pairs.values[excited];
  r.excited = StateVector(h.register_ptr(), pairs.vectors[excited]);
  r.excited_residual = pairs.residuals[excited];
  return r;
}

double gap_bound(double lambda) {
  const double s = std::sqrt(1.0 + lambda * lambda);
  // (s - L)^2 written as 1 / (s + L)^2 to avoid cancellation at large L.
  const double d = s + lambda;
  return 1.0 / (d * d * (1.0 + lambda * lambda));
}

double error_probability(double lambda) { return 6.0 / (8.0 + lambda * lambda); }

double weak_gap_bound(double lambda) {
  const double q = error_probability(lambda) / 12.0;
  return q * q;
}

std::vector<std::size_t> GapSweep::bound_violations() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].ok && rows[i].ratio < rows[i].bound - 1e-12) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> GapSweep::weak_bound_violations() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].ok && rows[i].ratio < weak_gap_bound(rows[i].lambda) - 1e-12) {
      out.push_back(i);
    }
  }
  return out;
}

void GapSweep::write_csv(std::ostream& os) const {
  os << "lambda,E0,E1,bound,p,ratio,residual,near_zero_count\n";
  for (const auto& r : rows) {
    if (!r.ok) {
      os << fmt(r.lambda) << ",nan,nan," << fmt(r.bound) << "," << fmt(r.p)
         << ",nan,nan,-1\n";
      continue;
    }
    os << fmt(r.lambda) << ',' << fmt(r.e0) << ',' << fmt(r.e1) << ','
       << fmt(r.bound) << ',' << fmt(r.p) << ',' << fmt(r.ratio) << ','
       << fmt(r.residual) << ',' << r.near_zero_count << '\n';
  }
}

std::vector<double> linear_grid(double lambda_max, int points) {
  if (points < 1) throw ValidationError("grid needs at least one point");
  std::vector<double> out;
  for (int i = 0; i < points; ++i) {
    out.push_back(points == 1 ? 0.0 : lambda_max * i / (points - 1));
  }
  return out;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GSQC_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

GapSweep gap_sweep(const HamiltonianSpec& spec,
                   const std::vector<double>& lambdas,
                   const SpectralOptions& options, int threads) {
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (lambdas[i] < 0.0 || (i > 0 && lambdas[i] <= lambdas[i - 1])) {
      throw ValidationError("gap_sweep: grid must be ascending and >= 0");
    }
  }
  std::vector<double> grid = lambdas;
  const bool has_zero = !grid.empty() && grid.front() == 0.0;
  if (!has_zero) grid.insert(grid.begin(), 0.0);

  std::vector<GapSweepRow> rows(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      auto& row = rows[i];
      row.lambda = grid[i];
      row.bound = gap_bound(grid[i]);
      row.p = error_probability(grid[i]);
      try {
        const auto r = ground_and_gap(spec.evaluate(grid[i]), options);
        row.e0 = r.e0;
        row.e1 = r.e1;
        row.residual = std::max(r.ground_residual, r.excited_residual);
        row.near_zero_count = r.near_zero_count;
      } catch (const Error& e) {
        row.ok = false;
        row.error = e.what();
      }
    }
  };
  const int n = std::min<int>(resolve_threads(threads),
                              static_cast<int>(grid.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  GapSweep sweep;
  sweep.e_zero = rows.front().e1;
  for (auto& r : rows) {
    r.ratio = r.ok && rows.front().ok ? r.e1 / sweep.e_zero : 0.0;
  }
  if (!has_zero) rows.erase(rows.begin());
  sweep.rows = std::move(rows);
  return sweep;
}

HellmanFeynmanReport hellman_feynman_check(const HamiltonianSpec& spec,
                                           double lambda, int level,
                                           const SpectralOptions& options) {
  if (level < 0) throw ValidationError("hellman_feynman_check: level >= 0");
  const double eps = spec.epsilon();
  SpectralOptions o = options;
  o.epsilon = eps;
  const auto h = spec.evaluate(lambda);
  const int count = std::min<int>(level + 2, static_cast<int>(h.dimension()));
  const auto pairs = lowest_levels(h, count, o);
  const auto k = static_cast<std::size_t>(level);
  double spacing = INFINITY;
  if (k > 0) spacing = std::min(spacing, pairs.values[k] - pairs.values[k - 1]);
  if (k + 1 < pairs.values.size()) {
    spacing = std::min(spacing, pairs.values[k + 1] - pairs.values[k]);
  }
  if (spacing <= 1e-6 * eps) {
    throw DegeneracyError("level " + std::to_string(level) +
                              " is degenerate at lambda = " + fmt(lambda),
                          spacing);
  }
  const auto& psi = pairs.vectors[k];
  const auto dh = spec.derivative(lambda, 1);
  const double analytic = psi.dot(dh.matrix() * psi).real();

  auto energy = [&](double l) {
    return lowest_levels(spec.evaluate(l), level + 1, o).values[k];
  };
  const double step = 1e-4;
  auto central = [&](double s) {
    return (energy(lambda + s) - energy(lambda - s)) / (2.0 * s);
  };
  const double d1 = central(step);
  const double d2 = central(step / 2.0);
  const double fd = (4.0 * d2 - d1) / 3.0;

  HellmanFeynmanReport r;
  r.level = level;
  r.lambda = lambda;
  r.energy = pairs.values[k];
  r.finite_difference = fd;
  r.analytic = analytic;
  r.spacing = spacing;
  const double scale = std::max(std::abs(fd), std::abs(analytic));
  r.relative_discrepancy =
      scale <= 1e-9 * eps ? 0.0 : std::abs(fd - analytic) / scale;
  return r;
}

CurvatureReport curvature_bound_check(const HamiltonianSpec& spec,
                                      double lambda, int gate_count,
                                      const SpectralOptions& options) {
  SpectralOptions o = options;
  o.epsilon = spec.epsilon();
  CurvatureReport r;
  r.bound = 2.0 * gate_count * spec.epsilon() / (1.0 + lambda * lambda);
  if (spec.free_link_count() == 0) {
    r.value = 0.0;
  } else {
    const auto pairs = lowest_levels(spec.evaluate(lambda), 1, o);
    const auto& psi = pairs.vectors.front();
    r.value = psi.dot(spec.derivative(lambda, 2).matrix() * psi).real();
  }
  r.satisfied = r.value <= r.bound + 1e-12;
  return r;
}

ThresholdEstimate pseudo_threshold_estimate(std::uint64_t gate_count,
                                            std::uint64_t fault_pairs) {
  if (fault_pairs > gate_count) {
    throw ValidationError("pseudo_threshold_estimate: need gate_count >= "
                          "fault_pairs");
  }
  ThresholdEstimate t;
  t.gate_count = gate_count;
  t.fault_pairs = fault_pairs;
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= fault_pairs; ++i) {
    c = c * (gate_count - fault_pairs + i) / i;
  }
  t.pairs = c;
  t.estimate = 1.0 / static_cast<double>(c);
  return t;
}

}  // namespace gsqc

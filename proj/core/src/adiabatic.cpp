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

#include "gsqc/adiabatic.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <random>
#include <thread>

#include "gsqc/compile.hpp"

namespace gsqc {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double ramp(double t, double total, double start_fraction) {
  if (total <= 0.0) return 1.0;
  const double u = t / total;
  if (u <= start_fraction) return 0.0;
  return std::clamp((u - start_fraction) / (1.0 - start_fraction), 0.0, 1.0);
}

// out = w1 H(t1) + w2 H(t2).
using CombinedMap =
    std::function<void(double, double, double, double, CsrMatrix&)>;

// exp(-i h A) v for Hermitian A by Lanczos. The Krylov spaces are short, so
// the three-term recurrence with one local reorthogonalization pass suffices;
// the a posteriori estimate and the step-doubling check guard the result.
// Returns false when the a posteriori error exceeds `tol` at `max_dim`.
bool krylov_expv(const LinearMap& a, double h, const Vector& v, Vector& out,
                 double tol, int max_dim, long& matvecs) {
  const double beta0 = v.norm();
  if (beta0 == 0.0) {
    out = v;
    return true;
  }
  const auto n = v.size();
  const int m_max = static_cast<int>(std::min<Eigen::Index>(max_dim, n));
  std::vector<Vector> basis;
  basis.push_back(v / beta0);
  std::vector<double> alpha;
  std::vector<double> beta;
  Vector w(n);
  auto combine = [&](const Eigen::VectorXcd& y, int size) {
    out = Vector::Zero(n);
    for (int i = 0; i < size; ++i) out += (beta0 * y(i)) * basis[i];
  };
  for (int j = 0; j < m_max; ++j) {
    const auto& vj = basis[static_cast<std::size_t>(j)];
    a(vj, w);
    ++matvecs;
    if (j > 0) w -= beta.back() * basis[static_cast<std::size_t>(j - 1)];
    double aj = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
      const Complex c = vj.dot(w);
      aj += c.real();
      w -= c * vj;
      if (j > 0) {
        const auto& prev = basis[static_cast<std::size_t>(j - 1)];
        w -= prev.dot(w) * prev;
      }
    }
    alpha.push_back(aj);
    const double bj = w.norm();
    const int size = j + 1;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(size, size);
    for (int i = 0; i < size; ++i) {
      t(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < size) {
        t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const Eigen::VectorXcd phase =
        (Complex(0.0, -h) * es.eigenvalues().cast<Complex>()).array().exp();
    const Eigen::VectorXcd y =
        es.eigenvectors().cast<Complex>() *
        (phase.array() *
         es.eigenvectors().row(0).transpose().cast<Complex>().array())
            .matrix();
    const double err = beta0 * bj * std::abs(y(size - 1));
    const double scale = std::max(1.0, std::abs(aj));
    if (err <= tol || bj <= 1e-13 * scale) {
      combine(y, size);
      return true;
    }
    if (size == m_max) {
      combine(y, size);
      return false;
    }
    beta.push_back(bj);
    basis.push_back(w / bj);
  }
  return false;
}

// Fourth-order commutator-free Magnus integrator with step doubling.
class Integrator {
 public:
  Integrator(CombinedMap op, const EvolveOptions& options)
      : op_(std::move(op)), options_(options),
        h_(options.initial_step) {}

  long matvecs() const { return matvecs_; }
  int steps() const { return steps_; }
  int rejected() const { return rejected_; }

  // Advances psi from t0 to t1 in place.
  void advance(Vector& psi, double t0, double t1) {
    double t = t0;
    Vector coarse, half, fine;
    while (t < t1) {
      const double remaining = t1 - t;
      double h = std::min(h_, remaining);
      const bool clipped = h == remaining;
      if (h <= 1e-14 * std::max(1.0, t1)) {
        t = t1;
        break;
      }
      const bool ok = step(psi, t, h, coarse) &&
                      step(psi, t, h / 2.0, half) &&
                      step(half, t + h / 2.0, h / 2.0, fine);
      const double err = ok ? (fine - coarse).norm() / 15.0 : INFINITY;
      if (err <= options_.step_tolerance) {
        psi = fine;
        t = clipped ? t1 : t + h;
        ++steps_;
        const double factor =
            err == 0.0 ? 2.0
                       : std::clamp(0.9 * std::pow(options_.step_tolerance /
                                                       err,
                                                   0.2),
                                    0.2, 2.0);
        // A step clipped to a sample boundary says little about the size
        // the integrator could take.
        if (!clipped || factor < 1.0) h_ = h * factor;
      } else {
        ++rejected_;
        h_ = h * (std::isfinite(err)
                      ? std::clamp(0.9 * std::pow(options_.step_tolerance /
                                                      err,
                                                  0.2),
                                   0.1, 0.5)
                      : 0.25);
        if (h_ < 1e-12) {
          throw ConvergenceError("time step underflow at t = " + fmt(t), err);
        }
      }
    }
  }

 private:
  bool step(const Vector& psi, double t, double h, Vector& out) {
    static const double r = std::sqrt(3.0);
    const double c1 = 0.5 - r / 6.0;
    const double c2 = 0.5 + r / 6.0;
    const double a1 = (3.0 - 2.0 * r) / 12.0;
    const double a2 = (3.0 + 2.0 * r) / 12.0;
    const double t1 = t + c1 * h;
    const double t2 = t + c2 * h;
    const double tol = 1e-3 * options_.step_tolerance;
    const LinearMap apply = [this](const Vector& x, Vector& y) {
      y.noalias() = h_matrix_ * x;
    };
    Vector mid;
    op_(a2, t1, a1, t2, h_matrix_);
    const bool first = krylov_expv(apply, h, psi, mid, tol,
                                   options_.krylov_dimension, matvecs_);
    op_(a1, t1, a2, t2, h_matrix_);
    const bool second = krylov_expv(apply, h, mid, out, tol,
                                    options_.krylov_dimension, matvecs_);
    return first && second;
  }

  CombinedMap op_;
  CsrMatrix h_matrix_;
  EvolveOptions options_;
  double h_;
  long matvecs_ = 0;
  int steps_ = 0;
  int rejected_ = 0;
};

struct Snapshot {
  double fidelity = 0.0;
  double energy = 0.0;
  double gap = 0.0;
  double coupled_gap = 0.0;
};

// Fidelity with the instantaneous ground space (all zero modes). With a
// derivative operator, also the energy, E1 and the lowest coupled level.
Snapshot snapshot(const SparseOperator& h, const SparseOperator* dh,
                  const Vector& psi, const SpectralOptions& options,
                  int coupled_levels) {
  Snapshot s;
  const auto r = ground_and_gap(h, options);
  if (r.near_zero_count > 1) {
    const auto zero = lowest_levels(h, r.near_zero_count, options);
    for (const auto& v : zero.vectors) s.fidelity += std::norm(v.dot(psi));
  } else {
    s.fidelity = std::norm(r.ground.amplitudes().dot(psi));
  }
  if (dh == nullptr) return s;
  s.energy = psi.dot(h.matrix() * psi).real();
  s.gap = r.e1;
  s.coupled_gap = r.e1;
  const int count = std::min<int>(std::max(coupled_levels, 2),
                                  static_cast<int>(h.dimension()));
  const auto levels = lowest_levels(h, count, options);
  const Vector d0 = dh->matrix() * levels.vectors.front();
  const double scale = std::max(1e-300, d0.norm());
  const double zero = options.zero_threshold * options.epsilon;
  for (std::size_t k = 1; k < levels.values.size(); ++k) {
    if (levels.values[k] <= zero) continue;
    s.coupled_gap = levels.values[k];
    if (std::abs(levels.vectors[k].dot(d0)) > 1e-8 * scale) break;
  }
  return s;
}

SparseOperator hamiltonian_at(const HamiltonianSpec& spec,
                              const Schedule& schedule, double t) {
  if (schedule.kind == ScheduleKind::Staggered) {
    return spec.evaluate_links(schedule.link_lambdas(spec, t));
  }
  return spec.evaluate(schedule.lambda_at(t));
}

}  // namespace

// ---------------------------------------------------------------------------
// Schedule

Schedule Schedule::linear(double lambda_max, double total_time) {
  Schedule s;
  s.lambda_max = lambda_max;
  s.total_time = total_time;
  return s;
}

Schedule Schedule::frozen(double total_time) { return linear(0.0, total_time); }

void Schedule::validate() const {
  if (!std::isfinite(lambda_max) || lambda_max < 0.0) {
    throw ValidationError("schedule: lambda_max must be finite and >= 0");
  }
  if (!std::isfinite(total_time) || total_time < 0.0) {
    throw ValidationError("schedule: total time must be finite and >= 0");
  }
  if (kind == ScheduleKind::PiecewiseLinear) {
    if (knots.size() < 2 || knots.front() != std::pair{0.0, 0.0} ||
        knots.back() != std::pair{1.0, 1.0}) {
      throw ValidationError(
          "schedule: knots must run from (0, 0) to (1, 1)");
    }
    for (std::size_t i = 1; i < knots.size(); ++i) {
      if (!(knots[i].first > knots[i - 1].first) ||
          knots[i].second < knots[i - 1].second) {
        throw ValidationError("schedule: knots are not monotone");
      }
    }
  }
  if (kind == ScheduleKind::Staggered) {
    for (double o : offsets) {
      if (!(o >= 0.0 && o < 1.0)) {
        throw ValidationError("schedule: offsets must lie in [0, 1)");
      }
    }
  }
}

double Schedule::lambda_at(double t) const {
  if (kind == ScheduleKind::PiecewiseLinear && total_time > 0.0) {
    const double u = std::clamp(t / total_time, 0.0, 1.0);
    auto it = std::upper_bound(
        knots.begin(), knots.end(), u,
        [](double x, const std::pair<double, double>& k) {
          return x < k.first;
        });
    if (it == knots.end()) return lambda_max * knots.back().second;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double f = (u - lo.first) / (hi.first - lo.first);
    return lambda_max * (lo.second + f * (hi.second - lo.second));
  }
  return lambda_max * ramp(t, total_time, 0.0);
}

std::vector<double> Schedule::link_lambdas(const HamiltonianSpec& spec,
                                           double t) const {
  std::vector<double> out;
  out.reserve(spec.links().size());
  for (const auto& link : spec.links()) {
    if (kind != ScheduleKind::Staggered) {
      out.push_back(lambda_at(t));
      continue;
    }
    double start = 0.0;
    if (link.gate >= 0) {
      const auto g = static_cast<std::size_t>(link.gate);
      if (g >= offsets.size()) {
        throw ValidationError("schedule: missing offset for gate " +
                              std::to_string(link.gate));
      }
      start = offsets[g];
    }
    out.push_back(lambda_max * ramp(t, total_time, start));
  }
  return out;
}

Schedule schedule_from_json(const nlohmann::json& j) {
  Schedule s;
  const std::string kind = j.value("kind", "linear");
  if (kind == "linear") {
    s.kind = ScheduleKind::Linear;
  } else if (kind == "piecewise-linear") {
    s.kind = ScheduleKind::PiecewiseLinear;
  } else if (kind == "staggered") {
    s.kind = ScheduleKind::Staggered;
  } else {
    throw ValidationError("schedule: unknown kind '" + kind + "'");
  }
  s.lambda_max = j.value("lambda_max", 4.0);
  s.total_time = j.value("T", 1.0);
  if (j.contains("knots")) {
    for (const auto& k : j.at("knots")) {
      s.knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
    }
  }
  if (j.contains("offsets")) {
    s.offsets = j.at("offsets").get<std::vector<double>>();
  }
  s.validate();
  return s;
}

nlohmann::json schedule_to_json(const Schedule& s) {
  nlohmann::json j;
  switch (s.kind) {
    case ScheduleKind::Linear: j["kind"] = "linear"; break;
    case ScheduleKind::PiecewiseLinear: j["kind"] = "piecewise-linear"; break;
    case ScheduleKind::Staggered: j["kind"] = "staggered"; break;
  }
  j["lambda_max"] = s.lambda_max;
  j["T"] = s.total_time;
  if (!s.knots.empty()) {
    auto& k = j["knots"] = nlohmann::json::array();
    for (const auto& [u, v] : s.knots) k.push_back({u, v});
  }
  if (!s.offsets.empty()) j["offsets"] = s.offsets;
  return j;
}

// ---------------------------------------------------------------------------
// Evolution

void EvolutionTrace::write_csv(std::ostream& os) const {
  os << "t,lambda,fidelity,energy,norm\n";
  for (const auto& s : samples) {
    os << fmt(s.t) << ',' << fmt(s.lambda) << ',' << fmt(s.fidelity) << ','
       << fmt(s.energy) << ',' << fmt(s.norm) << '\n';
  }
}

EvolutionTrace evolve(const HamiltonianSpec& spec, const Schedule& schedule,
                      const EvolveOptions& options) {
  schedule.validate();
  SpectralOptions so = options.spectral;
  so.epsilon = spec.epsilon();
  const auto r = ground_and_gap(spec.evaluate(0.0), so);
  return evolve_from(spec, schedule, r.ground.amplitudes(), options);
}

EvolutionTrace evolve_from(const HamiltonianSpec& spec,
                           const Schedule& schedule, const Vector& initial,
                           const EvolveOptions& options) {
  schedule.validate();
  if (options.samples < 2) {
    throw ValidationError("evolve: at least two samples required");
  }
  if (static_cast<std::size_t>(initial.size()) != spec.reg().dimension()) {
    throw ValidationError("evolve: initial state has the wrong dimension");
  }
  SpectralOptions so = options.spectral;
  so.epsilon = spec.epsilon();

  EvolutionTrace trace;
  Vector psi = initial;
  const double t_end = schedule.total_time;

  auto record = [&](double t, double lambda, const SparseOperator& h) {
    TraceSample s;
    s.t = t;
    s.lambda = lambda;
    s.norm = psi.norm();
    const double drift = std::abs(s.norm - 1.0);
    trace.max_norm_drift = std::max(trace.max_norm_drift, drift);
    if (drift > options.norm_tolerance) {
      throw NormDriftError("norm drift " + fmt(drift) + " at t = " + fmt(t),
                           drift);
    }
    std::optional<SparseOperator> dh;
    if (options.track_energy) {
      dh = spec.derivative_links(schedule.link_lambdas(spec, t), 1);
    }
    const auto snap =
        snapshot(h, dh ? &*dh : nullptr, psi, so, options.coupled_levels);
    s.fidelity = snap.fidelity;
    s.energy = snap.energy;
    s.gap = snap.gap;
    s.coupled_gap = snap.coupled_gap;
    s.diabatic_estimate =
        (1.0 - std::min(1.0, snap.fidelity)) * snap.coupled_gap;
    trace.samples.push_back(s);
  };

  if (t_end == 0.0) {
    // Instant quench: the state is unchanged while Lambda jumps.
    record(0.0, 0.0, spec.evaluate(0.0));
    record(0.0, schedule.lambda_max, hamiltonian_at(spec, schedule, 0.0));
    trace.final_state = psi;
    trace.final_infidelity = 1.0 - trace.samples.back().fidelity;
    return trace;
  }

  const ParametricHamiltonian ph(spec);
  CombinedMap op;
  if (schedule.kind == ScheduleKind::Staggered) {
    op = [&](double w1, double t1, double w2, double t2, CsrMatrix& out) {
      const auto l1 = schedule.link_lambdas(spec, t1);
      const auto l2 = schedule.link_lambdas(spec, t2);
      std::vector<ParametricHamiltonian::LinkCoefficients> c(l1.size());
      for (std::size_t i = 0; i < c.size(); ++i) {
        c[i].add(w1, ParametricHamiltonian::LinkCoefficients::at(l1[i]));
        c[i].add(w2, ParametricHamiltonian::LinkCoefficients::at(l2[i]));
      }
      ph.combine(w1 + w2, c, out);
    };
  } else {
    op = [&](double w1, double t1, double w2, double t2, CsrMatrix& out) {
      ParametricHamiltonian::LinkCoefficients c;
      c.add(w1, ParametricHamiltonian::LinkCoefficients::at(
                    schedule.lambda_at(t1)));
      c.add(w2, ParametricHamiltonian::LinkCoefficients::at(
                    schedule.lambda_at(t2)));
      ph.combine(w1 + w2, c, out);
    };
  }

  Integrator integrator(op, options);
  const int n = options.samples;
  double t_prev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = i == n - 1 ? t_end : t_end * i / (n - 1);
    integrator.advance(psi, t_prev, t);
    t_prev = t;
    record(t, schedule.lambda_at(t), hamiltonian_at(spec, schedule, t));
  }
  trace.final_state = psi;
  trace.final_infidelity = 1.0 - trace.samples.back().fidelity;
  trace.steps = integrator.steps();
  trace.rejected_steps = integrator.rejected();
  trace.matvecs = integrator.matvecs();
  return trace;
}

// ---------------------------------------------------------------------------
// Sufficient time and the concurrency experiment

double sufficient_time(int gate_count, double lambda_max, double energy,
                       double epsilon) {
  if (!(energy > 0.0) || !std::isfinite(energy)) {
    throw ValidationError("sufficient_time: gap must be positive");
  }
  if (gate_count < 0 || lambda_max < 0.0) {
    throw ValidationError("sufficient_time: need N >= 0 and lambda_max >= 0");
  }
  const double shape = lambda_max / std::sqrt(1.0 + lambda_max * lambda_max);
  return shape * std::sqrt(gate_count * epsilon / (energy * energy * energy));
}

SufficientTime sufficient_time_for(const HamiltonianSpec& spec,
                                   int gate_count, double lambda_max,
                                   const SpectralOptions& options) {
  SpectralOptions o = options;
  o.epsilon = spec.epsilon();
  SufficientTime r;
  const double e_zero = ground_and_gap(spec.evaluate(0.0), o).e1;
  r.bound_gap = gap_bound(lambda_max) * e_zero;
  r.from_bound =
      sufficient_time(gate_count, lambda_max, r.bound_gap, spec.epsilon());
  try {
    r.measured_gap = ground_and_gap(spec.evaluate(lambda_max), o).e1;
    r.from_measured =
        sufficient_time(gate_count, lambda_max, r.measured_gap, spec.epsilon());
    r.value = r.from_measured;
  } catch (const Error&) {
    r.measured_gap = kNaN;
    r.from_measured = kNaN;
    r.value = r.from_bound;
  }
  return r;
}

void ConcurrencyTable::write_csv(std::ostream& os) const {
  os << "N,T_min,iterations,T_star,infidelity\n";
  for (const auto& r : rows) {
    os << r.gates << ',' << fmt(r.t_min) << ',' << r.iterations << ','
       << fmt(r.t_star) << ',' << fmt(r.infidelity) << '\n';
  }
}

ConcurrencyRow minimum_ramp_time(const HamiltonianSpec& spec, int gate_count,
                                 const ConcurrencyOptions& options) {
  ConcurrencyRow row;
  row.gates = gate_count;
  row.dimension = spec.reg().dimension();
  row.t_star = sufficient_time_for(spec, gate_count, options.lambda_max,
                                   options.evolve.spectral)
                   .value;
  EvolveOptions eo = options.evolve;
  eo.samples = 2;
  eo.track_energy = false;
  auto infidelity = [&](double t) {
    ++row.iterations;
    return evolve(spec, Schedule::linear(options.lambda_max, t), eo)
        .final_infidelity;
  };

  const double at_zero = infidelity(0.0);
  if (at_zero <= options.target_infidelity) {
    row.t_min = 0.0;
    row.infidelity = at_zero;
    return row;
  }
  // Bracket by doubling from below T*, which usually overestimates; the
  // cost of an evaluation grows with T, so small trials are cheap.
  double best = at_zero;
  double lo = 0.0;
  double lo_value = at_zero;
  double hi = row.t_star > 0.0 ? row.t_star / 16.0 : 1.0;
  double hi_value = infidelity(hi);
  best = std::min(best, hi_value);
  if (hi_value <= options.target_infidelity) {
    while (true) {
      const double t = hi / 2.0;
      const double v = infidelity(t);
      if (v > options.target_infidelity) {
        lo = t;
        lo_value = v;
        break;
      }
      hi = t;
      hi_value = v;
      if (hi < 1e-12 * std::max(1.0, row.t_star)) {
        lo = 0.0;
        break;
      }
    }
  } else {
    for (int d = 0; hi_value > options.target_infidelity; ++d) {
      if (d == options.max_doublings) {
        throw ConvergenceError("bisection bracket failure for N = " +
                                   std::to_string(gate_count),
                               best);
      }
      lo = hi;
      lo_value = hi_value;
      hi *= 2.0;
      hi_value = infidelity(hi);
      best = std::min(best, hi_value);
    }
  }
  // Infidelity falls roughly as a power of T: interpolate in log-log,
  // kept away from the bracket ends so the bracket always shrinks.
  while (hi - lo > options.relative_tolerance * hi) {
    double mid = 0.5 * (lo + hi);
    if (lo > 0.0 && lo_value > 0.0 && hi_value > 0.0) {
      const double slope =
          std::log(hi_value / lo_value) / std::log(hi / lo);
      if (slope < 0.0) {
        const double guess =
            lo * std::exp(std::log(options.target_infidelity / lo_value) /
                          slope);
        const double margin = 0.1 * (hi - lo);
        mid = std::clamp(guess, lo + margin, hi - margin);
      }
    }
    const double v = infidelity(mid);
    if (v <= options.target_infidelity) {
      hi = mid;
      hi_value = v;
    } else {
      lo = mid;
      lo_value = v;
    }
  }
  row.t_min = hi;
  row.infidelity = hi_value;
  return row;
}

ConcurrencyTable concurrency_experiment(const std::vector<int>& gate_counts,
                                        const ConcurrencyOptions& options) {
  for (int n : gate_counts) {
    if (n < 1) throw ValidationError("concurrency_experiment: N must be >= 1");
  }
  std::vector<HamiltonianSpec> specs;
  std::mt19937_64 rng(options.seed);
  for (int n : gate_counts) {
    CircuitSpec c;
    c.lines = 1;
    for (int g = 0; g < n; ++g) {
      c.gates.push_back({gates::random_unitary(2, rng), {0}, g + 1,
                         "U" + std::to_string(g)});
    }
    CompileOptions co;
    co.epsilon = options.epsilon;
    co.lambda = options.lambda_max;
    specs.push_back(compile(c, co).spec);
  }

  ConcurrencyTable table;
  table.rows.resize(gate_counts.size());
  std::vector<std::exception_ptr> errors(gate_counts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      try {
        table.rows[i] = minimum_ramp_time(specs[i], gate_counts[i], options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::min<int>(resolve_threads(options.threads),
                                    static_cast<int>(specs.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<double> x, y;
  for (const auto& r : table.rows) {
    if (r.t_min > 0.0) {
      x.push_back(std::log(static_cast<double>(r.gates)));
      y.push_back(std::log(r.t_min));
    }
  }
  table.exponent = kNaN;
  table.exponent_stderr = kNaN;
  if (x.size() >= 2) {
    const double k = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      mx += x[i] / k;
      my += y[i] / k;
    }
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sxx += (x[i] - mx) * (x[i] - mx);
      sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx > 0.0) {
      table.exponent = sxy / sxx;
      if (x.size() > 2) {
        double sse = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
          const double e = y[i] - my - table.exponent * (x[i] - mx);
          sse += e * e;
        }
        table.exponent_stderr = std::sqrt(sse / (k - 2.0) / sxx);
      }
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Perturbation response

Complex first_order_coefficient(Complex m, double energy, double omega,
                                double t) {
  auto bracket = [t](double w) {
    // (e^{i w t} - 1) / w, continuous at w = 0.
    if (std::abs(w * t) < 1e-8) return Complex(0.0, t);
    return (std::exp(Complex(0.0, w * t)) - 1.0) / w;
  };
  return -(m / 2.0) * (bracket(energy + omega) + bracket(energy - omega));
}

PerturbationResponse perturbation_response(const HamiltonianSpec& spec,
                                           double lambda,
                                           const SparseOperator& v,
                                           double omega, double t, int levels,
                                           const SpectralOptions& options) {
  if (!std::isfinite(omega) || !std::isfinite(t)) {
    throw ValidationError("perturbation_response: omega and t must be finite");
  }
  if (levels < 1) throw ValidationError("perturbation_response: levels >= 1");
  if (v.dimension() != spec.reg().dimension()) {
    throw ValidationError("perturbation_response: V has the wrong dimension");
  }
  SpectralOptions o = options;
  o.epsilon = spec.epsilon();
  const auto h = spec.evaluate(lambda);
  const int count =
      std::min<int>(levels + 1, static_cast<int>(h.dimension()));
  const auto pairs = lowest_levels(h, count, o);

  PerturbationResponse r;
  r.ground_energy = pairs.values.front();
  r.states = pairs.vectors;
  const Vector v_ground = v.matrix() * pairs.vectors.front();
  for (int k = 1; k < count; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const double e = pairs.values[ku] - r.ground_energy;
    if (std::abs(e - omega) < 1e-6 * spec.epsilon() ||
        std::abs(e + omega) < 1e-6 * spec.epsilon()) {
      throw ResonanceError("drive frequency " + fmt(omega) +
                               " is resonant with level " + std::to_string(k) +
                               " (excitation energy " + fmt(e) + ")",
                           k);
    }
    PerturbationLevel l;
    l.level = k;
    l.energy = e;
    l.matrix_element = pairs.vectors[ku].dot(v_ground);
    l.coefficient = first_order_coefficient(l.matrix_element, e, omega, t);
    r.levels.push_back(l);
  }
  return r;
}

Vector driven_evolution(const HamiltonianSpec& spec, double lambda,
                        const SparseOperator& v, double omega, double t,
                        const Vector& initial, const EvolveOptions& options) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw ValidationError("driven_evolution: t must be finite and >= 0");
  }
  const CsrMatrix h0 = spec.evaluate(lambda).matrix();
  const CsrMatrix& vm = v.matrix();
  CombinedMap op = [&](double w1, double t1, double w2, double t2,
                       CsrMatrix& out) {
    const double c = w1 * std::cos(omega * t1) + w2 * std::cos(omega * t2);
    out = Complex(w1 + w2) * h0 + Complex(c) * vm;
  };
  Integrator integrator(op, options);
  Vector psi = initial;
  integrator.advance(psi, 0.0, t);
  return psi;
}

double golden_rule_rate(Complex matrix_element, double density) {
  return 2.0 * M_PI * std::norm(matrix_element) * density;
}

GoldenRuleResult golden_rule_rate(const HamiltonianSpec& spec, double lambda,
                                  const SparseOperator& v, double omega,
                                  double density, double window, int levels,
                                  const SpectralOptions& options) {
  if (!(density >= 0.0)) throw ValidationError("golden_rule_rate: rho >= 0");
  SpectralOptions o = options;
  o.epsilon = spec.epsilon();
  const auto h = spec.evaluate(lambda);
  const int count =
      std::min<int>(levels + 1, static_cast<int>(h.dimension()));
  const auto pairs = lowest_levels(h, count, o);
  const double e0 = pairs.values.front();
  int nearest = -1;
  double distance = INFINITY;
  for (int k = 1; k < count; ++k) {
    const double d =
        std::abs(pairs.values[static_cast<std::size_t>(k)] - e0 - omega);
    if (d < distance) {
      distance = d;
      nearest = k;
    }
  }
  if (nearest < 0 || distance > window) {
    throw ValidationError("golden_rule_rate: no level within " + fmt(window) +
                          " of omega = " + fmt(omega));
  }
  GoldenRuleResult r;
  r.level = nearest;
  r.energy = pairs.values[static_cast<std::size_t>(nearest)] - e0;
  const Vector v_ground = v.matrix() * pairs.vectors.front();
  r.matrix_element =
      pairs.vectors[static_cast<std::size_t>(nearest)].dot(v_ground);
  // A degenerate level contributes through its whole eigenspace.
  double weight = 0.0;
  for (int k = 1; k < count; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    if (std::abs(pairs.values[ku] - e0 - r.energy) <= 1e-8 * spec.epsilon()) {
      weight += std::norm(pairs.vectors[ku].dot(v_ground));
    }
  }
  r.rate = 2.0 * M_PI * weight * density;
  return r;
}

}  // namespace gsqc

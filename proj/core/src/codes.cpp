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

#include "gsqc/codes.hpp"

#include <algorithm>
#include <cmath>

#include "gsqc/circuit_json.hpp"
#include "gsqc/history_state.hpp"

namespace gsqc {
namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix ry(double theta) {
  Matrix m(2, 2);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  m << c, -s, s, c;
  return m;
}

bool is_x_type(DetectionSelector w) {
  return w == DetectionSelector::XColumnLeft ||
         w == DetectionSelector::XColumnRight;
}

}  // namespace

const char* to_string(DetectionSelector which) {
  switch (which) {
    case DetectionSelector::ZRowTop: return "ZQZR";
    case DetectionSelector::ZRowBottom: return "ZSZT";
    case DetectionSelector::XColumnLeft: return "XQXS";
    case DetectionSelector::XColumnRight: return "XRXT";
  }
  return "?";
}

DetectionSelector detection_selector_from_string(std::string_view name) {
  for (auto w : kAllDetectionSelectors) {
    if (name == to_string(w)) return w;
  }
  throw ValidationError("unknown detection circuit '" + std::string(name) +
                        "' (expected ZQZR, ZSZT, XQXS or XRXT)");
}

int DetectionCircuit::gate_count() const {
  return static_cast<int>(circuit.gates.size() + circuit.projections.size());
}

CircuitSpec DetectionCircuit::active_subcircuit() const {
  const std::array<int, 5> map = [&] {
    std::array<int, 5> m{-1, -1, -1, -1, -1};
    m[static_cast<std::size_t>(data[0])] = 0;
    m[static_cast<std::size_t>(data[1])] = 1;
    m[kAncilla] = 2;
    return m;
  }();
  CircuitSpec sub;
  sub.lines = 3;
  sub.mode = circuit.mode;
  for (auto g : circuit.gates) {
    for (auto& t : g.targets) t = map[static_cast<std::size_t>(t)];
    sub.gates.push_back(std::move(g));
  }
  for (auto p : circuit.projections) {
    p.ancilla_line = map[static_cast<std::size_t>(p.ancilla_line)];
    sub.projections.push_back(p);
  }
  return sub;
}

nlohmann::json DetectionCircuit::to_json() const {
  auto j = circuit_to_json(circuit);
  j["name"] = to_string(which);
  j["labels"] = labels;
  return j;
}

DetectionCircuit build_detection_circuit(DetectionSelector which,
                                         std::optional<double> boost) {
  DetectionCircuit d;
  d.which = which;
  switch (which) {
    case DetectionSelector::ZRowTop: d.data = {0, 1}; break;
    case DetectionSelector::ZRowBottom: d.data = {2, 3}; break;
    case DetectionSelector::XColumnLeft: d.data = {0, 2}; break;
    case DetectionSelector::XColumnRight: d.data = {1, 3}; break;
  }
  auto& c = d.circuit;
  c.lines = 5;
  c.mode = CircuitMode::Teleport;
  const int a = DetectionCircuit::kAncilla;
  if (is_x_type(which)) {
    // The ancilla starts in |0>, so its Hadamard rides on the first CNOT.
    const Matrix first = gates::cnot() * kron(gates::hadamard(),
                                              gates::identity());
    c.gates.push_back({first, {a, d.data[0]}, 1, "CNOT*H"});
    c.gates.push_back({gates::cnot(), {a, d.data[1]}, 2, "CNOT"});
    c.projections.push_back({a, Basis::X, boost});
  } else {
    c.gates.push_back({gates::cnot(), {d.data[0], a}, 1, "CNOT"});
    c.gates.push_back({gates::cnot(), {d.data[1], a}, 2, "CNOT"});
    c.projections.push_back({a, Basis::Z, boost});
  }
  validate(c);
  return d;
}

GateTally extended_rectangle_tally() {
  GateTally t;
  for (auto w : kAllDetectionSelectors) {
    t.per_detection_round += build_detection_circuit(w).gate_count();
  }
  t.extended_rectangle = 4 * t.per_detection_round + t.transverse;
  return t;
}

SubcircuitCheck check_detection_subcircuit(DetectionSelector which,
                                           double lambda,
                                           const CompileOptions& options) {
  const auto d = build_detection_circuit(which);
  CompileOptions o = options;
  o.lambda = lambda;
  const auto compiled = compile(d.active_subcircuit(), o);
  Vector psi = teleport_history_amplitudes(compiled, lambda);
  psi.normalize();
  Vector h_psi(psi.size());
  compiled.spec.apply(lambda, psi, h_psi);
  SubcircuitCheck r;
  r.which = which;
  r.dimension = compiled.reg->dimension();
  r.lambda = lambda;
  r.residual = h_psi.norm();
  r.rayleigh = psi.dot(h_psi).real();
  return r;
}

CircuitSpec amplification_circuit(double theta, bool with_projection) {
  CircuitSpec c;
  c.lines = 2;
  c.mode = CircuitMode::Teleport;
  const Matrix u = gates::cnot() * kron(ry(theta), gates::identity());
  c.gates.push_back({u, {0, 1}, 1, "CNOT*Ry"});
  if (with_projection) c.projections.push_back({1, Basis::Z, std::nullopt});
  validate(c);
  return c;
}

nlohmann::json AmplificationReport::to_json() const {
  return {{"lambda", lambda},
          {"theta", theta},
          {"dimension", dimension},
          {"E0", e0},
          {"E1", e1},
          {"overlap", overlap},
          {"weight_no_error", weight_no_error},
          {"weight_error", weight_error},
          {"no_error_weight", no_error_weight},
          {"expected_no_error_weight", expected_no_error_weight},
          {"ratio_defect", ratio_defect}};
}

AmplificationReport amplification_demo(double lambda, double theta,
                                       const SpectralOptions& options) {
  CompileOptions co;
  co.lambda = lambda;
  co.epsilon = options.epsilon;
  // The unprojected system supplies the syndrome-resolved data state: its
  // last particle is the ancilla's terminal qubit.
  const auto bare = compile(amplification_circuit(theta, false), co);
  const auto full = compile(amplification_circuit(theta, true), co);
  const Vector amps = teleport_history_amplitudes(bare, lambda);

  std::vector<ParticleSpec> data_particles = bare.reg->particles();
  const ParticleSpec ancilla = data_particles.back();
  data_particles.pop_back();
  const auto data_reg = build_register(data_particles);
  const auto n = static_cast<Eigen::Index>(data_reg->dimension());
  Vector a0(n), a1(n);
  for (Eigen::Index x = 0; x < n; ++x) {
    a0(x) = amps(2 * x);
    a1(x) = amps(2 * x + 1);
  }
  const auto target = amplified_projection_state(
      StateVector(data_reg, a0), StateVector(data_reg, a1), lambda, Basis::Z,
      ancilla.id);
  if (!(target.reg() == *full.reg)) {
    throw ValidationError("amplification_demo: register layout mismatch");
  }

  AmplificationReport r;
  r.lambda = lambda;
  r.theta = theta;
  r.dimension = full.reg->dimension();
  const double total = a0.squaredNorm() + a1.squaredNorm();
  r.weight_no_error = a0.squaredNorm() / total;
  r.weight_error = a1.squaredNorm() / total;
  const double boosted = (1.0 + lambda * lambda) * r.weight_no_error;
  r.expected_no_error_weight = boosted / (boosted + r.weight_error);

  // Eigenvector error scales as residual / gap; the gap closes like
  // 1 / Lambda^4, so tighten the residual until that ratio is negligible.
  SpectralOptions so = options;
  const auto h = full.spec.evaluate(lambda);
  auto spectrum = ground_and_gap(h, so);
  const double wanted = 1e-11 * spectrum.e1 / options.epsilon;
  if (so.tolerance > wanted) {
    so.tolerance = std::max(wanted, 1e-14);
    spectrum = ground_and_gap(h, so);
  }
  r.e0 = spectrum.e0;
  r.e1 = spectrum.e1;
  const Vector& g = spectrum.ground.amplitudes();
  r.overlap = std::abs(target.amplitudes().dot(g));
  double defect = 0.0;
  for (Eigen::Index x = 0; x < n; ++x) {
    const Complex zero = g(3 * x);
    const Complex idle = g(3 * x + 2);
    r.no_error_weight += std::norm(zero) + std::norm(idle);
    defect = std::max(defect, std::abs(idle - lambda * zero));
  }
  r.ratio_defect = defect / g.cwiseAbs().maxCoeff();
  return r;
}

}  // namespace gsqc

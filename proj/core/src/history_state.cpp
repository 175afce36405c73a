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

#include "gsqc/history_state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gsqc {
namespace {

Orbital comp(int stage, int bit) { return Orbital::computational(stage, bit); }

// out = (I + X) in, or X in when `replace` is set.
Vector apply_plus(const Register& reg, const ClusterOperator& x,
                  const Vector& in, bool replace = false) {
  Vector out = replace ? Vector::Zero(in.size()) : in;
  apply_cluster(reg, x, in, out);
  return out;
}

ClusterOperator single_advance(const Register& reg, const ParticleId& input,
                               const Matrix& u) {
  const auto& p = reg.particle(reg.position(input));
  ClusterOperator a{{input}, Matrix::Zero(p.orbital_count(),
                                          p.orbital_count())};
  for (int to = 0; to < 2; ++to) {
    for (int from = 0; from < 2; ++from) {
      a.matrix(p.index_of(comp(1, to)), p.index_of(comp(0, from))) =
          u(to, from);
    }
  }
  return a;
}

ClusterOperator joint_advance(const Register& reg, const ParticleId& r,
                              const ParticleId& q, const Matrix& u) {
  const auto& pr = reg.particle(reg.position(r));
  const auto& pq = reg.particle(reg.position(q));
  const int nq = pq.orbital_count();
  const int n = pr.orbital_count() * nq;
  ClusterOperator a{{r, q}, Matrix::Zero(n, n)};
  for (int to = 0; to < 4; ++to) {
    for (int from = 0; from < 4; ++from) {
      const int row = pr.index_of(comp(1, to >> 1)) * nq +
                      pq.index_of(comp(1, to & 1));
      const int col = pr.index_of(comp(0, from >> 1)) * nq +
                      pq.index_of(comp(0, from & 1));
      a.matrix(row, col) = u(to, from);
    }
  }
  return a;
}

// |singlet><0_0 0_0| on (a, b).
ClusterOperator singlet_creator(const Register& reg, const ParticleId& a,
                                const ParticleId& b) {
  const double r = 1.0 / std::sqrt(2.0);
  auto singlet = ClusterVector::zero(reg, {a, b});
  singlet.add(reg, {comp(0, 0), comp(0, 1)}, r);
  singlet.add(reg, {comp(0, 1), comp(0, 0)}, -r);
  auto vac = ClusterVector::zero(reg, {a, b});
  vac.add(reg, {comp(0, 0), comp(0, 0)}, 1.0);
  return ClusterOperator::outer(singlet, vac);
}

std::size_t bits_index(const std::vector<int>& bits) {
  std::size_t idx = 0;
  for (int b : bits) idx = 2 * idx + static_cast<std::size_t>(b);
  return idx;
}

std::map<std::string, double> distribution(const Vector& amps, int lines) {
  std::map<std::string, double> out;
  const double total = amps.squaredNorm();
  if (total == 0.0) return out;
  for (Eigen::Index x = 0; x < amps.size(); ++x) {
    out[bitstring(static_cast<std::size_t>(x), lines)] =
        std::norm(amps(x)) / total;
  }
  return out;
}

double fidelity(const Vector& ideal, const Vector& amps) {
  const double n = amps.squaredNorm();
  if (n == 0.0) return 0.0;
  return std::norm(ideal.dot(amps)) / (n * ideal.squaredNorm());
}

}  // namespace

void canonicalize_phase(StateVector& state, double threshold) {
  auto& a = state.amplitudes();
  if (a.size() == 0) return;
  const double cutoff = threshold * a.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a(i)) > cutoff) {
      a *= std::conj(a(i)) / std::abs(a(i));
      a(i) = std::abs(a(i));
      return;
    }
  }
}

StateVector chain_history_state(std::span<const Matrix> gates,
                                const RegisterPtr& reg) {
  const int n = static_cast<int>(gates.size());
  if (reg->particle_count() != 1 || reg->particle(0).stages != n + 1 ||
      reg->particle(0).has_idle) {
    throw ValidationError(
        "chain_history_state: register does not match the gate list");
  }
  const auto& p = reg->particle(0);
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(reg->dimension()));
  Vector psi = Vector::Zero(2);
  psi(0) = 1.0;
  const double w = 1.0 / std::sqrt(static_cast<double>(n + 1));
  for (int s = 0; s <= n; ++s) {
    if (s > 0) psi = gates[static_cast<std::size_t>(s - 1)] * psi;
    for (int b = 0; b < 2; ++b) amps(p.index_of(comp(s, b))) = w * psi(b);
  }
  return {reg, std::move(amps)};
}

StateVector chain_history_state(const CompiledCircuit& compiled) {
  const auto& c = compiled.circuit;
  if (c.mode != CircuitMode::Chain) {
    throw ValidationError("chain_history_state: circuit is not in chain mode");
  }
  const int depth = c.depth();
  if (c.lines == 1) {
    std::vector<Matrix> us;
    for (const auto* g : c.line_gates(0)) us.push_back(g->unitary);
    return chain_history_state(us, compiled.reg);
  }
  const auto& reg = *compiled.reg;
  const auto& p0 = reg.particle(0);
  const auto& p1 = reg.particle(1);
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(reg.dimension()));
  Vector psi = Vector::Zero(4);
  psi(0) = 1.0;
  const double w = 1.0 / std::sqrt(static_cast<double>(depth + 1));
  for (int s = 0; s <= depth; ++s) {
    if (s > 0) psi = stage_unitary(c, s) * psi;
    for (int k = 0; k < 4; ++k) {
      const int digits[2] = {p0.index_of(comp(s, k >> 1)),
                             p1.index_of(comp(s, k & 1))};
      amps(static_cast<Eigen::Index>(reg.basis_index(digits))) = w * psi(k);
    }
  }
  return {compiled.reg, std::move(amps)};
}

Vector teleport_history_amplitudes(const CompiledCircuit& compiled,
                                   double lambda) {
  const auto& c = compiled.circuit;
  if (c.mode != CircuitMode::Teleport) {
    throw ValidationError(
        "teleport_history_state: circuit is not in teleport mode");
  }
  const auto& reg = *compiled.reg;
  auto id = [&](std::size_t pos) { return reg.particle(pos).id; };

  // Every particle in orbital 0 (= |0_0>), then singlets on Bell pairs.
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(reg.dimension()));
  psi(0) = 1.0;
  for (const auto& line : compiled.lines) {
    for (std::size_t k = 0; k < line.blocks.size(); ++k) {
      const auto next = k + 1 < line.blocks.size() ? line.blocks[k + 1].input
                                                   : line.terminal;
      psi = apply_plus(reg,
                       singlet_creator(reg, id(line.blocks[k].bell), id(next)),
                       psi, true);
    }
  }

  std::vector<std::size_t> order(c.gates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return c.gates[a].stage < c.gates[b].stage;
  });
  auto input_of = [&](int line, std::size_t gate) {
    for (const auto& b : compiled.lines[static_cast<std::size_t>(line)].blocks) {
      if (b.gate == gate) return id(b.input);
    }
    throw Error("internal: gate missing from its line");
  };
  const double half = 1.0 / std::sqrt(2.0);
  for (const auto gi : order) {
    const auto& g = c.gates[gi];
    const auto advance =
        g.arity() == 1
            ? single_advance(reg, input_of(g.targets[0], gi), g.unitary)
            : joint_advance(reg, input_of(g.targets[0], gi),
                            input_of(g.targets[1], gi), g.unitary);
    psi = half * apply_plus(reg, advance, psi);
    for (const auto& link : compiled.spec.links()) {
      if (link.gate != static_cast<int>(gi)) continue;
      const double l = link.lambda_for(lambda);
      ClusterOperator raise{link.particles,
                            l * link.idle * link.transition.adjoint()};
      psi = apply_plus(reg, raise, psi);
    }
  }
  for (const auto& link : compiled.spec.links()) {
    if (link.gate >= 0) continue;
    const double l = link.lambda_for(lambda);
    ClusterOperator raise{link.particles,
                          l * link.idle * link.transition.adjoint()};
    psi = apply_plus(reg, raise, psi);
  }
  return psi;
}

StateVector teleport_history_state(const CompiledCircuit& compiled,
                                   double lambda) {
  StateVector s(compiled.reg, teleport_history_amplitudes(compiled, lambda));
  s = s.normalized();
  canonicalize_phase(s);
  return s;
}

nlohmann::json ReadoutReport::to_json() const {
  return {{"p_done", p_done},
          {"p_incorrect", p_incorrect},
          {"done_fidelity", done_fidelity},
          {"answer_distribution", answer_distribution}};
}

ReadoutReport readout(const StateVector& state,
                      const CompiledCircuit& compiled) {
  const auto& c = compiled.circuit;
  if (c.mode != CircuitMode::Teleport) {
    throw ValidationError("readout: register is not in teleport layout");
  }
  if (!c.projections.empty()) {
    throw ValidationError("readout: circuits with projections are not graded");
  }
  if (!(*state.register_ptr() == *compiled.reg)) {
    throw ValidationError("readout: state lives on a different register");
  }
  const double n2 = state.amplitudes().squaredNorm();
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-10) {
    throw ValidationError("readout: state is not normalized");
  }
  const auto& reg = *compiled.reg;
  std::vector<std::pair<std::size_t, int>> idle_checks;
  for (const auto& line : compiled.lines) {
    for (const auto& b : line.blocks) {
      idle_checks.push_back({b.input, reg.particle(b.input).idle_index()});
      idle_checks.push_back({b.bell, reg.particle(b.bell).idle_index()});
    }
  }
  Vector done = Vector::Zero(Eigen::Index{1} << c.lines);
  ReadoutReport report;
  const auto& a = state.amplitudes();
  std::vector<int> bits(static_cast<std::size_t>(c.lines));
  for (std::size_t i = 0; i < reg.dimension(); ++i) {
    const Complex amp = a(static_cast<Eigen::Index>(i));
    if (amp == Complex(0.0)) continue;
    bool is_done = true;
    for (const auto& [pos, idle] : idle_checks) {
      if (reg.digit(i, pos) != idle) {
        is_done = false;
        break;
      }
    }
    if (!is_done) continue;
    for (int l = 0; l < c.lines; ++l) {
      bits[static_cast<std::size_t>(l)] =
          reg.digit(i, compiled.lines[static_cast<std::size_t>(l)].terminal);
    }
    done(static_cast<Eigen::Index>(bits_index(bits))) += amp;
  }
  report.p_done = done.squaredNorm();
  report.answer_distribution = distribution(done, c.lines);
  report.done_fidelity = fidelity(simulate(c), done);
  report.p_incorrect = (1.0 - report.p_done) * 0.75 +
                       report.p_done * (1.0 - report.done_fidelity);
  return report;
}

ChainReadout chain_readout(const StateVector& state,
                           const CompiledCircuit& compiled) {
  const auto& c = compiled.circuit;
  if (c.mode != CircuitMode::Chain) {
    throw ValidationError("chain_readout: circuit is not in chain mode");
  }
  const auto& reg = *compiled.reg;
  const int depth = c.depth();
  Vector final_amps = Vector::Zero(Eigen::Index{1} << c.lines);
  const auto& a = state.amplitudes();
  for (std::size_t i = 0; i < reg.dimension(); ++i) {
    std::size_t x = 0;
    bool at_end = true;
    for (int l = 0; l < c.lines; ++l) {
      const auto o = reg.particle(static_cast<std::size_t>(l))
                         .orbital_at(reg.digit(i, static_cast<std::size_t>(l)));
      if (o.stage != depth) {
        at_end = false;
        break;
      }
      x = 2 * x + static_cast<std::size_t>(o.bit);
    }
    if (at_end) final_amps(static_cast<Eigen::Index>(x)) += a(static_cast<Eigen::Index>(i));
  }
  ChainReadout out;
  out.p_final = final_amps.squaredNorm() / a.squaredNorm();
  out.final_fidelity = fidelity(simulate(c), final_amps);
  out.answer_distribution = distribution(final_amps, c.lines);
  return out;
}

StateVector amplified_projection_state(const StateVector& psi0,
                                       const StateVector& psi1, double lambda,
                                       Basis basis,
                                       const ParticleId& ancilla) {
  if (!(psi0.reg() == psi1.reg())) {
    throw ValidationError(
        "amplified_projection_state: data registers do not match");
  }
  auto particles = psi0.reg().particles();
  particles.push_back({ancilla, 1, true});
  auto reg = build_register(std::move(particles));
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(reg->dimension()));
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t x = 0; x < psi0.size(); ++x) {
    const auto i = static_cast<Eigen::Index>(x);
    const Complex a0 = psi0.amplitudes()(i);
    const Complex a1 = psi1.amplitudes()(i);
    // Ancilla orbitals: 0_0, 1_0, IDLE.
    if (basis == Basis::Z) {
      amps(3 * i) = a0;
      amps(3 * i + 1) = a1;
    } else {
      amps(3 * i) = r * (a0 + a1);
      amps(3 * i + 1) = r * (a0 - a1);
    }
    amps(3 * i + 2) = lambda * a0;
  }
  return StateVector(reg, std::move(amps)).normalized();
}

CircuitSpec grover_circuit(int marked, CircuitMode mode) {
  CircuitSpec c;
  c.lines = 2;
  c.mode = mode;
  int stage = 1;
  auto both_h = [&] {
    c.gates.push_back({gates::hadamard(), {0}, stage, "H"});
    c.gates.push_back({gates::hadamard(), {1}, stage, "H"});
    ++stage;
  };
  both_h();
  c.gates.push_back({gates::phase_flip(marked), {0, 1}, stage++, "oracle"});
  both_h();
  c.gates.push_back({gates::phase_flip(0), {0, 1}, stage++, "reflect"});
  both_h();
  return c;
}

int grover_reference(int marked) {
  if (marked < 0 || marked > 3) {
    throw ValidationError("grover_reference: marked state must be in 0..3");
  }
  return marked;
}

}  // namespace gsqc

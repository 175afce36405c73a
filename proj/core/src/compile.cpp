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

#include "gsqc/compile.hpp"

#include <string>

namespace gsqc {
namespace {

std::string line_name(int line) { return "L" + std::to_string(line); }

std::optional<std::size_t> projection_of(const CircuitSpec& c, int line) {
  for (std::size_t i = 0; i < c.projections.size(); ++i) {
    if (c.projections[i].ancilla_line == line) return i;
  }
  return std::nullopt;
}

std::vector<ParticleSpec> particle_specs(const CircuitSpec& c) {
  std::vector<ParticleSpec> out;
  for (int l = 0; l < c.lines; ++l) {
    const auto name = line_name(l);
    if (c.mode == CircuitMode::Chain) {
      out.push_back({{name}, c.depth() + 1, false});
      continue;
    }
    const auto n = c.line_gates(l).size();
    for (std::size_t k = 1; k <= n; ++k) {
      out.push_back({{name + ".in" + std::to_string(k)}, 2, true});
      out.push_back({{name + ".bell" + std::to_string(k)}, 1, true});
    }
    out.push_back({{name + ".out"}, 1, projection_of(c, l).has_value()});
  }
  return out;
}

// 4x4 matrix of a two-qubit gate with line order as the bit order.
Matrix in_line_order(const GateSpec& g) {
  if (g.targets[0] < g.targets[1]) return g.unitary;
  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = 1.0;
  swap(1, 2) = swap(2, 1) = 1.0;
  return swap * g.unitary * swap;
}

Matrix kron2(const Matrix& a, const Matrix& b) {
  Matrix out(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
  }
  return out;
}

std::optional<double> gate_lambda(const CompileOptions& o, std::size_t gate) {
  return gate < o.gate_lambdas.size() ? o.gate_lambdas[gate] : std::nullopt;
}

void compile_chain(const CircuitSpec& c, const CompileOptions& o,
                   const Register& reg, std::vector<NamedTerm>& terms) {
  const double eps = o.epsilon;
  const int depth = c.depth();
  for (int l = 0; l < c.lines; ++l) {
    terms.push_back(boundary_term(reg, {line_name(l)}, eps));
  }
  for (int s = 1; s <= depth; ++s) {
    if (c.lines == 1) {
      const GateSpec* g = c.line_gates(0)[static_cast<std::size_t>(s - 1)];
      terms.push_back(propagation_term(reg, {line_name(0)}, g->unitary, s - 1,
                                       s, eps));
      continue;
    }
    const Matrix u = stage_unitary(c, s);
    terms.push_back(joint_propagation_term(reg, {line_name(0)},
                                           {line_name(1)}, u, s - 1, s, eps));
  }
  if (c.lines < 2) return;
  // Desynchronized histories cost energy proportional to how far apart the
  // two lines are, which keeps the synchronized history the only zero mode.
  for (int s = 1; s <= depth; ++s) {
    for (int lead = 0; lead < 2; ++lead) {
      const auto& ahead = reg.particle(static_cast<std::size_t>(lead));
      const auto& behind = reg.particle(static_cast<std::size_t>(1 - lead));
      std::vector<Orbital> late, early;
      for (int t = 0; t <= depth; ++t) {
        for (int b = 0; b < 2; ++b) {
          (t >= s ? late : early).push_back(Orbital::computational(t, b));
        }
      }
      OperatorTerm term{eps,
                        {local_projector(ahead, late),
                         local_projector(behind, early)}};
      terms.push_back({"desync(" + ahead.id.value + ">=" + std::to_string(s) +
                           "," + behind.id.value + "<" + std::to_string(s) +
                           ")",
                       to_cluster(reg, term)});
    }
  }
}

}  // namespace

Matrix stage_unitary(const CircuitSpec& circuit, int stage) {
  Matrix u0 = gates::identity();
  Matrix u1 = gates::identity();
  for (const auto& g : circuit.gates) {
    if (g.stage != stage) continue;
    if (g.arity() == 2) return in_line_order(g);
    (g.targets[0] == 0 ? u0 : u1) = g.unitary;
  }
  return kron2(u0, u1);
}

std::vector<int> register_shape(const CircuitSpec& circuit) {
  std::vector<int> out;
  for (const auto& p : particle_specs(circuit)) {
    out.push_back(p.orbital_count());
  }
  return out;
}

CompiledCircuit compile(const CircuitSpec& circuit,
                        const CompileOptions& options) {
  validate(circuit);
  if (!options.gate_lambdas.empty() &&
      options.gate_lambdas.size() != circuit.gates.size()) {
    throw ValidationError("gate_lambdas: one entry per gate required");
  }
  auto reg = build_register(particle_specs(circuit), options.dimension_cap);
  const double eps = options.epsilon;
  std::vector<NamedTerm> terms;
  std::vector<LambdaLinkTerm> links;
  std::vector<LineLayout> layout(static_cast<std::size_t>(circuit.lines));

  if (circuit.mode == CircuitMode::Chain) {
    compile_chain(circuit, options, *reg, terms);
    for (int l = 0; l < circuit.lines; ++l) {
      layout[static_cast<std::size_t>(l)].terminal =
          reg->position({line_name(l)});
    }
    HamiltonianSpec spec(reg, eps, std::move(terms), {}, options.lambda);
    return {circuit, options, reg, std::move(spec), std::move(layout)};
  }

  // Register positions for every line first; two-qubit gates need both.
  for (int l = 0; l < circuit.lines; ++l) {
    auto& line = layout[static_cast<std::size_t>(l)];
    const auto name = line_name(l);
    const auto gates_on_line = circuit.line_gates(l);
    for (std::size_t k = 0; k < gates_on_line.size(); ++k) {
      const auto suffix = std::to_string(k + 1);
      line.blocks.push_back(
          {static_cast<std::size_t>(gates_on_line[k] - circuit.gates.data()),
           reg->position({name + ".in" + suffix}),
           reg->position({name + ".bell" + suffix})});
    }
    line.terminal = reg->position({name + ".out"});
    line.projection = projection_of(circuit, l);
  }
  auto block_of = [&](int line, std::size_t gate) {
    const auto& blocks = layout[static_cast<std::size_t>(line)].blocks;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      if (blocks[k].gate == gate) return k;
    }
    throw Error("internal: gate missing from its line");
  };
  auto id = [&](std::size_t pos) { return reg->particle(pos).id; };

  for (int l = 0; l < circuit.lines; ++l) {
    const auto& line = layout[static_cast<std::size_t>(l)];
    const auto first = line.blocks.empty() ? line.terminal
                                           : line.blocks.front().input;
    terms.push_back(boundary_term(*reg, id(first), eps));
    for (std::size_t k = 0; k < line.blocks.size(); ++k) {
      const auto& b = line.blocks[k];
      const auto& g = circuit.gates[b.gate];
      const auto lam = gate_lambda(options, b.gate);
      if (g.arity() == 1) {
        auto set = gate_block(*reg, g.unitary, eps, id(b.input), id(b.bell),
                              lam);
        for (auto& link : set.links) {
          link.line = l;
          link.block = static_cast<int>(k);
          link.gate = static_cast<int>(b.gate);
        }
        for (auto& t : set.terms) terms.push_back(std::move(t));
        for (auto& t : set.links) links.push_back(std::move(t));
      } else if (g.targets[0] == l) {
        const int q_line = g.targets[1];
        const auto qk = block_of(q_line, b.gate);
        const auto& qb = layout[static_cast<std::size_t>(q_line)].blocks[qk];
        auto set = two_qubit_gate_block(*reg, g.unitary, eps, id(qb.input),
                                        id(qb.bell), id(b.input), id(b.bell),
                                        lam);
        set.links.at(0).line = l;
        set.links.at(0).block = static_cast<int>(k);
        set.links.at(1).line = q_line;
        set.links.at(1).block = static_cast<int>(qk);
        for (auto& link : set.links) link.gate = static_cast<int>(b.gate);
        for (auto& t : set.terms) terms.push_back(std::move(t));
        for (auto& t : set.links) links.push_back(std::move(t));
      }
      const auto next = k + 1 < line.blocks.size() ? line.blocks[k + 1].input
                                                   : line.terminal;
      terms.push_back(bell_pair_hamiltonian(*reg, id(b.bell), id(next), eps));
    }
  }
  for (const auto& p : circuit.projections) {
    const auto& line = layout[static_cast<std::size_t>(p.ancilla_line)];
    auto link = projection_term(*reg, id(line.terminal), p.basis, eps,
                                p.boost);
    link.line = p.ancilla_line;
    links.push_back(std::move(link));
  }
  HamiltonianSpec spec(reg, eps, std::move(terms), std::move(links),
                       options.lambda);
  return {circuit, options, reg, std::move(spec), std::move(layout)};
}

}  // namespace gsqc

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

#include "gsqc/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace gsqc {

int CircuitSpec::depth() const {
  int d = 0;
  for (const auto& g : gates) d = std::max(d, g.stage);
  return d;
}

std::vector<const GateSpec*> CircuitSpec::line_gates(int line) const {
  std::vector<const GateSpec*> out;
  for (const auto& g : gates) {
    if (std::find(g.targets.begin(), g.targets.end(), line) != g.targets.end()) {
      out.push_back(&g);
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const GateSpec* a, const GateSpec* b) {
                     return a->stage < b->stage;
                   });
  return out;
}

namespace gates {

Matrix identity() { return Matrix::Identity(2, 2); }

Matrix hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix m(2, 2);
  m << r, r, r, -r;
  return m;
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix phase_s() {
  Matrix m(2, 2);
  m << 1, 0, 0, kI;
  return m;
}

Matrix phase_t() {
  Matrix m(2, 2);
  m << 1, 0, 0, std::polar(1.0, M_PI / 4.0);
  return m;
}

Matrix cphase() { return phase_flip(3); }

Matrix cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

Matrix phase_flip(int marked) {
  if (marked < 0 || marked > 3) {
    throw ValidationError("phase_flip: marked state must be in 0..3");
  }
  Matrix m = Matrix::Identity(4, 4);
  m(marked, marked) = -1.0;
  return m;
}

Matrix named(std::string_view name) {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (key == "I") return identity();
  if (key == "H") return hadamard();
  if (key == "X") return pauli_x();
  if (key == "Y") return pauli_y();
  if (key == "Z") return pauli_z();
  if (key == "S") return phase_s();
  if (key == "T") return phase_t();
  if (key == "CPHASE" || key == "CZ") return cphase();
  if (key == "CNOT" || key == "CX") return cnot();
  throw ValidationError("unknown gate name '" + std::string(name) + "'");
}

Matrix random_unitary(int side, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix z(side, side);
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) z(i, j) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < side; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace gates

double unitarity_defect(const Matrix& u) {
  if (u.rows() != u.cols()) return INFINITY;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()))
      .cwiseAbs()
      .maxCoeff();
}

void validate(const CircuitSpec& circuit) {
  if (circuit.lines < 1) throw ValidationError("lines: must be >= 1");
  std::set<int> stages;
  std::set<std::pair<int, int>> occupied;
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const auto& g = circuit.gates[i];
    const std::string where = "gates[" + std::to_string(i) + "]";
    if (g.arity() != 1 && g.arity() != 2) {
      throw ValidationError(where + ".targets: need one or two targets");
    }
    const Eigen::Index side = g.arity() == 1 ? 2 : 4;
    if (g.unitary.rows() != side || g.unitary.cols() != side) {
      throw ValidationError(where + ": matrix must be " + std::to_string(side) +
                            "x" + std::to_string(side));
    }
    if (unitarity_defect(g.unitary) > 1e-12) {
      throw ValidationError(where + ": matrix is not unitary");
    }
    if (g.stage < 1) throw ValidationError(where + ".stage: must be >= 1");
    for (int t : g.targets) {
      if (t < 0 || t >= circuit.lines) {
        throw ValidationError(where + ".targets: line " + std::to_string(t) +
                              " out of range");
      }
      if (!occupied.insert({t, g.stage}).second) {
        throw ValidationError(where + ": line " + std::to_string(t) +
                              " already has a gate at stage " +
                              std::to_string(g.stage));
      }
    }
    if (g.arity() == 2 && g.targets[0] == g.targets[1]) {
      throw ValidationError(where + ".targets: two-qubit gate needs distinct lines");
    }
    stages.insert(g.stage);
  }
  int expected = 1;
  for (int s : stages) {
    if (s != expected) {
      throw ValidationError("gates: stage " + std::to_string(expected) +
                            " is empty (stages must be dense from 1)");
    }
    ++expected;
  }
  std::set<int> projected;
  for (std::size_t i = 0; i < circuit.projections.size(); ++i) {
    const auto& p = circuit.projections[i];
    const std::string where = "projections[" + std::to_string(i) + "]";
    if (p.ancilla_line < 0 || p.ancilla_line >= circuit.lines) {
      throw ValidationError(where + ".ancilla: line out of range");
    }
    if (!projected.insert(p.ancilla_line).second) {
      throw ValidationError(where + ".ancilla: line already projected");
    }
    if (p.boost && (*p.boost < 0.0 || !std::isfinite(*p.boost))) {
      throw ValidationError(where + ".lambda: must be finite and >= 0");
    }
  }
  if (circuit.mode == CircuitMode::Chain) {
    if (circuit.lines > 2) {
      throw ValidationError("mode: chain mode supports one or two lines");
    }
    if (!circuit.projections.empty()) {
      throw ValidationError("projections: not available in chain mode");
    }
  }
}

Vector simulate(const CircuitSpec& circuit) {
  validate(circuit);
  const int n = circuit.lines;
  const std::size_t dim = std::size_t{1} << n;
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(dim));
  psi(0) = 1.0;
  auto bit_of = [n](std::size_t index, int line) {
    return static_cast<int>((index >> (n - 1 - line)) & 1U);
  };
  std::vector<const GateSpec*> ordered;
  for (const auto& g : circuit.gates) ordered.push_back(&g);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const GateSpec* a, const GateSpec* b) {
                     return a->stage < b->stage;
                   });
  for (const auto* g : ordered) {
    Vector next = Vector::Zero(psi.size());
    for (std::size_t col = 0; col < dim; ++col) {
      const Complex a = psi(static_cast<Eigen::Index>(col));
      if (a == Complex(0.0)) continue;
      int local_col = 0;
      for (int t : g->targets) local_col = 2 * local_col + bit_of(col, t);
      const int local_dim = 1 << g->arity();
      for (int local_row = 0; local_row < local_dim; ++local_row) {
        const Complex u = g->unitary(local_row, local_col);
        if (u == Complex(0.0)) continue;
        std::size_t row = col;
        for (int k = 0; k < g->arity(); ++k) {
          const int bit = (local_row >> (g->arity() - 1 - k)) & 1;
          const std::size_t mask = std::size_t{1} << (n - 1 - g->targets[k]);
          row = bit ? (row | mask) : (row & ~mask);
        }
        next(static_cast<Eigen::Index>(row)) += u * a;
      }
    }
    psi = std::move(next);
  }
  return psi;
}

std::string bitstring(std::size_t index, int lines) {
  std::string out(static_cast<std::size_t>(lines), '0');
  for (int l = 0; l < lines; ++l) {
    if ((index >> (lines - 1 - l)) & 1U) out[static_cast<std::size_t>(l)] = '1';
  }
  return out;
}

const char* to_string(Basis basis) { return basis == Basis::Z ? "Z" : "X"; }

const char* to_string(CircuitMode mode) {
  return mode == CircuitMode::Chain ? "chain" : "teleport";
}

}  // namespace gsqc

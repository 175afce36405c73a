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

#include "gsqc/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

namespace gsqc {
namespace {

Orbital comp(int stage, int bit) { return Orbital::computational(stage, bit); }

const ParticleSpec& spec_of(const Register& reg, const ParticleId& id) {
  return reg.particle(reg.position(id));
}

LocalMatrix projector(const Register& reg, const ParticleId& id,
                      std::initializer_list<Orbital> orbitals) {
  return local_projector(spec_of(reg, id),
                         std::span<const Orbital>(orbitals.begin(),
                                                  orbitals.size()));
}

std::vector<Orbital> computational_orbitals(const ParticleSpec& p) {
  std::vector<Orbital> out;
  for (int s = 0; s < p.stages; ++s) {
    out.push_back(comp(s, 0));
    out.push_back(comp(s, 1));
  }
  return out;
}

NamedTerm product_term(const Register& reg, std::string label,
                       std::vector<LocalMatrix> factors, double epsilon) {
  return {std::move(label), to_cluster(reg, OperatorTerm{epsilon, factors})};
}

void require_idle(const Register& reg, const ParticleId& id, int min_stages) {
  const auto& p = spec_of(reg, id);
  if (!p.has_idle || p.stages < min_stages) {
    throw ValidationError("particle " + id.value + " needs " +
                          std::to_string(min_stages) +
                          " stage(s) and an IDLE orbital");
  }
}

// Cross penalties and the Lambda link shared by every teleported gate.
TermSet teleport_penalties_and_link(const Register& reg,
                                    const ParticleId& input,
                                    const ParticleId& bell, double epsilon,
                                    std::optional<double> lambda) {
  TermSet out;
  const auto& in_spec = spec_of(reg, input);
  const auto comp_in = computational_orbitals(in_spec);
  out.terms.push_back(product_term(
      reg, "idle(" + bell.value + ")*comp(" + input.value + ")",
      {projector(reg, bell, {Orbital::idle()}),
       local_projector(in_spec, comp_in)},
      epsilon));
  out.terms.push_back(product_term(
      reg, "comp(" + bell.value + ")*idle(" + input.value + ")",
      {projector(reg, bell, {comp(0, 0), comp(0, 1)}),
       projector(reg, input, {Orbital::idle()})},
      epsilon));

  LambdaLinkTerm link;
  link.label = "link(" + input.value + "," + bell.value + ")";
  link.particles = {input, bell};
  link.epsilon = epsilon;
  link.fixed_lambda = lambda;
  const double r = 1.0 / std::sqrt(2.0);
  auto t = ClusterVector::zero(reg, link.particles);
  t.add(reg, {comp(1, 1), comp(0, 0)}, r);
  t.add(reg, {comp(1, 0), comp(0, 1)}, -r);
  auto i = ClusterVector::zero(reg, link.particles);
  i.add(reg, {Orbital::idle(), Orbital::idle()}, 1.0);
  link.transition = t.amplitudes;
  link.idle = i.amplitudes;
  out.links.push_back(std::move(link));
  return out;
}

void check_block_particles(const Register& reg, const ParticleId& input,
                           const ParticleId& bell) {
  require_idle(reg, input, 2);
  require_idle(reg, bell, 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// LambdaLinkTerm

Eigen::Matrix2d LambdaLinkTerm::coefficients(double lambda) {
  const double d = 1.0 + lambda * lambda;
  Eigen::Matrix2d m;
  m << lambda * lambda / d, -lambda / d, -lambda / d, 1.0 / d;
  return m;
}

Eigen::Matrix2d LambdaLinkTerm::coefficient_derivative(double lambda,
                                                       int order) {
  const double l = lambda;
  const double d = 1.0 + l * l;
  Eigen::Matrix2d m;
  if (order == 0) return coefficients(lambda);
  if (order == 1) {
    const double d2 = d * d;
    m << 2.0 * l / d2, -(1.0 - l * l) / d2, -(1.0 - l * l) / d2,
        -2.0 * l / d2;
    return m;
  }
  if (order == 2) {
    const double d3 = d * d * d;
    const double diag = (2.0 - 6.0 * l * l) / d3;
    const double off = (6.0 * l - 2.0 * l * l * l) / d3;
    m << diag, off, off, -diag;
    return m;
  }
  throw ValidationError("coefficient_derivative: order must be 0, 1 or 2");
}

ClusterOperator LambdaLinkTerm::generator_block(int i, int j) const {
  const Vector& a = i == 0 ? transition : idle;
  const Vector& b = j == 0 ? transition : idle;
  return {particles, epsilon * a * b.adjoint()};
}

ClusterOperator LambdaLinkTerm::at(double lambda) const {
  return derivative_at(lambda, 0);
}

ClusterOperator LambdaLinkTerm::derivative_at(double lambda, int order) const {
  const auto m = coefficient_derivative(lambda, order);
  ClusterOperator out{particles,
                      Matrix::Zero(transition.size(), transition.size())};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (m(i, j) == 0.0) continue;
      const Vector& a = i == 0 ? transition : idle;
      const Vector& b = j == 0 ? transition : idle;
      out.matrix += (epsilon * m(i, j)) * a * b.adjoint();
    }
  }
  return out;
}

void TermSet::append(TermSet other) {
  for (auto& t : other.terms) terms.push_back(std::move(t));
  for (auto& l : other.links) links.push_back(std::move(l));
}

// ---------------------------------------------------------------------------
// HamiltonianSpec

HamiltonianSpec::HamiltonianSpec(RegisterPtr reg, double epsilon,
                                 std::vector<NamedTerm> terms,
                                 std::vector<LambdaLinkTerm> links,
                                 double default_lambda)
    : register_(std::move(reg)), epsilon_(epsilon), terms_(std::move(terms)),
      links_(std::move(links)), default_lambda_(default_lambda) {
  if (!(epsilon_ > 0.0) || !std::isfinite(epsilon_)) {
    throw ValidationError("epsilon must be positive and finite");
  }
}

std::size_t HamiltonianSpec::free_link_count() const {
  return static_cast<std::size_t>(
      std::count_if(links_.begin(), links_.end(),
                    [](const LambdaLinkTerm& l) { return !l.fixed_lambda; }));
}

SparseOperator HamiltonianSpec::evaluate(double lambda) const {
  std::vector<double> per_link(links_.size(), lambda);
  return evaluate_links(per_link);
}

SparseOperator HamiltonianSpec::evaluate_links(
    std::span<const double> link_lambdas) const {
  if (link_lambdas.size() != links_.size()) {
    throw ValidationError("evaluate_links: one value per link required");
  }
  std::vector<ClusterOperator> clusters;
  clusters.reserve(term_count());
  for (const auto& t : terms_) clusters.push_back(t.op);
  for (std::size_t i = 0; i < links_.size(); ++i) {
    clusters.push_back(links_[i].at(links_[i].lambda_for(link_lambdas[i])));
  }
  return assemble_clusters(register_, clusters, true);
}

SparseOperator HamiltonianSpec::derivative(double lambda, int order) const {
  std::vector<double> per_link(links_.size(), lambda);
  return derivative_links(per_link, order);
}

SparseOperator HamiltonianSpec::derivative_links(
    std::span<const double> link_lambdas, int order) const {
  if (order < 1 || order > 2) {
    throw ValidationError("derivative: order must be 1 or 2");
  }
  if (link_lambdas.size() != links_.size()) {
    throw ValidationError("derivative_links: one value per link required");
  }
  std::vector<ClusterOperator> clusters;
  for (std::size_t i = 0; i < links_.size(); ++i) {
    if (!links_[i].fixed_lambda) {
      clusters.push_back(links_[i].derivative_at(link_lambdas[i], order));
    }
  }
  return assemble_clusters(register_, clusters, true);
}

void HamiltonianSpec::apply(double lambda, const Vector& in,
                            Vector& out) const {
  out = Vector::Zero(in.size());
  for (const auto& t : terms_) apply_cluster(*register_, t.op, in, out);
  for (const auto& l : links_) {
    apply_cluster(*register_, l.at(l.lambda_for(lambda)), in, out);
  }
}

double HamiltonianSpec::max_term_entry(double lambda) const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, t.op.max_abs_entry());
  for (const auto& l : links_) {
    m = std::max(m, l.at(l.lambda_for(lambda)).max_abs_entry());
  }
  return m / epsilon_;
}

SparseOperator hamiltonian_derivative(const HamiltonianSpec& spec,
                                      double lambda, int order) {
  return spec.derivative(lambda, order);
}

// ---------------------------------------------------------------------------
// ParametricHamiltonian

ParametricHamiltonian::ParametricHamiltonian(const HamiltonianSpec& spec)
    : register_(spec.register_ptr()) {
  std::vector<ClusterOperator> fixed;
  for (const auto& t : spec.terms()) fixed.push_back(t.op);
  std::vector<ClusterOperator> g11_all, cross_all, g22_all;
  for (const auto& l : spec.links()) {
    free_.push_back(!l.fixed_lambda);
    if (l.fixed_lambda) {
      fixed.push_back(l.at(*l.fixed_lambda));
      links_.push_back({});
      continue;
    }
    auto g11 = l.generator_block(0, 0);
    auto cross = l.generator_block(0, 1);
    cross += l.generator_block(1, 0);
    auto g22 = l.generator_block(1, 1);
    Pieces p;
    p.g11 = assemble_clusters(register_, std::span(&g11, 1), true).matrix();
    p.cross = assemble_clusters(register_, std::span(&cross, 1), true).matrix();
    p.g22 = assemble_clusters(register_, std::span(&g22, 1), true).matrix();
    links_.push_back(std::move(p));
    g11_all.push_back(std::move(g11));
    cross_all.push_back(std::move(cross));
    g22_all.push_back(std::move(g22));
  }
  fixed_ = assemble_clusters(register_, fixed, true).matrix();
  summed_.g11 = assemble_clusters(register_, g11_all, true).matrix();
  summed_.cross = assemble_clusters(register_, cross_all, true).matrix();
  summed_.g22 = assemble_clusters(register_, g22_all, true).matrix();

  // Union pattern: unit values cannot cancel.
  auto ones = [](CsrMatrix m) {
    m.makeCompressed();
    std::fill_n(m.valuePtr(), m.nonZeros(), Complex(1.0));
    return m;
  };
  pattern_ = ones(fixed_) + ones(summed_.g11) + ones(summed_.cross) +
             ones(summed_.g22);
  for (const auto& p : links_) {
    if (p.g11.size() == 0) continue;
    pattern_ += ones(p.g11) + ones(p.cross) + ones(p.g22);
  }
  pattern_.makeCompressed();
  fixed_values_ = align(fixed_);
  summed_values_ = align(summed_);
  for (const auto& p : links_) {
    link_values_.push_back(p.g11.size() == 0 ? AlignedPieces{} : align(p));
  }
}

Vector ParametricHamiltonian::align(const CsrMatrix& piece) const {
  Vector values = Vector::Zero(pattern_.nonZeros());
  const auto* outer = pattern_.outerIndexPtr();
  const auto* inner = pattern_.innerIndexPtr();
  for (Eigen::Index r = 0; r < piece.outerSize(); ++r) {
    auto k = outer[r];
    for (CsrMatrix::InnerIterator it(piece, r); it; ++it) {
      while (inner[k] != it.col()) ++k;
      values(k) += it.value();
    }
  }
  return values;
}

ParametricHamiltonian::AlignedPieces ParametricHamiltonian::align(
    const Pieces& pieces) const {
  return {align(pieces.g11), align(pieces.cross), align(pieces.g22)};
}

void ParametricHamiltonian::prepare(CsrMatrix& out) const {
  if (out.nonZeros() != pattern_.nonZeros() || out.rows() != pattern_.rows()) {
    out = pattern_;
  }
}

void ParametricHamiltonian::combine(double fixed_weight,
                                    const LinkCoefficients& c,
                                    CsrMatrix& out) const {
  prepare(out);
  Eigen::Map<Vector> v(out.valuePtr(), out.nonZeros());
  v = fixed_weight * fixed_values_ + c.g11 * summed_values_.g11 +
      c.cross * summed_values_.cross + c.g22 * summed_values_.g22;
}

void ParametricHamiltonian::combine(double fixed_weight,
                                    std::span<const LinkCoefficients> per_link,
                                    CsrMatrix& out) const {
  if (per_link.size() != links_.size()) {
    throw ValidationError("combine: one value per link required");
  }
  prepare(out);
  Eigen::Map<Vector> v(out.valuePtr(), out.nonZeros());
  v = fixed_weight * fixed_values_;
  for (std::size_t i = 0; i < links_.size(); ++i) {
    if (!free_[i]) continue;
    const auto& c = per_link[i];
    const auto& p = link_values_[i];
    v += c.g11 * p.g11 + c.cross * p.cross + c.g22 * p.g22;
  }
}

ParametricHamiltonian::LinkCoefficients
ParametricHamiltonian::LinkCoefficients::at(double lambda) {
  const auto m = LambdaLinkTerm::coefficients(lambda);
  return {m(0, 0), m(0, 1), m(1, 1)};
}

ParametricHamiltonian::LinkCoefficients&
ParametricHamiltonian::LinkCoefficients::add(double weight,
                                             const LinkCoefficients& other) {
  g11 += weight * other.g11;
  cross += weight * other.cross;
  g22 += weight * other.g22;
  return *this;
}

void ParametricHamiltonian::apply_combination(double fixed_weight,
                                              const LinkCoefficients& c,
                                              const Vector& in,
                                              Vector& out) const {
  out.noalias() = fixed_weight * (fixed_ * in);
  out.noalias() += c.g11 * (summed_.g11 * in);
  out.noalias() += c.cross * (summed_.cross * in);
  out.noalias() += c.g22 * (summed_.g22 * in);
}

void ParametricHamiltonian::apply_combination(
    double fixed_weight, std::span<const LinkCoefficients> per_link,
    const Vector& in, Vector& out) const {
  if (per_link.size() != links_.size()) {
    throw ValidationError("apply: one value per link required");
  }
  out.noalias() = fixed_weight * (fixed_ * in);
  for (std::size_t i = 0; i < links_.size(); ++i) {
    if (!free_[i]) continue;
    const auto& c = per_link[i];
    out.noalias() += c.g11 * (links_[i].g11 * in);
    out.noalias() += c.cross * (links_[i].cross * in);
    out.noalias() += c.g22 * (links_[i].g22 * in);
  }
}

void ParametricHamiltonian::apply(double lambda, const Vector& in,
                                  Vector& out) const {
  apply_combination(1.0, LinkCoefficients::at(lambda), in, out);
}

void ParametricHamiltonian::apply(std::span<const double> link_lambdas,
                                  const Vector& in, Vector& out) const {
  if (link_lambdas.size() != links_.size()) {
    throw ValidationError("apply: one value per link required");
  }
  std::vector<LinkCoefficients> c;
  c.reserve(links_.size());
  for (double l : link_lambdas) c.push_back(LinkCoefficients::at(l));
  apply_combination(1.0, c, in, out);
}

SparseOperator ParametricHamiltonian::at(double lambda) const {
  const auto m = LambdaLinkTerm::coefficients(lambda);
  CsrMatrix h = fixed_ + Complex(m(0, 0)) * summed_.g11 +
                Complex(m(0, 1)) * summed_.cross +
                Complex(m(1, 1)) * summed_.g22;
  return {register_, std::move(h), true};
}

// ---------------------------------------------------------------------------
// Building blocks

NamedTerm boundary_term(const Register& reg, const ParticleId& particle,
                        double epsilon) {
  return product_term(reg, "boundary(" + particle.value + ")",
                      {projector(reg, particle, {comp(0, 1)})}, epsilon);
}

NamedTerm propagation_term(const Register& reg, const ParticleId& particle,
                           const Matrix& u, int from_stage, int to_stage,
                           double epsilon) {
  if (u.rows() != 2 || u.cols() != 2) {
    throw ValidationError("propagation_term: gate must be 2x2");
  }
  if (unitarity_defect(u) > 1e-12) {
    throw ValidationError("propagation_term: gate is not unitary");
  }
  const auto& p = spec_of(reg, particle);
  if (from_stage < 0 || to_stage >= p.stages) {
    throw ValidationError("propagation_term: stage out of range for " +
                          particle.value);
  }
  ClusterOperator op{{particle}, Matrix::Zero(p.orbital_count(),
                                              p.orbital_count())};
  for (int k = 0; k < 2; ++k) {
    auto w = ClusterVector::zero(reg, {particle});
    w.add(reg, {comp(to_stage, k)}, 1.0);
    for (int j = 0; j < 2; ++j) {
      w.add(reg, {comp(from_stage, j)}, -std::conj(u(k, j)));
    }
    op += ClusterOperator::outer(w, w, epsilon);
  }
  return {"prop(" + particle.value + "," + std::to_string(from_stage) + "->" +
              std::to_string(to_stage) + ")",
          std::move(op)};
}

NamedTerm joint_propagation_term(const Register& reg, const ParticleId& r,
                                 const ParticleId& q, const Matrix& u,
                                 int from_stage, int to_stage,
                                 double epsilon) {
  if (u.rows() != 4 || u.cols() != 4) {
    throw ValidationError("joint_propagation_term: gate must be 4x4");
  }
  if (unitarity_defect(u) > 1e-12) {
    throw ValidationError("joint_propagation_term: gate is not unitary");
  }
  auto zero = ClusterVector::zero(reg, {r, q});
  ClusterOperator op{zero.particles,
                     Matrix::Zero(zero.amplitudes.size(),
                                  zero.amplitudes.size())};
  for (int k = 0; k < 4; ++k) {
    auto a = zero;
    a.add(reg, {comp(to_stage, k >> 1), comp(to_stage, k & 1)}, 1.0);
    for (int j = 0; j < 4; ++j) {
      a.add(reg, {comp(from_stage, j >> 1), comp(from_stage, j & 1)},
            -std::conj(u(k, j)));
    }
    op += ClusterOperator::outer(a, a, epsilon);
  }
  return {"prop(" + r.value + "," + q.value + "," +
              std::to_string(from_stage) + "->" + std::to_string(to_stage) +
              ")",
          std::move(op)};
}

ChainSystem chain_hamiltonian(std::span<const Matrix> gates, double epsilon) {
  const int n = static_cast<int>(gates.size());
  const ParticleId id{"L0"};
  auto reg = build_register({ParticleSpec{id, n + 1, false}});
  std::vector<NamedTerm> terms;
  terms.push_back(boundary_term(*reg, id, epsilon));
  for (int s = 1; s <= n; ++s) {
    const auto& u = gates[static_cast<std::size_t>(s - 1)];
    if (unitarity_defect(u) > 1e-12) {
      throw ValidationError("chain_hamiltonian: gate " + std::to_string(s) +
                            " is not unitary");
    }
    terms.push_back(propagation_term(*reg, id, u, s - 1, s, epsilon));
  }
  HamiltonianSpec spec(reg, epsilon, std::move(terms), {});
  return {reg, std::move(spec)};
}

TermSet gate_block(const Register& reg, const Matrix& u, double epsilon,
                   const ParticleId& input, const ParticleId& bell,
                   std::optional<double> lambda) {
  check_block_particles(reg, input, bell);
  TermSet out;
  out.terms.push_back(propagation_term(reg, input, u, 0, 1, epsilon));
  out.append(teleport_penalties_and_link(reg, input, bell, epsilon, lambda));
  return out;
}

NamedTerm bell_pair_hamiltonian(const Register& reg, const ParticleId& a,
                                const ParticleId& b, double epsilon) {
  const auto zero = ClusterVector::zero(reg, {a, b});
  ClusterOperator op{zero.particles,
                     Matrix::Zero(zero.amplitudes.size(),
                                  zero.amplitudes.size())};
  // phi+, psi+, phi- on the stage-0 orbitals; the singlet is left free.
  const int signs[3][4] = {{1, 0, 0, 1}, {0, 1, 1, 0}, {1, 0, 0, -1}};
  for (const auto& s : signs) {
    auto v = zero;
    for (int k = 0; k < 4; ++k) {
      if (s[k] != 0) v.add(reg, {comp(0, k >> 1), comp(0, k & 1)}, s[k]);
    }
    op += ClusterOperator::outer(v, v, 0.5 * epsilon);
  }
  return {"bell(" + a.value + "," + b.value + ")", std::move(op)};
}

namespace {

TermSet two_qubit_common(const Register& reg, NamedTerm propagation,
                         double epsilon, const ParticleId& q_input,
                         const ParticleId& q_bell, const ParticleId& r_input,
                         const ParticleId& r_bell,
                         std::optional<double> lambda) {
  check_block_particles(reg, q_input, q_bell);
  check_block_particles(reg, r_input, r_bell);
  TermSet out;
  out.terms.push_back(std::move(propagation));
  // A line may not reach stage 1 of the gate while its partner is still
  // before it, in either direction.
  out.terms.push_back(product_term(
      reg, "sync(" + r_input.value + ">" + q_input.value + ")",
      {projector(reg, r_input, {Orbital::idle(), comp(1, 0), comp(1, 1)}),
       projector(reg, q_input, {comp(0, 0), comp(0, 1)})},
      epsilon));
  out.terms.push_back(product_term(
      reg, "sync(" + q_input.value + ">" + r_input.value + ")",
      {projector(reg, q_input, {Orbital::idle(), comp(1, 0), comp(1, 1)}),
       projector(reg, r_input, {comp(0, 0), comp(0, 1)})},
      epsilon));
  out.append(
      teleport_penalties_and_link(reg, r_input, r_bell, epsilon, lambda));
  out.append(
      teleport_penalties_and_link(reg, q_input, q_bell, epsilon, lambda));
  return out;
}

}  // namespace

TermSet two_qubit_gate_block(const Register& reg, const Matrix& u,
                             double epsilon, const ParticleId& q_input,
                             const ParticleId& q_bell,
                             const ParticleId& r_input,
                             const ParticleId& r_bell,
                             std::optional<double> lambda) {
  auto prop = joint_propagation_term(reg, r_input, q_input, u, 0, 1, epsilon);
  return two_qubit_common(reg, std::move(prop), epsilon, q_input, q_bell,
                          r_input, r_bell, lambda);
}

TermSet controlled_gate_block_explicit(const Register& reg, const Matrix& v,
                                       double epsilon,
                                       const ParticleId& q_input,
                                       const ParticleId& q_bell,
                                       const ParticleId& r_input,
                                       const ParticleId& r_bell,
                                       std::optional<double> lambda) {
  if (v.rows() != 2 || v.cols() != 2) {
    throw ValidationError("controlled gate: target operator must be 2x2");
  }
  const auto zero = ClusterVector::zero(reg, {r_input, q_input});
  ClusterOperator op{zero.particles,
                     Matrix::Zero(zero.amplitudes.size(),
                                  zero.amplitudes.size())};
  // Control off: both move unchanged. Control on: Q picks up V.
  for (int control = 0; control < 2; ++control) {
    const Matrix m = control == 0 ? Matrix::Identity(2, 2) : v;
    for (int q = 0; q < 2; ++q) {
      auto a = zero;
      a.add(reg, {comp(1, control), comp(1, q)}, 1.0);
      for (int j = 0; j < 2; ++j) {
        a.add(reg, {comp(0, control), comp(0, j)}, -std::conj(m(q, j)));
      }
      op += ClusterOperator::outer(a, a, epsilon);
    }
  }
  NamedTerm prop{"prop(" + r_input.value + "," + q_input.value + ",0->1)",
                 std::move(op)};
  return two_qubit_common(reg, std::move(prop), epsilon, q_input, q_bell,
                          r_input, r_bell, lambda);
}

LambdaLinkTerm projection_term(const Register& reg, const ParticleId& ancilla,
                               Basis basis, double epsilon,
                               std::optional<double> boost) {
  require_idle(reg, ancilla, 1);
  LambdaLinkTerm link;
  link.label = std::string("project") + to_string(basis) + "(" +
               ancilla.value + ")";
  link.particles = {ancilla};
  link.epsilon = epsilon;
  link.fixed_lambda = boost;
  auto t = ClusterVector::zero(reg, link.particles);
  if (basis == Basis::Z) {
    t.add(reg, {comp(0, 0)}, 1.0);
  } else {
    const double r = 1.0 / std::sqrt(2.0);
    t.add(reg, {comp(0, 0)}, r);
    t.add(reg, {comp(0, 1)}, r);
  }
  auto i = ClusterVector::zero(reg, link.particles);
  i.add(reg, {Orbital::idle()}, 1.0);
  link.transition = t.amplitudes;
  link.idle = i.amplitudes;
  return link;
}

}  // namespace gsqc

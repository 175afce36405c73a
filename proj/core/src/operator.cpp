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

#include "gsqc/operator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace gsqc {
namespace {

// Index arithmetic for embedding an operator on a particle subset.
struct ClusterLayout {
  std::vector<std::size_t> positions;
  std::size_t joint_dimension = 1;
  // Register offset of each joint basis index.
  std::vector<std::size_t> offsets;
  // Register indices whose cluster digits are all zero.
  std::vector<std::size_t> bases;
};

ClusterLayout make_layout(const Register& reg,
                          std::span<const ParticleId> particles) {
  ClusterLayout layout;
  std::set<std::size_t> used;
  for (const auto& id : particles) {
    const auto pos = reg.position(id);
    if (!used.insert(pos).second) {
      throw ValidationError("particle " + id.value +
                            " appears twice in one term");
    }
    layout.positions.push_back(pos);
    layout.joint_dimension *=
        static_cast<std::size_t>(reg.particle(pos).orbital_count());
  }

  layout.offsets.resize(layout.joint_dimension);
  for (std::size_t j = 0; j < layout.joint_dimension; ++j) {
    std::size_t rem = j;
    std::size_t offset = 0;
    for (std::size_t k = layout.positions.size(); k-- > 0;) {
      const auto pos = layout.positions[k];
      const auto radix =
          static_cast<std::size_t>(reg.particle(pos).orbital_count());
      offset += (rem % radix) * reg.stride(pos);
      rem /= radix;
    }
    layout.offsets[j] = offset;
  }

  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < reg.particle_count(); ++i) {
    if (!used.contains(i)) rest.push_back(i);
  }
  const std::size_t count = reg.dimension() / layout.joint_dimension;
  layout.bases.reserve(count);
  std::vector<int> odometer(rest.size(), 0);
  std::size_t base = 0;
  for (std::size_t n = 0; n < count; ++n) {
    layout.bases.push_back(base);
    for (std::size_t k = rest.size(); k-- > 0;) {
      const auto pos = rest[k];
      if (++odometer[k] < reg.particle(pos).orbital_count()) {
        base += reg.stride(pos);
        break;
      }
      base -= static_cast<std::size_t>(odometer[k] - 1) * reg.stride(pos);
      odometer[k] = 0;
    }
  }
  return layout;
}

struct Entry {
  std::size_t row;
  std::size_t col;
  Complex value;
};

std::vector<Entry> nonzero_entries(const Matrix& m) {
  std::vector<Entry> out;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (m(r, c) != Complex(0.0)) {
        out.push_back({static_cast<std::size_t>(r),
                       static_cast<std::size_t>(c), m(r, c)});
      }
    }
  }
  return out;
}

void check_cluster_shape(const ClusterLayout& layout, const Matrix& m) {
  const auto n = static_cast<Eigen::Index>(layout.joint_dimension);
  if (m.rows() != n || m.cols() != n) {
    throw ValidationError("cluster matrix shape does not match its particles");
  }
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

using Triplet = Eigen::Triplet<Complex>;

void push_cluster(const Register& reg, const ClusterOperator& cluster,
                  double weight, std::vector<Triplet>& triplets) {
  const auto layout = make_layout(reg, cluster.particles);
  check_cluster_shape(layout, cluster.matrix);
  const auto entries = nonzero_entries(cluster.matrix);
  triplets.reserve(triplets.size() + entries.size() * layout.bases.size());
  for (const auto base : layout.bases) {
    for (const auto& e : entries) {
      triplets.emplace_back(static_cast<int>(base + layout.offsets[e.row]),
                            static_cast<int>(base + layout.offsets[e.col]),
                            weight * e.value);
    }
  }
}

CsrMatrix from_triplets(std::size_t n, const std::vector<Triplet>& triplets) {
  CsrMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------

ClusterVector ClusterVector::zero(const Register& reg,
                                  std::vector<ParticleId> particles) {
  std::size_t dim = 1;
  for (const auto& id : particles) {
    dim *= static_cast<std::size_t>(
        reg.particle(reg.position(id)).orbital_count());
  }
  return {std::move(particles), Vector::Zero(static_cast<Eigen::Index>(dim))};
}

ClusterVector& ClusterVector::add(const Register& reg,
                                  std::span<const Orbital> orbitals,
                                  Complex amplitude) {
  if (orbitals.size() != particles.size()) {
    throw ValidationError("orbital tuple length does not match cluster");
  }
  std::size_t index = 0;
  for (std::size_t k = 0; k < particles.size(); ++k) {
    const auto& spec = reg.particle(reg.position(particles[k]));
    index = index * static_cast<std::size_t>(spec.orbital_count()) +
            static_cast<std::size_t>(spec.index_of(orbitals[k]));
  }
  amplitudes(static_cast<Eigen::Index>(index)) += amplitude;
  return *this;
}

ClusterOperator ClusterOperator::outer(const ClusterVector& ket,
                                       const ClusterVector& bra,
                                       Complex scale) {
  if (ket.particles != bra.particles) {
    throw ValidationError("outer product of vectors on different particles");
  }
  return {ket.particles, scale * ket.amplitudes * bra.amplitudes.adjoint()};
}

ClusterOperator& ClusterOperator::operator+=(const ClusterOperator& other) {
  if (particles != other.particles) {
    throw ValidationError("adding cluster operators on different particles");
  }
  matrix += other.matrix;
  return *this;
}

double ClusterOperator::max_abs_entry() const {
  return matrix.size() == 0 ? 0.0 : matrix.cwiseAbs().maxCoeff();
}

ClusterOperator to_cluster(const Register& reg, const OperatorTerm& term) {
  ClusterOperator out;
  Matrix product = Matrix::Identity(1, 1);
  for (const auto& factor : term.factors) {
    const auto& spec = reg.particle(reg.position(factor.particle));
    const auto n = static_cast<Eigen::Index>(spec.orbital_count());
    if (factor.entries.rows() != n || factor.entries.cols() != n) {
      throw ValidationError("local matrix on " + factor.particle.value +
                            " is not " + std::to_string(n) + "x" +
                            std::to_string(n));
    }
    out.particles.push_back(factor.particle);
    product = kron(product, factor.entries);
  }
  out.matrix = term.coefficient * product;
  return out;
}

// ---------------------------------------------------------------------------

StateVector::StateVector(RegisterPtr reg, Vector amplitudes)
    : register_(std::move(reg)), amplitudes_(std::move(amplitudes)) {
  if (!register_) throw ValidationError("state without register");
  if (static_cast<std::size_t>(amplitudes_.size()) != register_->dimension()) {
    throw ValidationError("state length does not match register dimension");
  }
}

StateVector StateVector::zero(RegisterPtr reg) {
  const auto n = static_cast<Eigen::Index>(reg->dimension());
  return {std::move(reg), Vector::Zero(n)};
}

StateVector StateVector::basis(RegisterPtr reg, std::size_t index) {
  auto out = zero(std::move(reg));
  out.amplitudes_(static_cast<Eigen::Index>(index)) = 1.0;
  return out;
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw ValidationError("cannot normalize a zero or non-finite state");
  }
  return {register_, amplitudes_ / n};
}

Complex StateVector::inner(const StateVector& other) const {
  if (!(reg() == other.reg())) {
    throw ValidationError("inner product of states on different registers");
  }
  return amplitudes_.dot(other.amplitudes_);
}

bool StateVector::is_finite() const { return amplitudes_.allFinite(); }

// ---------------------------------------------------------------------------

SparseOperator::SparseOperator(RegisterPtr reg, CsrMatrix matrix,
                               bool hermitian)
    : register_(std::move(reg)), matrix_(std::move(matrix)),
      hermitian_(hermitian) {
  const auto n = static_cast<Eigen::Index>(register_->dimension());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw ValidationError("operator side does not match register dimension");
  }
  if (hermitian_) {
    CsrMatrix adjoint = matrix_.adjoint();
    matrix_ = (matrix_ + adjoint) * 0.5;
    matrix_.prune(Complex(0.0));
    matrix_.makeCompressed();
  }
}

SparseOperator SparseOperator::zero(RegisterPtr reg, bool hermitian) {
  const auto n = static_cast<Eigen::Index>(reg->dimension());
  return {std::move(reg), CsrMatrix(n, n), hermitian};
}

SparseOperator SparseOperator::identity(RegisterPtr reg) {
  const auto n = static_cast<Eigen::Index>(reg->dimension());
  CsrMatrix m(n, n);
  m.setIdentity();
  return {std::move(reg), std::move(m), true};
}

StateVector SparseOperator::apply(const StateVector& in) const {
  if (!(reg() == in.reg())) {
    throw ValidationError("operator and state live on different registers");
  }
  return {register_, matrix_ * in.amplitudes()};
}

Complex SparseOperator::expectation(const StateVector& state) const {
  return state.amplitudes().dot(matrix_ * state.amplitudes());
}

Matrix SparseOperator::dense() const { return Matrix(matrix_); }

double SparseOperator::max_abs_entry() const {
  double best = 0.0;
  for (Eigen::Index k = 0; k < matrix_.outerSize(); ++k) {
    for (CsrMatrix::InnerIterator it(matrix_, k); it; ++it) {
      best = std::max(best, std::abs(it.value()));
    }
  }
  return best;
}

double SparseOperator::max_abs_offdiagonal() const {
  double best = 0.0;
  for (Eigen::Index k = 0; k < matrix_.outerSize(); ++k) {
    for (CsrMatrix::InnerIterator it(matrix_, k); it; ++it) {
      if (it.row() != it.col()) best = std::max(best, std::abs(it.value()));
    }
  }
  return best;
}

double SparseOperator::max_abs_diagonal() const {
  double best = 0.0;
  for (Eigen::Index k = 0; k < matrix_.outerSize(); ++k) {
    for (CsrMatrix::InnerIterator it(matrix_, k); it; ++it) {
      if (it.row() == it.col()) best = std::max(best, std::abs(it.value()));
    }
  }
  return best;
}

double SparseOperator::hermiticity_defect() const {
  CsrMatrix adjoint = matrix_.adjoint();
  CsrMatrix diff = matrix_ - adjoint;
  double best = 0.0;
  for (Eigen::Index k = 0; k < diff.outerSize(); ++k) {
    for (CsrMatrix::InnerIterator it(diff, k); it; ++it) {
      best = std::max(best, std::abs(it.value()));
    }
  }
  return best;
}

SparseOperator SparseOperator::operator+(const SparseOperator& other) const {
  if (!(reg() == other.reg())) {
    throw ValidationError("adding operators on different registers");
  }
  return {register_, CsrMatrix(matrix_ + other.matrix_),
          hermitian_ && other.hermitian_};
}

SparseOperator SparseOperator::operator*(double scale) const {
  return {register_, CsrMatrix(matrix_ * Complex(scale)), hermitian_};
}

// ---------------------------------------------------------------------------

SparseOperator embed(const RegisterPtr& reg, const LocalMatrix& local) {
  OperatorTerm term{1.0, {local}};
  const auto cluster = to_cluster(*reg, term);
  std::vector<Triplet> triplets;
  push_cluster(*reg, cluster, 1.0, triplets);
  const bool hermitian =
      (local.entries - local.entries.adjoint()).cwiseAbs().maxCoeff() == 0.0;
  return {reg, from_triplets(reg->dimension(), triplets), hermitian};
}

SparseOperator assemble(const RegisterPtr& reg,
                        std::span<const OperatorTerm> terms, bool hermitize) {
  std::vector<Triplet> triplets;
  for (const auto& term : terms) {
    auto cluster = to_cluster(*reg, term);
    push_cluster(*reg, cluster, 1.0, triplets);
    if (hermitize && cluster.matrix != cluster.matrix.adjoint()) {
      cluster.matrix = cluster.matrix.adjoint().eval();
      push_cluster(*reg, cluster, 1.0, triplets);
    }
  }
  return {reg, from_triplets(reg->dimension(), triplets), hermitize};
}

SparseOperator assemble_clusters(const RegisterPtr& reg,
                                 std::span<const ClusterOperator> clusters,
                                 std::span<const double> weights,
                                 bool hermitian) {
  if (weights.size() != clusters.size()) {
    throw ValidationError("one weight per cluster required");
  }
  std::vector<Triplet> triplets;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (weights[i] != 0.0) push_cluster(*reg, clusters[i], weights[i], triplets);
  }
  return {reg, from_triplets(reg->dimension(), triplets), hermitian};
}

SparseOperator assemble_clusters(const RegisterPtr& reg,
                                 std::span<const ClusterOperator> clusters,
                                 bool hermitian) {
  std::vector<double> ones(clusters.size(), 1.0);
  return assemble_clusters(reg, clusters, ones, hermitian);
}

void apply_cluster(const Register& reg, const ClusterOperator& cluster,
                   const Vector& in, Vector& out, Complex scale) {
  const auto layout = make_layout(reg, cluster.particles);
  check_cluster_shape(layout, cluster.matrix);
  const auto entries = nonzero_entries(cluster.matrix);
  for (const auto base : layout.bases) {
    for (const auto& e : entries) {
      out(static_cast<Eigen::Index>(base + layout.offsets[e.row])) +=
          scale * e.value *
          in(static_cast<Eigen::Index>(base + layout.offsets[e.col]));
    }
  }
}

std::vector<double> occupation_distribution(const StateVector& state,
                                            const ParticleId& particle) {
  const double n = state.norm();
  if (std::abs(n - 1.0) > 1e-10) {
    throw ValidationError("occupation_distribution needs a normalized state");
  }
  const auto& reg = state.reg();
  const auto pos = reg.position(particle);
  std::vector<double> out(
      static_cast<std::size_t>(reg.particle(pos).orbital_count()), 0.0);
  const auto& amps = state.amplitudes();
  for (std::size_t i = 0; i < reg.dimension(); ++i) {
    out[static_cast<std::size_t>(reg.digit(i, pos))] +=
        std::norm(amps(static_cast<Eigen::Index>(i)));
  }
  return out;
}

LocalMatrix local_projector(const ParticleSpec& particle,
                            std::span<const Orbital> orbitals) {
  const auto n = particle.orbital_count();
  LocalMatrix out{particle.id, Matrix::Zero(n, n)};
  for (const auto& o : orbitals) {
    const auto k = particle.index_of(o);
    out.entries(k, k) = 1.0;
  }
  return out;
}

LocalMatrix local_transition(const ParticleSpec& particle, const Orbital& to,
                             const Orbital& from) {
  const auto n = particle.orbital_count();
  LocalMatrix out{particle.id, Matrix::Zero(n, n)};
  out.entries(particle.index_of(to), particle.index_of(from)) = 1.0;
  return out;
}

}  // namespace gsqc

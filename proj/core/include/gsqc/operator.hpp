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

#include <span>
#include <string>
#include <vector>

#include "gsqc/common.hpp"
#include "gsqc/register.hpp"

namespace gsqc {

/// Dense operator on the orbitals of a single particle.
struct LocalMatrix {
  ParticleId particle;
  Matrix entries;
};

/// coefficient * (product of local factors), identity elsewhere.
struct OperatorTerm {
  Complex coefficient{1.0, 0.0};
  std::vector<LocalMatrix> factors;
};

/// Vector on the joint orbital space of a few particles (first particle
/// slowest, same convention as Register).
struct ClusterVector {
  std::vector<ParticleId> particles;
  Vector amplitudes;

  static ClusterVector zero(const Register& reg,
                            std::vector<ParticleId> particles);
  /// Adds `amplitude` to the entry whose per-particle orbitals are `orbitals`.
  ClusterVector& add(const Register& reg, std::span<const Orbital> orbitals,
                     Complex amplitude);
  ClusterVector& add(const Register& reg,
                     std::initializer_list<Orbital> orbitals,
                     Complex amplitude) {
    return add(reg, std::span<const Orbital>(orbitals.begin(), orbitals.size()),
               amplitude);
  }
};

/// Dense operator on the joint orbital space of a few particles. Every
/// Hamiltonian term in this library acts on at most two particles.
struct ClusterOperator {
  std::vector<ParticleId> particles;
  Matrix matrix;

  /// |ket><bra| * scale; both vectors must live on the same particles.
  static ClusterOperator outer(const ClusterVector& ket,
                               const ClusterVector& bra, Complex scale = 1.0);
  ClusterOperator& operator+=(const ClusterOperator& other);
  double max_abs_entry() const;
};

/// Joint matrix of a product term (Kronecker product in register order of the
/// factor list as given).
ClusterOperator to_cluster(const Register& reg, const OperatorTerm& term);

class StateVector {
 public:
  StateVector() = default;
  StateVector(RegisterPtr reg, Vector amplitudes);
  static StateVector zero(RegisterPtr reg);
  static StateVector basis(RegisterPtr reg, std::size_t index);

  const RegisterPtr& register_ptr() const { return register_; }
  const Register& reg() const { return *register_; }
  const Vector& amplitudes() const { return amplitudes_; }
  Vector& amplitudes() { return amplitudes_; }
  std::size_t size() const { return static_cast<std::size_t>(amplitudes_.size()); }

  double norm() const { return amplitudes_.norm(); }
  /// Unit-norm copy; throws ValidationError on a zero or non-finite vector.
  StateVector normalized() const;
  Complex inner(const StateVector& other) const;  // <this|other>
  bool is_finite() const;

 private:
  RegisterPtr register_;
  Vector amplitudes_;
};

/// Sparse operator on a register, stored row-compressed.
class SparseOperator {
 public:
  SparseOperator() = default;
  /// With `hermitian` set, the matrix is replaced by (M + M^dagger)/2 so that
  /// M - M^dagger vanishes exactly.
  SparseOperator(RegisterPtr reg, CsrMatrix matrix, bool hermitian);
  static SparseOperator zero(RegisterPtr reg, bool hermitian = true);
  static SparseOperator identity(RegisterPtr reg);

  const RegisterPtr& register_ptr() const { return register_; }
  const Register& reg() const { return *register_; }
  const CsrMatrix& matrix() const { return matrix_; }
  bool is_hermitian() const { return hermitian_; }
  std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t nonzeros() const { return static_cast<std::size_t>(matrix_.nonZeros()); }

  Vector apply(const Vector& in) const { return matrix_ * in; }
  StateVector apply(const StateVector& in) const;
  Complex expectation(const StateVector& state) const;
  Matrix dense() const;

  double max_abs_entry() const;
  double max_abs_offdiagonal() const;
  double max_abs_diagonal() const;
  /// max |<i|M - M^dagger|j>|.
  double hermiticity_defect() const;

  SparseOperator operator+(const SparseOperator& other) const;
  SparseOperator operator*(double scale) const;

 private:
  RegisterPtr register_;
  CsrMatrix matrix_;
  bool hermitian_ = false;
};

/// Kronecker embedding of a single-particle operator.
SparseOperator embed(const RegisterPtr& reg, const LocalMatrix& local);

/// Sum of embedded product terms. With `hermitize`, any term whose joint
/// matrix is not Hermitian is added together with its adjoint.
SparseOperator assemble(const RegisterPtr& reg,
                        std::span<const OperatorTerm> terms, bool hermitize);

/// Sum of embedded cluster operators, each multiplied by its weight.
SparseOperator assemble_clusters(const RegisterPtr& reg,
                                 std::span<const ClusterOperator> clusters,
                                 std::span<const double> weights,
                                 bool hermitian);
SparseOperator assemble_clusters(const RegisterPtr& reg,
                                 std::span<const ClusterOperator> clusters,
                                 bool hermitian);

/// out += scale * (cluster embedded) * in, without forming the sparse matrix.
void apply_cluster(const Register& reg, const ClusterOperator& cluster,
                   const Vector& in, Vector& out, Complex scale = 1.0);

/// Probability of each orbital of `particle`. Requires a normalized state.
std::vector<double> occupation_distribution(const StateVector& state,
                                            const ParticleId& particle);

/// Projector onto the listed orbitals of one particle.
LocalMatrix local_projector(const ParticleSpec& particle,
                            std::span<const Orbital> orbitals);
/// |to><from| on one particle.
LocalMatrix local_transition(const ParticleSpec& particle, const Orbital& to,
                             const Orbital& from);

}  // namespace gsqc

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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gsqc/circuit.hpp"
#include "gsqc/common.hpp"
#include "gsqc/operator.hpp"
#include "gsqc/register.hpp"

namespace gsqc {

/// A Lambda-independent Hamiltonian term, already scaled by epsilon.
struct NamedTerm {
  std::string label;
  ClusterOperator op;
};

/// Rank-one link epsilon (L t - i)(L t - i)^dagger / (1 + L^2), written as
/// epsilon * sum_ij M_ij(L) |g_i><g_j| with g_1 = t (the transition
/// generator) and g_2 = i (the idle generator).
///
/// M(L) = [[L^2, -L], [-L, 1]] / (1 + L^2) is a rank-one projector for every
/// L, so det M = 0 and trace M = 1.
struct LambdaLinkTerm {
  std::string label;
  std::vector<ParticleId> particles;
  Vector transition;
  Vector idle;
  double epsilon = 1.0;
  /// Set for links that ignore the global parameter (projection boosts,
  /// per-gate overrides).
  std::optional<double> fixed_lambda;
  // Provenance within a compiled circuit; -1 when built by hand.
  int line = -1;
  int block = -1;
  int gate = -1;

  double lambda_for(double global) const {
    return fixed_lambda.value_or(global);
  }

  static Eigen::Matrix2d coefficients(double lambda);
  /// Closed-form first or second derivative of coefficients().
  static Eigen::Matrix2d coefficient_derivative(double lambda, int order);

  /// epsilon * |g_i><g_j| for i, j in {0, 1}.
  ClusterOperator generator_block(int i, int j) const;
  ClusterOperator at(double lambda) const;
  ClusterOperator derivative_at(double lambda, int order) const;
};

/// Terms emitted by one building block.
struct TermSet {
  std::vector<NamedTerm> terms;
  std::vector<LambdaLinkTerm> links;

  void append(TermSet other);
};

/// Sum of static terms and Lambda links on one register. Immutable; every
/// query assembles fresh so concurrent evaluation at different Lambda is safe.
class HamiltonianSpec {
 public:
  HamiltonianSpec(RegisterPtr reg, double epsilon, std::vector<NamedTerm> terms,
                  std::vector<LambdaLinkTerm> links,
                  double default_lambda = 4.0);

  const RegisterPtr& register_ptr() const { return register_; }
  const Register& reg() const { return *register_; }
  double epsilon() const { return epsilon_; }
  double default_lambda() const { return default_lambda_; }
  const std::vector<NamedTerm>& terms() const { return terms_; }
  const std::vector<LambdaLinkTerm>& links() const { return links_; }
  std::size_t term_count() const { return terms_.size() + links_.size(); }
  /// Number of links that follow the global parameter.
  std::size_t free_link_count() const;

  SparseOperator evaluate(double lambda) const;
  SparseOperator evaluate() const { return evaluate(default_lambda_); }
  /// One value per link (in links() order); fixed links ignore their entry.
  SparseOperator evaluate_links(std::span<const double> link_lambdas) const;

  /// d^order H / dLambda^order at the global parameter; fixed links and
  /// static terms contribute nothing.
  SparseOperator derivative(double lambda, int order) const;
  /// Sum over free links of d^order/dL^order of each link at its own value.
  SparseOperator derivative_links(std::span<const double> link_lambdas,
                                  int order) const;

  /// out = H(lambda) in, term by term, without building the sparse matrix.
  void apply(double lambda, const Vector& in, Vector& out) const;

  /// Largest |entry| / epsilon over individual terms (links at `lambda`).
  double max_term_entry(double lambda) const;

 private:
  RegisterPtr register_;
  double epsilon_;
  std::vector<NamedTerm> terms_;
  std::vector<LambdaLinkTerm> links_;
  double default_lambda_;
};

SparseOperator hamiltonian_derivative(const HamiltonianSpec& spec,
                                      double lambda, int order);

/// Pre-assembled pieces of a HamiltonianSpec for repeated products at many
/// Lambda values (time stepping, sweeps of matvecs).
class ParametricHamiltonian {
 public:
  explicit ParametricHamiltonian(const HamiltonianSpec& spec);

  const RegisterPtr& register_ptr() const { return register_; }
  std::size_t dimension() const { return register_->dimension(); }
  std::size_t link_count() const { return links_.size(); }

  /// out = H(lambda) in with every free link at `lambda`.
  void apply(double lambda, const Vector& in, Vector& out) const;
  /// Per-link parameters (fixed links ignore their entry).
  void apply(std::span<const double> link_lambdas, const Vector& in,
             Vector& out) const;
  SparseOperator at(double lambda) const;

  /// Weights of the three generator blocks of one link.
  struct LinkCoefficients {
    double g11 = 0.0;
    double cross = 0.0;
    double g22 = 0.0;

    static LinkCoefficients at(double lambda);
    LinkCoefficients& add(double weight, const LinkCoefficients& other);
  };

  /// out = (fixed_weight * static part + sum_links c_l . generators_l) in.
  /// `all_free` applies to every free link; fixed links are part of the
  /// static part.
  void apply_combination(double fixed_weight, const LinkCoefficients& all_free,
                         const Vector& in, Vector& out) const;
  /// One coefficient triple per link (fixed links ignore their entry).
  void apply_combination(double fixed_weight,
                         std::span<const LinkCoefficients> per_link,
                         const Vector& in, Vector& out) const;

  /// The same combinations as one assembled matrix, written into `out`
  /// (which keeps its storage across calls on a shared sparsity pattern).
  void combine(double fixed_weight, const LinkCoefficients& all_free,
               CsrMatrix& out) const;
  void combine(double fixed_weight, std::span<const LinkCoefficients> per_link,
               CsrMatrix& out) const;

 private:
  struct Pieces {
    CsrMatrix g11;
    CsrMatrix cross;  // |g1><g2| + |g2><g1|
    CsrMatrix g22;
  };
  // Values of each piece on the union sparsity pattern.
  struct AlignedPieces {
    Vector g11;
    Vector cross;
    Vector g22;
  };
  Vector align(const CsrMatrix& piece) const;
  AlignedPieces align(const Pieces& pieces) const;
  void prepare(CsrMatrix& out) const;

  RegisterPtr register_;
  CsrMatrix fixed_;
  Pieces summed_;
  std::vector<Pieces> links_;
  std::vector<bool> free_;
  CsrMatrix pattern_;
  Vector fixed_values_;
  AlignedPieces summed_values_;
  std::vector<AlignedPieces> link_values_;
};

// ---------------------------------------------------------------------------
// Building blocks.

struct ChainSystem {
  RegisterPtr reg;
  HamiltonianSpec spec;
};

/// Single qubit, N gates, no teleportation: one particle with N + 1 stages,
/// boundary term epsilon |1_0><1_0| plus one propagation term per stage.
ChainSystem chain_hamiltonian(std::span<const Matrix> gates,
                              double epsilon = 1.0);

/// epsilon |1_0><1_0| on the first particle of a line.
NamedTerm boundary_term(const Register& reg, const ParticleId& particle,
                        double epsilon);

/// sum_k |w_k><w_k| with w_k = |k_to> - sum_j conj(U_kj) |j_from> on one
/// particle: (C_to^dagger - C_from^dagger U^dagger)(C_to - U C_from).
NamedTerm propagation_term(const Register& reg, const ParticleId& particle,
                           const Matrix& u, int from_stage, int to_stage,
                           double epsilon);

/// Two-particle version for a 4x4 gate on (r, q), r the more significant bit:
/// sum_k |a_k><a_k| with a_k = |k at to_stage> - sum_j conj(U_kj)|j at
/// from_stage>, both particles moving together.
NamedTerm joint_propagation_term(const Register& reg, const ParticleId& r,
                                 const ParticleId& q, const Matrix& u,
                                 int from_stage, int to_stage, double epsilon);

/// Teleported single-qubit gate between `input` (2 stages + IDLE) and its
/// Bell partner `bell` (1 stage + IDLE): propagation, the two cross penalties
/// and one Lambda link.
TermSet gate_block(const Register& reg, const Matrix& u, double epsilon,
                   const ParticleId& input, const ParticleId& bell,
                   std::optional<double> lambda = std::nullopt);

/// epsilon/2 times the three non-singlet Bell projectors on the stage-0
/// orbitals of (a, b); its kernel on that block is the singlet.
NamedTerm bell_pair_hamiltonian(const Register& reg, const ParticleId& a,
                                const ParticleId& b, double epsilon);

/// Teleported two-qubit gate. `u` acts on (R, Q) with R the more significant
/// bit. Emits the joint propagation term, the two synchronization penalties,
/// and for each line its cross penalties and Lambda link.
TermSet two_qubit_gate_block(const Register& reg, const Matrix& u,
                             double epsilon, const ParticleId& q_input,
                             const ParticleId& q_bell,
                             const ParticleId& r_input,
                             const ParticleId& r_bell,
                             std::optional<double> lambda = std::nullopt);

/// Same block for a controlled-V gate (control R) written out line by line:
/// the R=1 branch carries V on Q, the R=0 branch the identity. With V = Z this
/// is the explicit CPHASE form; with V = X it is CNOT.
TermSet controlled_gate_block_explicit(const Register& reg, const Matrix& v,
                                       double epsilon,
                                       const ParticleId& q_input,
                                       const ParticleId& q_bell,
                                       const ParticleId& r_input,
                                       const ParticleId& r_bell,
                                       std::optional<double> lambda =
                                           std::nullopt);

/// Syndrome projection on an ancilla with 1 stage + IDLE; generators |0_0>
/// (Z) or (|0_0> + |1_0>)/sqrt(2) (X), and |IDLE>.
LambdaLinkTerm projection_term(const Register& reg, const ParticleId& ancilla,
                               Basis basis, double epsilon,
                               std::optional<double> boost = std::nullopt);

}  // namespace gsqc

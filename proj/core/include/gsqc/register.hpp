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

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gsqc/common.hpp"

namespace gsqc {

/// Opaque particle label, e.g. "L0.in1".
struct ParticleId {
  std::string value;

  auto operator<=>(const ParticleId&) const = default;
};

/// Single-particle state: |b_s> for a computational stage, or |IDLE>.
struct Orbital {
  enum class Kind { Computational, Idle };

  Kind kind = Kind::Computational;
  int stage = 0;
  int bit = 0;

  static Orbital computational(int stage, int bit) {
    return {Kind::Computational, stage, bit};
  }
  static Orbital idle() { return {Kind::Idle, 0, 0}; }

  bool is_idle() const { return kind == Kind::Idle; }
  bool operator==(const Orbital&) const = default;
};

/// One particle of the register. Orbital order inside a particle is
/// 0_0, 1_0, 0_1, 1_1, ..., then IDLE last when present.
struct ParticleSpec {
  ParticleId id;
  int stages = 1;
  bool has_idle = false;

  int orbital_count() const { return 2 * stages + (has_idle ? 1 : 0); }
  int index_of(const Orbital& orbital) const;
  Orbital orbital_at(int index) const;
  int idle_index() const;

  bool operator==(const ParticleSpec&) const = default;
};

/// Tensor-product space of the one-particle-per-slot sector.
///
/// Basis states are orbital tuples ordered lexicographically with the first
/// particle varying slowest; `stride(i)` is the basis-index step of particle i.
class Register {
 public:
  static constexpr std::uint64_t kDefaultDimensionCap = std::uint64_t{1} << 26;

  explicit Register(std::vector<ParticleSpec> particles,
                    std::uint64_t dimension_cap = kDefaultDimensionCap);

  std::size_t dimension() const { return dimension_; }
  std::size_t particle_count() const { return particles_.size(); }
  const std::vector<ParticleSpec>& particles() const { return particles_; }
  const ParticleSpec& particle(std::size_t i) const { return particles_[i]; }

  /// Position of `id` in the particle list; throws ValidationError if absent.
  std::size_t position(const ParticleId& id) const;
  bool contains(const ParticleId& id) const;

  std::size_t stride(std::size_t particle) const { return strides_[particle]; }
  int digit(std::size_t basis, std::size_t particle) const {
    return static_cast<int>((basis / strides_[particle]) %
                            static_cast<std::size_t>(radices_[particle]));
  }
  std::vector<int> digits(std::size_t basis) const;
  std::size_t basis_index(std::span<const int> digits) const;

  bool operator==(const Register& other) const {
    return particles_ == other.particles_;
  }

 private:
  std::vector<ParticleSpec> particles_;
  std::vector<int> radices_;
  std::vector<std::size_t> strides_;
  std::size_t dimension_ = 1;
};

using RegisterPtr = std::shared_ptr<const Register>;

/// Builds a shared register. Throws SizingError when the orbital-count
/// product exceeds `dimension_cap`.
RegisterPtr build_register(std::vector<ParticleSpec> particles,
                           std::uint64_t dimension_cap =
                               Register::kDefaultDimensionCap);

/// Human-readable orbital label: "0_1", "1_0", "IDLE".
std::string orbital_label(const Orbital& orbital);

}  // namespace gsqc

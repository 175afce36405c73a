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

#include "gsqc/register.hpp"

#include <set>
#include <sstream>

namespace gsqc {

int ParticleSpec::index_of(const Orbital& orbital) const {
  if (orbital.is_idle()) {
    if (!has_idle) {
      throw ValidationError("particle " + id.value + " has no IDLE orbital");
    }
    return 2 * stages;
  }
  if (orbital.stage < 0 || orbital.stage >= stages || orbital.bit < 0 ||
      orbital.bit > 1) {
    throw ValidationError("orbital " + orbital_label(orbital) +
                          " out of range for particle " + id.value);
  }
  return 2 * orbital.stage + orbital.bit;
}

Orbital ParticleSpec::orbital_at(int index) const {
  if (index < 0 || index >= orbital_count()) {
    throw ValidationError("orbital index out of range for particle " +
                          id.value);
  }
  if (has_idle && index == 2 * stages) return Orbital::idle();
  return Orbital::computational(index / 2, index % 2);
}

int ParticleSpec::idle_index() const { return index_of(Orbital::idle()); }

Register::Register(std::vector<ParticleSpec> particles,
                   std::uint64_t dimension_cap)
    : particles_(std::move(particles)) {
  if (particles_.empty()) {
    throw ValidationError("register needs at least one particle");
  }
  std::set<ParticleId> seen;
  std::uint64_t product = 1;
  std::ostringstream factors;
  for (const auto& p : particles_) {
    if (p.stages < 1) {
      throw ValidationError("particle " + p.id.value +
                            " must have at least one stage");
    }
    if (!seen.insert(p.id).second) {
      throw ValidationError("duplicate particle id " + p.id.value);
    }
    const auto count = static_cast<std::uint64_t>(p.orbital_count());
    factors << (factors.tellp() > 0 ? " x " : "") << count;
    if (product > dimension_cap / count) {
      throw SizingError("register dimension " + factors.str() +
                        " x ... exceeds cap " + std::to_string(dimension_cap));
    }
    product *= count;
    radices_.push_back(p.orbital_count());
  }
  if (product > dimension_cap) {
    throw SizingError("register dimension " + factors.str() + " = " +
                      std::to_string(product) + " exceeds cap " +
                      std::to_string(dimension_cap));
  }
  dimension_ = static_cast<std::size_t>(product);
  strides_.assign(particles_.size(), 1);
  for (std::size_t i = particles_.size() - 1; i > 0; --i) {
    strides_[i - 1] = strides_[i] * static_cast<std::size_t>(radices_[i]);
  }
}

std::size_t Register::position(const ParticleId& id) const {
  for (std::size_t i = 0; i < particles_.size(); ++i) {
    if (particles_[i].id == id) return i;
  }
  throw ValidationError("unknown particle id " + id.value);
}

bool Register::contains(const ParticleId& id) const {
  for (const auto& p : particles_) {
    if (p.id == id) return true;
  }
  return false;
}

std::vector<int> Register::digits(std::size_t basis) const {
  std::vector<int> out(particles_.size());
  for (std::size_t i = 0; i < particles_.size(); ++i) out[i] = digit(basis, i);
  return out;
}

std::size_t Register::basis_index(std::span<const int> digits) const {
  if (digits.size() != particles_.size()) {
    throw ValidationError("digit tuple length does not match register");
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= radices_[i]) {
      throw ValidationError("orbital digit out of range for particle " +
                            particles_[i].id.value);
    }
    index += static_cast<std::size_t>(digits[i]) * strides_[i];
  }
  return index;
}

RegisterPtr build_register(std::vector<ParticleSpec> particles,
                           std::uint64_t dimension_cap) {
  return std::make_shared<const Register>(std::move(particles), dimension_cap);
}

std::string orbital_label(const Orbital& orbital) {
  if (orbital.is_idle()) return "IDLE";
  return std::to_string(orbital.bit) + "_" + std::to_string(orbital.stage);
}

}  // namespace gsqc

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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace gsqc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using CsrMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

inline constexpr Complex kI{0.0, 1.0};

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Register or operator would exceed the configured dimension cap.
class SizingError : public Error {
 public:
  using Error::Error;
};

// Malformed input: bad shapes, unknown particles, non-unitary gates, ...
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Iterative solver ran out of iterations before reaching its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

// An eigenvalue that must be isolated has a neighbour closer than allowed.
class DegeneracyError : public Error {
 public:
  DegeneracyError(const std::string& what, double spacing)
      : Error(what), spacing_(spacing) {}
  double spacing() const { return spacing_; }

 private:
  double spacing_;
};

// Drive frequency sits on top of a transition frequency.
class ResonanceError : public Error {
 public:
  ResonanceError(const std::string& what, int level)
      : Error(what), level_(level) {}
  int level() const { return level_; }

 private:
  int level_;
};

// Time evolution lost unitarity beyond tolerance.
class NormDriftError : public Error {
 public:
  NormDriftError(const std::string& what, double drift)
      : Error(what), drift_(drift) {}
  double drift() const { return drift_; }

 private:
  double drift_;
};

}  // namespace gsqc

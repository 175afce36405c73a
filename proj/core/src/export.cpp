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

#include "gsqc/export.hpp"

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace gsqc {

void write_matrix_market(std::ostream& os, const SparseOperator& op) {
  const CsrMatrix& m = op.matrix();
  std::size_t lower = 0;
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (CsrMatrix::InnerIterator it(m, r); it; ++it) {
      if (it.col() <= r) ++lower;
    }
  }
  os << "%%MatrixMarket matrix coordinate complex hermitian\n";
  os << m.rows() << ' ' << m.cols() << ' ' << lower << '\n';
  char buf[96];
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (CsrMatrix::InnerIterator it(m, r); it; ++it) {
      if (it.col() > r) continue;
      std::snprintf(buf, sizeof buf, "%lld %lld %.17g %.17g\n",
                    static_cast<long long>(r + 1),
                    static_cast<long long>(it.col() + 1), it.value().real(),
                    it.value().imag());
      os << buf;
    }
  }
}

CsrMatrix read_matrix_market(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("%%MatrixMarket", 0) != 0) {
    throw ValidationError("matrix market: missing header");
  }
  const bool hermitian = line.find("hermitian") != std::string::npos;
  if (line.find("coordinate") == std::string::npos ||
      line.find("complex") == std::string::npos) {
    throw ValidationError("matrix market: expected complex coordinate data");
  }
  while (std::getline(is, line) && !line.empty() && line[0] == '%') {
  }
  long long rows = 0, cols = 0, count = 0;
  std::istringstream size(line);
  if (!(size >> rows >> cols >> count)) {
    throw ValidationError("matrix market: bad size line");
  }
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (long long k = 0; k < count; ++k) {
    long long i = 0, j = 0;
    double re = 0.0, im = 0.0;
    if (!(is >> i >> j >> re >> im)) {
      throw ValidationError("matrix market: truncated entry list");
    }
    triplets.emplace_back(i - 1, j - 1, Complex(re, im));
    if (hermitian && i != j) {
      triplets.emplace_back(j - 1, i - 1, Complex(re, -im));
    }
  }
  CsrMatrix m(rows, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

nlohmann::json basis_to_json(const Register& reg) {
  nlohmann::json particles = nlohmann::json::array();
  for (const auto& p : reg.particles()) {
    std::vector<std::string> labels;
    for (int i = 0; i < p.orbital_count(); ++i) {
      labels.push_back(orbital_label(p.orbital_at(i)));
    }
    particles.push_back({{"id", p.id.value},
                         {"stages", p.stages},
                         {"idle", p.has_idle},
                         {"orbitals", labels}});
  }
  return {{"order", "lexicographic, first particle slowest"},
          {"dimension", reg.dimension()},
          {"particles", particles}};
}

nlohmann::json resource_report(const CompiledCircuit& compiled,
                               const SparseOperator& h) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : compiled.spec.terms()) terms.push_back(t.label);
  nlohmann::json links = nlohmann::json::array();
  for (const auto& l : compiled.spec.links()) {
    nlohmann::json j = {{"label", l.label}, {"gate", l.gate}, {"line", l.line}};
    if (l.fixed_lambda) j["fixed_lambda"] = *l.fixed_lambda;
    links.push_back(std::move(j));
  }
  nlohmann::json particles = nlohmann::json::array();
  for (const auto& p : compiled.reg->particles()) {
    particles.push_back(p.id.value);
  }
  return {{"particles", particles},
          {"dimension", compiled.reg->dimension()},
          {"term_count", compiled.spec.term_count()},
          {"terms", terms},
          {"links", links},
          {"nonzeros", h.nonzeros()},
          {"epsilon", compiled.spec.epsilon()},
          {"lambda", compiled.options.lambda}};
}

}  // namespace gsqc

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

#include "gsqc/circuit_json.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace gsqc {
namespace {

using nlohmann::json;

Complex pair_to_complex(const json& pair, const std::string& where) {
  if (pair.is_number()) return {pair.get<double>(), 0.0};
  if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
      !pair[1].is_number()) {
    throw ValidationError(where + ": expected an [re, im] pair");
  }
  return {pair[0].get<double>(), pair[1].get<double>()};
}

int required_int(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_number_integer()) {
    throw ValidationError(where + "." + key + ": expected an integer");
  }
  return obj[key].get<int>();
}

}  // namespace

Matrix matrix_from_json(const json& doc, const std::string& where) {
  if (!doc.is_array() || doc.empty()) {
    throw ValidationError(where + ": expected a non-empty array");
  }
  std::vector<Complex> flat;
  const bool nested_rows = doc[0].is_array() && !doc[0].empty() &&
                           doc[0][0].is_array();
  if (nested_rows) {
    for (std::size_t r = 0; r < doc.size(); ++r) {
      for (std::size_t c = 0; c < doc[r].size(); ++c) {
        flat.push_back(pair_to_complex(
            doc[r][c], where + "[" + std::to_string(r) + "][" +
                           std::to_string(c) + "]"));
      }
    }
  } else {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      flat.push_back(
          pair_to_complex(doc[i], where + "[" + std::to_string(i) + "]"));
    }
  }
  const auto side = static_cast<Eigen::Index>(
      std::llround(std::sqrt(static_cast<double>(flat.size()))));
  if (side * side != static_cast<Eigen::Index>(flat.size())) {
    throw ValidationError(where + ": entry count " +
                          std::to_string(flat.size()) + " is not a square");
  }
  Matrix m(side, side);
  for (Eigen::Index r = 0; r < side; ++r) {
    for (Eigen::Index c = 0; c < side; ++c) {
      m(r, c) = flat[static_cast<std::size_t>(r * side + c)];
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out.push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  return out;
}

CircuitSpec circuit_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("circuit: expected an object");
  CircuitSpec circuit;
  circuit.lines = required_int(doc, "lines", "circuit");

  if (doc.contains("mode")) {
    const auto mode = doc["mode"].get<std::string>();
    if (mode == "chain") {
      circuit.mode = CircuitMode::Chain;
    } else if (mode == "teleport") {
      circuit.mode = CircuitMode::Teleport;
    } else {
      throw ValidationError("mode: expected \"chain\" or \"teleport\"");
    }
  }

  if (doc.contains("gates")) {
    const auto& list = doc["gates"];
    if (!list.is_array()) throw ValidationError("gates: expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& g = list[i];
      const std::string where = "gates[" + std::to_string(i) + "]";
      if (!g.is_object()) throw ValidationError(where + ": expected an object");
      GateSpec gate;
      gate.stage = required_int(g, "stage", where);
      if (!g.contains("targets") || !g["targets"].is_array()) {
        throw ValidationError(where + ".targets: expected an array");
      }
      for (const auto& t : g["targets"]) {
        if (!t.is_number_integer()) {
          throw ValidationError(where + ".targets: expected integers");
        }
        gate.targets.push_back(t.get<int>());
      }
      const bool has_name = g.contains("name");
      const bool has_matrix = g.contains("matrix");
      if (has_name == has_matrix) {
        throw ValidationError(where + ": give exactly one of name, matrix");
      }
      if (has_name) {
        gate.name = g["name"].get<std::string>();
        try {
          gate.unitary = gates::named(gate.name);
        } catch (const ValidationError& e) {
          throw ValidationError(where + ".name: " + e.what());
        }
      } else {
        gate.unitary = matrix_from_json(g["matrix"], where + ".matrix");
        gate.name = "custom";
      }
      circuit.gates.push_back(std::move(gate));
    }
  }

  if (doc.contains("projections")) {
    const auto& list = doc["projections"];
    if (!list.is_array()) {
      throw ValidationError("projections: expected an array");
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& p = list[i];
      const std::string where = "projections[" + std::to_string(i) + "]";
      ProjectionSpec proj;
      proj.ancilla_line = required_int(p, "ancilla", where);
      const auto basis = p.value("basis", std::string("Z"));
      if (basis == "Z") {
        proj.basis = Basis::Z;
      } else if (basis == "X") {
        proj.basis = Basis::X;
      } else {
        throw ValidationError(where + ".basis: expected \"Z\" or \"X\"");
      }
      if (p.contains("lambda")) {
        if (!p["lambda"].is_number()) {
          throw ValidationError(where + ".lambda: expected a number");
        }
        proj.boost = p["lambda"].get<double>();
      }
      circuit.projections.push_back(proj);
    }
  }
  return circuit;
}

json circuit_to_json(const CircuitSpec& circuit) {
  json doc;
  doc["lines"] = circuit.lines;
  doc["mode"] = to_string(circuit.mode);
  doc["gates"] = json::array();
  for (const auto& g : circuit.gates) {
    json gate;
    gate["stage"] = g.stage;
    gate["targets"] = g.targets;
    bool named = false;
    if (!g.name.empty() && g.name != "custom") {
      try {
        named = (gates::named(g.name) - g.unitary).cwiseAbs().maxCoeff() == 0.0;
      } catch (const ValidationError&) {
        named = false;
      }
    }
    if (named) {
      gate["name"] = g.name;
    } else {
      gate["matrix"] = matrix_to_json(g.unitary);
    }
    doc["gates"].push_back(gate);
  }
  doc["projections"] = json::array();
  for (const auto& p : circuit.projections) {
    json proj;
    proj["ancilla"] = p.ancilla_line;
    proj["basis"] = to_string(p.basis);
    if (p.boost) proj["lambda"] = *p.boost;
    doc["projections"].push_back(proj);
  }
  return doc;
}

CircuitSpec parse_circuit(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("circuit JSON: ") + e.what());
  }
  CircuitSpec circuit;
  try {
    circuit = circuit_from_json(doc);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("circuit JSON: ") + e.what());
  }
  validate(circuit);
  return circuit;
}

CircuitSpec load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open circuit file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_circuit(buffer.str());
}

}  // namespace gsqc

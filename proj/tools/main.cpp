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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "gsqc/circuit_json.hpp"
#include "gsqc/version.hpp"

namespace {

struct Flags {
  std::string circuit;
  std::string lambda_grid;
  std::string schedule;
  std::string gate_counts;
  double tmax = -1.0;
};

void add_common(CLI::App* cmd, gsqc::cli::RunConfig& c, Flags& f) {
  cmd->add_option("--circuit", f.circuit, "Circuit JSON file");
  cmd->add_option("--epsilon", c.epsilon, "Energy unit epsilon")
      ->capture_default_str();
  cmd->add_option("--lambda", c.lambda, "Link parameter (or ramp maximum)")
      ->capture_default_str();
  cmd->add_option("--lambda-grid", f.lambda_grid,
                  "Grid as 'max:points' or 'l0,l1,...'");
  cmd->add_option("--tol", c.tol, "Eigensolver residual tolerance / epsilon")
      ->capture_default_str();
  cmd->add_option("--cap", c.cap, "Hilbert-space dimension cap")
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  cmd->add_option("--out", c.out, "Output directory")->capture_default_str();
  cmd->add_option("--threads", c.threads,
                  "Worker threads (0: GSQC_THREADS or hardware)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground-state quantum computation simulator"};
  app.set_version_flag("--version", gsqc::kVersion);
  app.require_subcommand(1);

  gsqc::cli::RunConfig config;
  Flags flags;
  std::string manifest;
  std::string replay_out;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"compile", "Compile a circuit; write Matrix Market and a report"},
      {"gap-sweep", "E0 and E1 over a Lambda grid with the gap bounds"},
      {"evolve", "Adiabatic ramp of Lambda with fidelity trace"},
      {"concurrency", "Minimum ramp time against gate count"},
      {"grover", "Two-qubit Grover, chain mode, all four oracles"},
      {"teleport-demo", "Single teleported gate: readout against Lambda"},
      {"codes-demo", "Error-detection circuits and projection amplification"},
      {"threshold", "Pseudo-threshold gate counting"},
  };
  for (const auto& [name, help] : commands) {
    auto* cmd = app.add_subcommand(name, help);
    add_common(cmd, config, flags);
    if (name == "evolve") {
      cmd->add_option("--tmax", flags.tmax,
                      "Ramp time (default 10 x sufficient time)");
      cmd->add_option("--schedule", flags.schedule,
                      "Schedule JSON, inline or @file");
    }
    if (name == "concurrency") {
      cmd->add_option("--gates", flags.gate_counts, "Gate counts, e.g. 1,2,3");
      cmd->add_option("--target", config.target, "Target final infidelity")
          ->capture_default_str();
    }
    cmd->callback([&config, name = name] { config.command = name; });
  }
  auto* replay = app.add_subcommand("replay", "Re-run from a manifest.json");
  replay->add_option("--manifest", manifest, "Manifest file")->required();
  replay->add_option("--out", replay_out, "Output directory override");

  CLI11_PARSE(app, argc, argv);

  if (replay->parsed()) return gsqc::cli::replay(manifest, replay_out);

  try {
    if (!flags.circuit.empty()) {
      config.circuit_path = flags.circuit;
      std::ifstream is(flags.circuit);
      if (!is) throw gsqc::ValidationError("cannot read " + flags.circuit);
      std::string text(std::istreambuf_iterator<char>(is), {});
      // Parse once here so diagnostics point at the file.
      const auto circuit = gsqc::parse_circuit(text);
      config.circuit = gsqc::circuit_to_json(circuit);
    }
    if (!flags.lambda_grid.empty()) {
      config.lambda_grid = gsqc::cli::parse_lambda_grid(flags.lambda_grid);
    }
    if (!flags.schedule.empty()) {
      config.schedule = gsqc::cli::parse_json_argument(flags.schedule);
    }
    if (flags.tmax >= 0.0) config.tmax = flags.tmax;
    if (!flags.gate_counts.empty()) {
      config.gate_counts.clear();
      for (double v : gsqc::cli::parse_lambda_grid(flags.gate_counts)) {
        config.gate_counts.push_back(static_cast<int>(v));
      }
    }
  } catch (const gsqc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return gsqc::cli::kInvalidInput;
  }
  return gsqc::cli::run(config);
}

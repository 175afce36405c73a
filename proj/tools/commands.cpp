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

#include "commands.hpp"

#include <Eigen/Core>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "gsqc/adiabatic.hpp"
#include "gsqc/circuit_json.hpp"
#include "gsqc/codes.hpp"
#include "gsqc/compile.hpp"
#include "gsqc/export.hpp"
#include "gsqc/history_state.hpp"
#include "gsqc/spectral.hpp"
#include "gsqc/version.hpp"

namespace gsqc::cli {
namespace fs = std::filesystem;
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Collects outputs and pass/fail checks for one command.
class Run {
 public:
  explicit Run(const RunConfig& config) : config_(config) {
    fs::create_directories(config.out);
  }

  const RunConfig& config() const { return config_; }

  std::ofstream open(const std::string& name) {
    outputs_.push_back(name);
    std::ofstream os(fs::path(config_.out) / name);
    if (!os) throw Error("cannot write " + name + " in " + config_.out);
    return os;
  }

  void write_json(const std::string& name, const nlohmann::json& j) {
    auto os = open(name);
    os << j.dump(2) << '\n';
  }

  void check(const std::string& name, bool passed, const std::string& detail) {
    std::cout << (passed ? "PASS " : "FAIL ") << name << ": " << detail
              << '\n';
    checks_.push_back({{"name", name}, {"passed", passed}, {"detail", detail}});
    ok_ = ok_ && passed;
  }

  void note(const std::string& text) { std::cout << text << '\n'; }

  bool ok() const { return ok_; }

  void write_manifest(double seconds, const std::string& error) {
    nlohmann::json m;
    m["command"] = config_.command;
    m["config"] = config_.to_json();
    m["versions"] = {
        {"gsqc", kVersion},
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                      std::to_string(EIGEN_MAJOR_VERSION) + "." +
                      std::to_string(EIGEN_MINOR_VERSION)},
        {"nlohmann_json",
         std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
             std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
             std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
    m["threads"] = resolve_threads(config_.threads);
    m["wall_time_seconds"] = seconds;
    m["outputs"] = outputs_;
    m["checks"] = checks_;
    m["passed"] = ok_ && error.empty();
    if (!error.empty()) m["error"] = error;
    std::ofstream os(fs::path(config_.out) / "manifest.json");
    os << m.dump(2) << '\n';
  }

 private:
  RunConfig config_;
  std::vector<std::string> outputs_;
  nlohmann::json checks_ = nlohmann::json::array();
  bool ok_ = true;
};

SpectralOptions spectral_options(const RunConfig& c) {
  SpectralOptions o;
  o.epsilon = c.epsilon;
  o.tolerance = c.tol;
  o.seed = c.seed;
  return o;
}

CompileOptions compile_options(const RunConfig& c) {
  CompileOptions o;
  o.epsilon = c.epsilon;
  o.lambda = c.lambda;
  o.dimension_cap = c.cap;
  return o;
}

CircuitSpec single_gate(const Matrix& u, const std::string& name) {
  CircuitSpec c;
  c.lines = 1;
  c.gates.push_back({u, {0}, 1, name});
  return c;
}

// The configured circuit, or `fallback` when none was given.
CircuitSpec circuit_or(const RunConfig& c, const CircuitSpec& fallback) {
  return c.circuit ? circuit_from_json(*c.circuit) : fallback;
}

std::vector<double> grid_or(const RunConfig& c, std::vector<double> fallback) {
  return c.lambda_grid.empty() ? fallback : c.lambda_grid;
}

// ---------------------------------------------------------------------------

void cmd_compile(Run& run) {
  const auto& c = run.config();
  if (!c.circuit) throw ValidationError("compile: --circuit is required");
  const auto compiled = compile(circuit_from_json(*c.circuit),
                                compile_options(c));
  const auto h = compiled.spec.evaluate(c.lambda);
  {
    auto os = run.open("hamiltonian.mtx");
    write_matrix_market(os, h);
  }
  run.write_json("basis.json", basis_to_json(*compiled.reg));
  auto report = resource_report(compiled, h);
  report["max_term_entry"] = compiled.spec.max_term_entry(c.lambda);
  report["max_offdiagonal"] = h.max_abs_offdiagonal() / c.epsilon;
  report["max_diagonal"] = h.max_abs_diagonal() / c.epsilon;
  run.write_json("report.json", report);
  run.note("dimension " + std::to_string(compiled.reg->dimension()) +
           ", terms " + std::to_string(compiled.spec.term_count()));
  run.check("hermitian", h.hermiticity_defect() == 0.0,
            "max |H - H^dagger| = " + fmt(h.hermiticity_defect()));
  run.check("term entries", compiled.spec.max_term_entry(c.lambda) <= 1.0 + 1e-12,
            "largest single-term entry / epsilon = " +
                fmt(compiled.spec.max_term_entry(c.lambda)));
}

void cmd_gap_sweep(Run& run) {
  const auto& c = run.config();
  std::vector<std::pair<std::string, HamiltonianSpec>> systems;
  auto options = compile_options(c);
  if (c.circuit) {
    systems.emplace_back("circuit",
                         compile(circuit_from_json(*c.circuit), options).spec);
  } else {
    CircuitSpec two = single_gate(gates::hadamard(), "H");
    two.gates.push_back({gates::phase_t(), {0}, 2, "T"});
    CircuitSpec cz;
    cz.lines = 2;
    cz.gates.push_back({gates::cphase(), {0, 1}, 1, "CPHASE"});
    systems.emplace_back("single_gate",
                         compile(single_gate(gates::hadamard(), "H"), options)
                             .spec);
    systems.emplace_back("two_gates", compile(two, options).spec);
    systems.emplace_back("cphase", compile(cz, options).spec);
  }
  const auto grid = grid_or(c, linear_grid(8.0, 33));
  for (const auto& [name, spec] : systems) {
    const auto sweep = gap_sweep(spec, grid, spectral_options(c), c.threads);
    auto os = run.open("gap_sweep_" + name + ".csv");
    sweep.write_csv(os);
    std::size_t failed = 0;
    std::size_t below_p = 0;
    for (const auto& r : sweep.rows) {
      if (!r.ok) ++failed;
      if (r.ok && r.ratio < r.p) ++below_p;
    }
    run.check(name + " solver", failed == 0,
              std::to_string(failed) + " failed grid points");
    run.check(name + " gap bound", sweep.bound_violations().empty(),
              std::to_string(sweep.bound_violations().size()) +
                  " rows below the bound; E1(0) = " + fmt(sweep.e_zero));
    run.check(name + " weak bound", sweep.weak_bound_violations().empty(),
              std::to_string(sweep.weak_bound_violations().size()) +
                  " rows below (p/12)^2");
    run.note("  " + name + ": " + std::to_string(below_p) +
             " rows with E1/E1(0) < p (reported only)");
  }
}

void cmd_evolve(Run& run) {
  const auto& c = run.config();
  const auto circuit = circuit_or(c, single_gate(gates::hadamard(), "H"));
  const auto compiled = compile(circuit, compile_options(c));
  const int n = static_cast<int>(circuit.gates.size());
  Schedule schedule;
  SufficientTime t_star;
  if (c.schedule) {
    schedule = schedule_from_json(*c.schedule);
    t_star = sufficient_time_for(compiled.spec, n, schedule.lambda_max,
                                 spectral_options(c));
  } else {
    t_star = sufficient_time_for(compiled.spec, n, c.lambda,
                                 spectral_options(c));
    schedule = Schedule::linear(c.lambda, c.tmax.value_or(10.0 * t_star.value));
  }
  EvolveOptions eo;
  eo.spectral = spectral_options(c);
  const auto trace = evolve(compiled.spec, schedule, eo);
  {
    auto os = run.open("trace.csv");
    trace.write_csv(os);
  }
  run.write_json(
      "summary.json",
      {{"schedule", schedule_to_json(schedule)},
       {"T_star", t_star.value},
       {"T_star_measured_gap", t_star.from_measured},
       {"T_star_bound_gap", t_star.from_bound},
       {"measured_gap", t_star.measured_gap},
       {"final_infidelity", trace.final_infidelity},
       {"max_norm_drift", trace.max_norm_drift},
       {"steps", trace.steps},
       {"rejected_steps", trace.rejected_steps},
       {"matvecs", trace.matvecs}});
  bool fidelity_range = true;
  bool energy_ok = true;
  for (const auto& s : trace.samples) {
    fidelity_range = fidelity_range && s.fidelity >= -1e-12 &&
                     s.fidelity <= 1.0 + 1e-10;
    energy_ok = energy_ok && s.energy >= -1e-12 * c.epsilon &&
                s.energy <= 3.0 * s.diabatic_estimate + 1e-10 * c.epsilon;
  }
  run.note("T = " + fmt(schedule.total_time) + ", T* = " + fmt(t_star.value) +
           ", final infidelity " + fmt(trace.final_infidelity));
  run.check("norm", trace.max_norm_drift <= 1e-8,
            "max drift " + fmt(trace.max_norm_drift));
  run.check("fidelity range", fidelity_range, "all samples in [0, 1 + 1e-10]");
  run.check("energy", energy_ok,
            "0 <= <H> <= 3 x diabatic estimate at every sample");
}

void cmd_concurrency(Run& run) {
  const auto& c = run.config();
  ConcurrencyOptions o;
  o.lambda_max = c.lambda;
  o.target_infidelity = c.target;
  o.seed = c.seed;
  o.threads = c.threads;
  o.epsilon = c.epsilon;
  o.evolve.spectral = spectral_options(c);
  const auto table = concurrency_experiment(c.gate_counts, o);
  {
    auto os = run.open("concurrency.csv");
    table.write_csv(os);
  }
  run.write_json("fit.json", {{"exponent", table.exponent},
                              {"stderr", table.exponent_stderr},
                              {"predicted", 0.5}});
  run.note("fitted exponent " + fmt(table.exponent) + " +/- " +
           fmt(table.exponent_stderr) + " (reported, not asserted)");
  run.check("rows", table.rows.size() == c.gate_counts.size(),
            std::to_string(table.rows.size()) + " rows");
}

void cmd_grover(Run& run) {
  const auto& c = run.config();
  auto so = spectral_options(c);
  auto os = run.open("grover.csv");
  os << "marked,dimension,E0,E1,p_final,p_marked\n";
  for (int m = 0; m < 4; ++m) {
    const auto compiled = compile(grover_circuit(m), compile_options(c));
    const auto r = ground_and_gap(compiled.spec.evaluate(c.lambda), so);
    const auto rd = chain_readout(r.ground, compiled);
    const double p = rd.answer_distribution.count(bitstring(m, 2))
                         ? rd.answer_distribution.at(bitstring(m, 2))
                         : 0.0;
    os << m << ',' << compiled.reg->dimension() << ',' << fmt(r.e0) << ','
       << fmt(r.e1) << ',' << fmt(rd.p_final) << ',' << fmt(p) << '\n';
    run.check("oracle " + bitstring(m, 2), p >= 1.0 - 1e-9,
              "P(marked | final) = " + fmt(p));
  }
  // The marked-11 oracle alone is a CPHASE; teleport it.
  CircuitSpec cz;
  cz.lines = 2;
  cz.gates.push_back({gates::phase_flip(3), {0, 1}, 1, "oracle"});
  const auto compiled = compile(cz, compile_options(c));
  const auto r = ground_and_gap(compiled.spec.evaluate(c.lambda), so);
  const auto analytic = teleport_history_state(compiled, c.lambda);
  const double overlap = std::abs(analytic.inner(r.ground));
  const auto rd = readout(r.ground, compiled);
  auto j = rd.to_json();
  j["dimension"] = compiled.reg->dimension();
  j["overlap_with_history_state"] = overlap;
  j["E1"] = r.e1;
  run.write_json("grover_teleport_oracle.json", j);
  run.check("teleported oracle ground state", overlap >= 1.0 - 1e-9,
            "overlap " + fmt(overlap));
  run.check("teleported oracle output", rd.done_fidelity >= 1.0 - 1e-9,
            "done fidelity " + fmt(rd.done_fidelity));
}

void cmd_teleport_demo(Run& run) {
  const auto& c = run.config();
  std::mt19937_64 rng(c.seed);
  const auto circuit =
      circuit_or(c, single_gate(gates::random_unitary(2, rng), "U"));
  const bool single = circuit.lines == 1 && circuit.gates.size() == 1;
  const auto grid = grid_or(c, linear_grid(8.0, 20));
  auto so = spectral_options(c);
  auto os = run.open("teleport.csv");
  os << "lambda,p_done,p_incorrect,formula,E1,overlap\n";
  double worst_p = 0.0;
  double worst_overlap = 1.0;
  for (double l : grid) {
    CompileOptions co = compile_options(run.config());
    co.lambda = l;
    const auto compiled = compile(circuit, co);
    const auto analytic = teleport_history_state(compiled, l);
    const auto r = ground_and_gap(compiled.spec.evaluate(l), so);
    const double overlap = std::abs(analytic.inner(r.ground));
    const auto rd = readout(analytic, compiled);
    const double formula = error_probability(l);
    if (single) worst_p = std::max(worst_p, std::abs(rd.p_incorrect - formula));
    worst_overlap = std::min(worst_overlap, overlap);
    os << fmt(l) << ',' << fmt(rd.p_done) << ',' << fmt(rd.p_incorrect) << ','
       << fmt(formula) << ',' << fmt(r.e1) << ',' << fmt(overlap) << '\n';
  }
  if (single) {
    run.check("error probability", worst_p <= 1e-12,
              "max |p - 6/(8 + L^2)| = " + fmt(worst_p));
  }
  run.check("history state", worst_overlap >= 1.0 - 1e-9,
            "min overlap with the eigensolver ground state " +
                fmt(worst_overlap));
}

void cmd_codes_demo(Run& run) {
  const auto& c = run.config();
  const auto tally = extended_rectangle_tally();
  for (auto w : kAllDetectionSelectors) {
    run.write_json(std::string("detection_") + to_string(w) + ".json",
                   build_detection_circuit(w).to_json());
  }
  run.write_json("tally.json",
                 {{"per_detection_round", tally.per_detection_round},
                  {"transverse", tally.transverse},
                  {"extended_rectangle", tally.extended_rectangle}});
  run.check("gate tally", tally.extended_rectangle == 52,
            std::to_string(tally.per_detection_round) + " detection gates, " +
                std::to_string(tally.extended_rectangle) + " in total");
  {
    auto os = run.open("subcircuits.csv");
    os << "circuit,dimension,lambda,residual,rayleigh\n";
    for (auto w : kAllDetectionSelectors) {
      const auto r = check_detection_subcircuit(w, c.lambda, compile_options(c));
      os << to_string(w) << ',' << r.dimension << ',' << fmt(r.lambda) << ','
         << fmt(r.residual) << ',' << fmt(r.rayleigh) << '\n';
      run.check(std::string("zero mode ") + to_string(w),
                r.residual <= 1e-9 * c.epsilon,
                "||H psi|| = " + fmt(r.residual) + " at dimension " +
                    std::to_string(r.dimension));
    }
  }
  auto os = run.open("amplification.csv");
  os << "lambda,dimension,E0,E1,overlap,no_error_weight,expected,ratio_defect\n";
  for (double l : grid_or(c, {0.0, 1.0, 3.0, 10.0})) {
    const auto r = amplification_demo(l, M_PI / 2.0, spectral_options(c));
    os << fmt(l) << ',' << r.dimension << ',' << fmt(r.e0) << ','
       << fmt(r.e1) << ',' << fmt(r.overlap) << ',' << fmt(r.no_error_weight)
       << ',' << fmt(r.expected_no_error_weight) << ','
       << fmt(r.ratio_defect) << '\n';
    const std::string tag = "amplification L=" + fmt(l);
    run.check(tag, r.overlap >= 1.0 - 1e-9 && r.ratio_defect <= 1e-9,
              "overlap " + fmt(r.overlap) + ", ratio defect " +
                  fmt(r.ratio_defect) + ", no-error weight " +
                  fmt(r.no_error_weight));
  }
}

void cmd_threshold(Run& run) {
  const auto tally = extended_rectangle_tally();
  const auto t = pseudo_threshold_estimate(
      static_cast<std::uint64_t>(tally.extended_rectangle), 2);
  run.write_json("threshold.json", {{"gate_count", t.gate_count},
                                    {"fault_pairs", t.fault_pairs},
                                    {"pairs", t.pairs},
                                    {"estimate", t.estimate},
                                    {"published_rounded", t.published_rounded}});
  run.note("C(" + std::to_string(t.gate_count) + ", 2) = " +
           std::to_string(t.pairs) + ", estimate " + fmt(t.estimate) +
           " (rounded: " + fmt(t.published_rounded) + ")");
  run.check("gate tally", t.gate_count == 52,
            std::to_string(t.gate_count) + " gates");
  run.check("pair count", t.pairs == 1326, std::to_string(t.pairs));
}

const std::map<std::string, std::function<void(Run&)>>& commands() {
  static const std::map<std::string, std::function<void(Run&)>> table = {
      {"compile", cmd_compile},         {"gap-sweep", cmd_gap_sweep},
      {"evolve", cmd_evolve},           {"concurrency", cmd_concurrency},
      {"grover", cmd_grover},           {"teleport-demo", cmd_teleport_demo},
      {"codes-demo", cmd_codes_demo},   {"threshold", cmd_threshold},
  };
  return table;
}

}  // namespace

void RunConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ValidationError("--epsilon must be positive");
  }
  if (!(tol > 0.0 && tol < 1e-3)) {
    throw ValidationError("--tol must lie in (0, 1e-3)");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("--lambda must be finite and >= 0");
  }
  if (tmax && !(*tmax >= 0.0)) throw ValidationError("--tmax must be >= 0");
  if (!(target > 0.0)) throw ValidationError("--target must be positive");
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j = {{"command", command},
                      {"circuit_path", circuit_path},
                      {"epsilon", epsilon},
                      {"lambda", lambda},
                      {"lambda_grid", lambda_grid},
                      {"tol", tol},
                      {"cap", cap},
                      {"seed", seed},
                      {"out", out},
                      {"threads", threads},
                      {"gate_counts", gate_counts},
                      {"target", target}};
  if (circuit) j["circuit"] = *circuit;
  if (tmax) j["tmax"] = *tmax;
  if (schedule) j["schedule"] = *schedule;
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  c.circuit_path = j.value("circuit_path", "");
  if (j.contains("circuit")) c.circuit = j.at("circuit");
  c.epsilon = j.value("epsilon", c.epsilon);
  c.lambda = j.value("lambda", c.lambda);
  c.lambda_grid = j.value("lambda_grid", c.lambda_grid);
  if (j.contains("tmax")) c.tmax = j.at("tmax").get<double>();
  if (j.contains("schedule")) c.schedule = j.at("schedule");
  c.tol = j.value("tol", c.tol);
  c.cap = j.value("cap", c.cap);
  c.seed = j.value("seed", c.seed);
  c.out = j.value("out", c.out);
  c.threads = j.value("threads", c.threads);
  c.gate_counts = j.value("gate_counts", c.gate_counts);
  c.target = j.value("target", c.target);
  return c;
}

std::vector<double> parse_lambda_grid(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon != std::string::npos) {
      const double max = std::stod(text.substr(0, colon));
      const int points = std::stoi(text.substr(colon + 1));
      return linear_grid(max, points);
    }
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    if (out.empty()) throw ValidationError("empty grid");
    return out;
  } catch (const std::logic_error&) {
    throw ValidationError("--lambda-grid: expected 'max:points' or a list, "
                          "got '" + text + "'");
  }
}

nlohmann::json parse_json_argument(const std::string& text) {
  std::string body = text;
  if (!text.empty() && text[0] == '@') {
    std::ifstream is(text.substr(1));
    if (!is) throw ValidationError("cannot read " + text.substr(1));
    body.assign(std::istreambuf_iterator<char>(is), {});
  }
  try {
    return nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
}

int run(const RunConfig& config) {
  const auto& table = commands();
  const auto it = table.find(config.command);
  if (it == table.end()) {
    std::cerr << "error: unknown command '" << config.command << "'\n";
    return kInvalidInput;
  }
  try {
    config.validate();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  Run r(config);
  const auto start = std::chrono::steady_clock::now();
  int code = kOk;
  std::string error;
  try {
    it->second(r);
    if (!r.ok()) code = kAssertionFailed;
  } catch (const ValidationError& e) {
    error = e.what();
    code = kInvalidInput;
  } catch (const SizingError& e) {
    error = e.what();
    code = kInvalidInput;
  } catch (const Error& e) {
    error = e.what();
    code = kSolverFailure;
  }
  if (!error.empty()) std::cerr << "error: " << error << '\n';
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  r.write_manifest(seconds, error);
  return code;
}

int replay(const std::string& manifest_path, const std::string& out) {
  std::ifstream is(manifest_path);
  if (!is) {
    std::cerr << "error: cannot read " << manifest_path << '\n';
    return kInvalidInput;
  }
  RunConfig config;
  try {
    const auto m = nlohmann::json::parse(is);
    config = RunConfig::from_json(m.at("config"));
  } catch (const std::exception& e) {
    std::cerr << "error: bad manifest: " << e.what() << '\n';
    return kInvalidInput;
  }
  if (!out.empty()) config.out = out;
  return run(config);
}

}  // namespace gsqc::cli

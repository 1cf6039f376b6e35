#pragma once

// Experiment configuration: JSON form, validation and a stable content hash.

#include "scramblenet/circuit.hpp"
#include "scramblenet/linalg.hpp"
#include "scramblenet/pauli.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace scramblenet::harness {

inline const std::set<std::string>& experiment_kinds() {
  static const std::set<std::string> kinds{"otoc-depth", "error-bounds",  "landscape",     "lscram-sweep",
                                           "levy",       "twirl-oracle", "gradient-audit"};
  return kinds;
}

struct ExperimentConfig {
  std::string experiment = "otoc-depth";
  int n_qubits = 8;
  int n_a = 3;
  int n_d = 3;
  std::vector<int> sizes;  // qubit counts (lscram-sweep) or dimensions (twirl-oracle)
  std::vector<int> depths{0, 1, 2, 30};
  std::vector<std::uint64_t> seeds{1};
  int samples = 500;
  std::vector<double> epsilon_grid;
  std::string gate_mode = "exp";  // exp | haar
  std::string route = "auto";     // auto | direct | renyi
  std::map<std::string, double> tolerances;
  std::string output_dir = "out";

  double tolerance(const std::string& key, double fallback) const {
    const auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
  }
  bool has_tolerance(const std::string& key) const { return tolerances.count(key) != 0; }

  GateMode mode() const { return gate_mode == "haar" ? GateMode::haar : GateMode::generator_exp; }

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

inline nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json tol = nlohmann::json::object();
  for (const auto& [k, v] : c.tolerances) tol[k] = v;
  return {{"experiment", c.experiment}, {"n_qubits", c.n_qubits},         {"n_a", c.n_a},
          {"n_d", c.n_d},               {"sizes", c.sizes},               {"depths", c.depths},
          {"seeds", c.seeds},           {"samples", c.samples},           {"epsilon_grid", c.epsilon_grid},
          {"gate_mode", c.gate_mode},   {"route", c.route},               {"tolerances", tol},
          {"output_dir", c.output_dir}};
}

inline void validate(const ExperimentConfig& c) {
  if (!experiment_kinds().count(c.experiment)) throw ArgumentError("config: unknown experiment '" + c.experiment + "'");
  if (c.n_qubits < 2 || c.n_qubits > 8) throw ArgumentError("config: n_qubits must lie in [2, 8]");
  if (c.n_a < 1 || c.n_a >= c.n_qubits) throw ArgumentError("config: need 1 <= n_a < n_qubits");
  if (c.n_d < 1 || c.n_d >= c.n_qubits) throw ArgumentError("config: need 1 <= n_d < n_qubits");
  for (int d : c.depths) {
    if (d < 0 || d > 200) throw ArgumentError("config: depths must lie in [0, 200]");
  }
  for (int s : c.sizes) {
    if (s < 2 || s > 8) throw ArgumentError("config: sizes must lie in [2, 8]");
  }
  if (c.seeds.empty()) throw ArgumentError("config: at least one seed is required");
  if (c.samples < 1) throw ArgumentError("config: samples must be positive");
  if (c.gate_mode != "exp" && c.gate_mode != "haar") throw ArgumentError("config: gate_mode must be exp or haar");
  if (c.route != "auto" && c.route != "direct" && c.route != "renyi") {
    throw ArgumentError("config: route must be auto, direct or renyi");
  }
  if (c.output_dir.empty()) throw ArgumentError("config: output_dir is empty");
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  c.experiment = j.value("experiment", c.experiment);
  c.n_qubits = j.value("n_qubits", c.n_qubits);
  c.n_a = j.value("n_a", c.n_a);
  c.n_d = j.value("n_d", c.n_d);
  c.sizes = j.value("sizes", c.sizes);
  c.depths = j.value("depths", c.depths);
  c.seeds = j.value("seeds", c.seeds);
  c.samples = j.value("samples", c.samples);
  c.epsilon_grid = j.value("epsilon_grid", c.epsilon_grid);
  c.gate_mode = j.value("gate_mode", c.gate_mode);
  c.route = j.value("route", c.route);
  if (j.contains("tolerances")) {
    for (const auto& [k, v] : j.at("tolerances").items()) c.tolerances[k] = v.get<double>();
  }
  c.output_dir = j.value("output_dir", c.output_dir);
  validate(c);
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path);
  return config_from_json(nlohmann::json::parse(in));
}

/// FNV-1a over the canonical (sorted-key) JSON dump without output_dir, as
/// 16 hex digits.
inline std::string config_hash(const ExperimentConfig& c) {
  auto j = to_json(c);
  j.erase("output_dir");
  const std::string text = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace scramblenet::harness

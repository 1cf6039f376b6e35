#pragma once

// Versioned JSON form of a BrickWallCircuit ("v1").

#include "scramblenet/circuit.hpp"

#include <json.hpp>

#include <fstream>
#include <string>

namespace scramblenet {

inline constexpr const char* kCircuitFormat = "v1";

inline nlohmann::json circuit_to_json(const BrickWallCircuit& c) {
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : c.gates()) {
    nlohmann::json jg;
    jg["layer"] = g.layer;
    jg["position"] = g.position;
    jg["qubits"] = {g.qubits[0], g.qubits[1]};
    const Matrix4& m = g.fixed ? *g.fixed : g.generator;
    nlohmann::json entries = nlohmann::json::array();
    for (int r = 0; r < 4; ++r) {
      for (int col = 0; col < 4; ++col) entries.push_back({m(r, col).real(), m(r, col).imag()});
    }
    if (g.fixed) {
      jg["unitary"] = entries;
    } else {
      jg["theta"] = g.theta;
      jg["generator"] = entries;
    }
    gates.push_back(jg);
  }
  return {{"format", kCircuitFormat},
          {"n_qubits", c.n_qubits()},
          {"depth", c.depth()},
          {"seed", c.seed()},
          {"gates", gates}};
}

inline BrickWallCircuit circuit_from_json(const nlohmann::json& j) {
  if (j.value("format", std::string{}) != kCircuitFormat) throw ArgumentError("circuit json: unsupported format");
  std::vector<Gate> gates;
  for (const auto& jg : j.at("gates")) {
    Gate g;
    g.layer = jg.at("layer").get<int>();
    g.position = jg.at("position").get<int>();
    g.qubits = {jg.at("qubits").at(0).get<int>(), jg.at("qubits").at(1).get<int>()};
    const bool fixed = jg.contains("unitary");
    const auto& entries = fixed ? jg.at("unitary") : jg.at("generator");
    if (entries.size() != 16) throw ArgumentError("circuit json: gate matrix needs 16 entries");
    Matrix4 m;
    for (int k = 0; k < 16; ++k) m(k / 4, k % 4) = cplx(entries[k].at(0).get<double>(), entries[k].at(1).get<double>());
    if (fixed) {
      if (!is_unitary(DenseOperator(m), 1e-10)) throw ArgumentError("circuit json: fixed gate is not unitary");
      g.fixed = m;
    } else {
      g.theta = jg.at("theta").get<double>();
      g.generator = m;
    }
    gates.push_back(std::move(g));
  }
  return BrickWallCircuit(j.at("n_qubits").get<int>(), j.at("depth").get<int>(), std::move(gates),
                          j.value("seed", std::uint64_t{0}));
}

inline void save_circuit(const BrickWallCircuit& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << circuit_to_json(c).dump(2) << '\n';
}

inline BrickWallCircuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return circuit_from_json(nlohmann::json::parse(in));
}

}  // namespace scramblenet

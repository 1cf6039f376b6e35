#pragma once

// Brick-wall parameterized circuits built from two-qubit gates exp(-i theta V).

#include "scramblenet/linalg.hpp"
#include "scramblenet/randmat.hpp"

#include <array>
#include <numbers>
#include <optional>
#include <vector>

namespace scramblenet {

using Matrix4 = Eigen::Matrix4cd;

struct Gate {
  int layer = 1;     // 1-based
  int position = 1;  // 1-based within the layer
  std::array<int, 2> qubits{0, 1};
  double theta = 0.0;
  Matrix4 generator = Matrix4::Zero();
  // Set for directly-Haar gates; such gates carry no trainable parameter.
  std::optional<Matrix4> fixed;

  DenseOperator unitary() const {
    if (fixed) return DenseOperator(*fixed);
    return herm_exp(DenseOperator(generator), theta);
  }
};

enum class GateMode { generator_exp, haar };

/// Gates are stored in application order: layer-major, then position. The
/// flat parameter index l addresses gates in this order.
class BrickWallCircuit {
 public:
  BrickWallCircuit(int n_qubits, int depth, std::vector<Gate> gates, std::uint64_t seed = 0)
      : n_qubits_(n_qubits), depth_(depth), gates_(std::move(gates)), seed_(seed) {
    validate();
  }

  int n_qubits() const { return n_qubits_; }
  int depth() const { return depth_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t parameter_count() const { return gates_.size(); }

  const Gate& gate(std::size_t l) const {
    if (l >= gates_.size()) throw ArgumentError("gate index out of range");
    return gates_[l];
  }

  bool trainable() const {
    for (const auto& g : gates_) {
      if (g.fixed) return false;
    }
    return true;
  }

  BrickWallCircuit with_theta(std::size_t l, double theta) const {
    if (l >= gates_.size()) throw ArgumentError("parameter index out of range");
    BrickWallCircuit c = *this;
    c.gates_[l].theta = theta;
    return c;
  }

  /// Qubit pairs of a 1-based layer: odd layers (0,1),(2,3),...; even layers (1,2),(3,4),...
  static std::vector<std::array<int, 2>> layer_pairs(int n_qubits, int layer) {
    std::vector<std::array<int, 2>> pairs;
    for (int q = (layer % 2 == 1) ? 0 : 1; q + 1 < n_qubits; q += 2) pairs.push_back({q, q + 1});
    return pairs;
  }

 private:
  void validate() const {
    if (n_qubits_ < 2) throw ArgumentError("BrickWallCircuit: need at least two qubits");
    if (depth_ < 0) throw ArgumentError("BrickWallCircuit: negative depth");
    require_operator_qubits(n_qubits_);
    for (const auto& g : gates_) {
      if (g.qubits[1] != g.qubits[0] + 1 || g.qubits[0] < 0 || g.qubits[1] >= n_qubits_) {
        throw ArgumentError("BrickWallCircuit: gate qubits must be adjacent and in range");
      }
      if (g.layer < 1 || g.layer > depth_) throw ArgumentError("BrickWallCircuit: gate layer out of range");
      if (!g.fixed) {
        const DenseOperator v = g.generator;
        if (!is_hermitian(v, 1e-10)) throw ArgumentError("BrickWallCircuit: generator is not Hermitian");
        if (std::abs(spectral_norm(v) - 1.0) > 1e-12) {
          throw ArgumentError("BrickWallCircuit: generator spectral norm is not 1");
        }
      }
    }
  }

  int n_qubits_;
  int depth_;
  std::vector<Gate> gates_;
  std::uint64_t seed_;
};

/// Random brick-wall circuit: theta uniform on [0, 2pi), V unit-norm GUE
/// (or directly Haar two-qubit gates in GateMode::haar).
inline BrickWallCircuit build_brickwall(int n_qubits, int depth, SeededRng& rng,
                                        GateMode mode = GateMode::generator_exp) {
  if (n_qubits < 2) throw ArgumentError("build_brickwall: need at least two qubits");
  if (depth < 0) throw ArgumentError("build_brickwall: negative depth");
  std::vector<Gate> gates;
  for (int layer = 1; layer <= depth; ++layer) {
    int position = 1;
    for (const auto& pair : BrickWallCircuit::layer_pairs(n_qubits, layer)) {
      Gate g;
      g.layer = layer;
      g.position = position++;
      g.qubits = pair;
      if (mode == GateMode::haar) {
        g.fixed = Matrix4(haar_unitary(4, rng));
      } else {
        g.theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        g.generator = Matrix4(gue_hermitian(4, rng, true));
      }
      gates.push_back(std::move(g));
    }
  }
  return BrickWallCircuit(n_qubits, depth, std::move(gates), rng.seed());
}

namespace detail {

inline DenseOperator product_of_gates(const BrickWallCircuit& c, std::size_t begin, std::size_t end) {
  DenseOperator u = identity(c.n_qubits());
  for (std::size_t l = begin; l < end; ++l) {
    const Gate& g = c.gates()[l];
    apply_left(u, g.unitary(), g.qubits, c.n_qubits());
  }
  return u;
}

}  // namespace detail

/// Full circuit unitary; layer 1 acts first.
inline DenseOperator circuit_unitary(const BrickWallCircuit& c) {
  return detail::product_of_gates(c, 0, c.parameter_count());
}

/// Every theta shifted by eps; generators unchanged.
inline BrickWallCircuit perturb(const BrickWallCircuit& c, double eps) {
  std::vector<Gate> gates = c.gates();
  for (auto& g : gates) {
    if (!g.fixed) g.theta += eps;
  }
  return BrickWallCircuit(c.n_qubits(), c.depth(), std::move(gates), c.seed());
}

/// U = U_plus * U_minus, where U_minus includes gate l and U_plus holds every
/// later gate (same-layer gates after l included).
struct SplitUnitary {
  DenseOperator u_minus;
  DenseOperator v_embedded;
  DenseOperator u_plus;

  /// dU/dtheta_l = U_plus (-i V_l) U_minus.
  DenseOperator derivative() const { return u_plus * (cplx(0.0, -1.0) * v_embedded) * u_minus; }
};

inline SplitUnitary split_at(const BrickWallCircuit& c, std::size_t l) {
  const Gate& g = c.gate(l);
  if (g.fixed) throw ArgumentError("split_at: gate has no trainable parameter");
  SplitUnitary s;
  s.u_minus = detail::product_of_gates(c, 0, l + 1);
  s.u_plus = detail::product_of_gates(c, l + 1, c.parameter_count());
  s.v_embedded = embed(DenseOperator(g.generator), g.qubits, c.n_qubits());
  return s;
}

}  // namespace scramblenet

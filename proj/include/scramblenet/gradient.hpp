#pragma once

// Analytic and central-difference gradients of OTOC, OP, true error, cost and
// per-state loss with respect to one circuit parameter.

#include "scramblenet/circuit.hpp"
#include "scramblenet/error.hpp"
#include "scramblenet/scrambling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace scramblenet {

inline constexpr double kFdStep = 1e-5;

struct GradientReport {
  std::size_t param_index = 0;
  double grad_analytic = 0.0;
  double grad_fd = 0.0;
  double fd_step = kFdStep;
  double bound = std::numeric_limits<double>::infinity();

  bool fd_agrees() const { return std::abs(grad_analytic - grad_fd) <= std::max(1e-6, 1e-4 * std::abs(grad_fd)); }
  bool within_bound(double tol = 1e-9) const { return std::abs(grad_analytic) <= bound + tol; }
};

/// Central difference of f(circuit with theta_l shifted) at step h.
inline double central_difference(const BrickWallCircuit& c, std::size_t l,
                                 const std::function<double(const BrickWallCircuit&)>& f, double h = kFdStep) {
  const double theta = c.gate(l).theta;
  return (f(c.with_theta(l, theta + h)) - f(c.with_theta(l, theta - h))) / (2.0 * h);
}

namespace detail {

struct UnitaryDerivative {
  DenseOperator u;
  DenseOperator du;
  double v_norm = 1.0;
};

inline UnitaryDerivative unitary_derivative(const BrickWallCircuit& c, std::size_t l) {
  const SplitUnitary s = split_at(c, l);
  return {s.u_plus * s.u_minus, s.derivative(), spectral_norm(DenseOperator(c.gate(l).generator))};
}

/// d(U O U^dag) = dU O U^dag + U O dU^dag.
inline DenseOperator conjugate_derivative(const UnitaryDerivative& d, const PauliAction& o) {
  const DenseOperator x = d.du * pauli_left(o, d.u.adjoint());
  return x + x.adjoint();
}

inline double d_otoc(const UnitaryDerivative& d, const SubsystemPartition& part) {
  return 2.0 * pauli_double_average(part, [&](const PauliAction& oa) {
           return std::pair<DenseOperator, DenseOperator>{conjugate_derivative(d, oa), conjugate(d.u, oa)};
         });
}

inline double d_op(const UnitaryDerivative& d, const DenseOperator& u_s, const SubsystemPartition& part) {
  return pauli_double_average(part, [&](const PauliAction& oa) {
    return std::pair<DenseOperator, DenseOperator>{conjugate_derivative(d, oa), conjugate(u_s, oa)};
  });
}

inline void require_circuit_partition(const BrickWallCircuit& c, const SubsystemPartition& part) {
  if (c.n_qubits() != part.n_total()) throw ArgumentError("gradient: circuit and partition sizes differ");
}

/// d sigma = U_+ [U_- rho U_-^dag, iV] U_+^dag, so that
/// d y~ = Tr(rho U_-^dag [iV, U_+^dag O_C U_+] U_-) = Tr(d sigma O_C).
inline DenseOperator output_derivative(const BrickWallCircuit& c, std::size_t l, const DenseOperator& rho) {
  const SplitUnitary s = split_at(c, l);
  const DenseOperator tau = s.u_minus * rho * s.u_minus.adjoint();
  const DenseOperator iv = cplx(0.0, 1.0) * s.v_embedded;
  return s.u_plus * (tau * iv - iv * tau) * s.u_plus.adjoint();
}

}  // namespace detail

/// d OTOC / d theta_l; cap 4 ||V_l||.
inline GradientReport grad_otoc(const BrickWallCircuit& c, const SubsystemPartition& part, std::size_t l) {
  detail::require_circuit_partition(c, part);
  const auto d = detail::unitary_derivative(c, l);
  GradientReport r;
  r.param_index = l;
  r.grad_analytic = detail::d_otoc(d, part);
  r.grad_fd = central_difference(c, l, [&](const BrickWallCircuit& x) { return otoc_direct(circuit_unitary(x), part).value; });
  r.bound = 4.0 * d.v_norm;
  return r;
}

/// d OP(U, U_S) / d theta_l; cap 2 ||V_l||.
inline GradientReport grad_op(const BrickWallCircuit& c, const DenseOperator& u_s, const SubsystemPartition& part,
                              std::size_t l) {
  detail::require_circuit_partition(c, part);
  const auto d = detail::unitary_derivative(c, l);
  GradientReport r;
  r.param_index = l;
  r.grad_analytic = detail::d_op(d, u_s, part);
  r.grad_fd = central_difference(c, l, [&](const BrickWallCircuit& x) { return op_correlator(circuit_unitary(x), u_s, part); });
  r.bound = 2.0 * d.v_norm;
  return r;
}

/// dL / d theta_l = G [d OTOC - 2 d OP]; cap 8 d_A^2 / ((d_A+1) d_C^2) ||V_l||.
inline GradientReport grad_true_error(const BrickWallCircuit& c, const DenseOperator& u_s, const SubsystemPartition& part,
                                      std::size_t l) {
  detail::require_circuit_partition(c, part);
  const auto d = detail::unitary_derivative(c, l);
  GradientReport r;
  r.param_index = l;
  r.grad_analytic = part.g() * (detail::d_otoc(d, part) - 2.0 * detail::d_op(d, u_s, part));
  r.grad_fd = central_difference(c, l, [&](const BrickWallCircuit& x) {
    return true_error_analytic(circuit_unitary(x), u_s, part).L;
  });
  const double da = part.d_a();
  r.bound = 8.0 * da * da / ((da + 1.0) * part.d_c() * part.d_c()) * d.v_norm;
  return r;
}

/// d L_scram / d theta_l: analytic G d OTOC against a difference quotient of L_scram.
inline GradientReport grad_l_scram(const BrickWallCircuit& c, const SubsystemPartition& part, std::size_t l) {
  detail::require_circuit_partition(c, part);
  const auto d = detail::unitary_derivative(c, l);
  GradientReport r;
  r.param_index = l;
  r.grad_analytic = part.g() * detail::d_otoc(d, part);
  r.grad_fd = central_difference(c, l, [&](const BrickWallCircuit& x) { return l_scram(circuit_unitary(x), part); });
  const double da = part.d_a();
  r.bound = 4.0 * da * da / ((da + 1.0) * part.d_c() * part.d_c()) * d.v_norm;
  return r;
}

/// Per-state cost gradient d/d theta_l avg_{O_C} y~^2 = avg_{O_C} 2 y~ d y~.
inline GradientReport grad_cost(const BrickWallCircuit& c, const DenseOperator& rho, const SubsystemPartition& part,
                                std::size_t l) {
  detail::require_circuit_partition(c, part);
  detail::require_density(rho, Eigen::Index{1} << part.n_total(), "grad_cost");
  const DenseOperator u = circuit_unitary(c);
  const auto y = outputs_on_c(u, rho, part);
  const auto dy = detail::c_expectations(detail::output_derivative(c, l, rho), part);
  double acc = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) acc += 2.0 * y[k] * dy[k];
  GradientReport r;
  r.param_index = l;
  r.grad_analytic = acc / static_cast<double>(y.size());
  r.grad_fd = central_difference(c, l, [&](const BrickWallCircuit& x) { return cost(circuit_unitary(x), rho, part); });
  return r;
}

/// d C_av / d theta_l = G d OTOC, against a difference quotient of cost_av.
inline GradientReport grad_cost_av(const BrickWallCircuit& c, const SubsystemPartition& part, std::size_t l) {
  detail::require_circuit_partition(c, part);
  const auto d = detail::unitary_derivative(c, l);
  GradientReport r;
  r.param_index = l;
  r.grad_analytic = part.g() * detail::d_otoc(d, part);
  r.grad_fd = central_difference(c, l, [&](const BrickWallCircuit& x) { return cost_av(circuit_unitary(x), part); });
  return r;
}

/// Per-state loss gradient d L_d / d theta_l = avg_{O_C} 2 (y~ - y) d y~ (U_S fixed).
inline GradientReport grad_loss_ld(const BrickWallCircuit& c, const DenseOperator& u_s, const StateVector& psi_a,
                                   const SubsystemPartition& part, std::size_t l) {
  detail::require_circuit_partition(c, part);
  const DenseOperator rho = input_density(psi_a, part);
  const DenseOperator u = circuit_unitary(c);
  const auto yt = outputs_on_c(u, rho, part);
  const auto y = outputs_on_c(u_s, rho, part);
  const auto dy = detail::c_expectations(detail::output_derivative(c, l, rho), part);
  double acc = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) acc += 2.0 * (yt[k] - y[k]) * dy[k];
  GradientReport r;
  r.param_index = l;
  r.grad_analytic = acc / static_cast<double>(y.size());
  r.grad_fd = central_difference(c, l, [&](const BrickWallCircuit& x) { return loss_ld(circuit_unitary(x), u_s, psi_a, part); });
  return r;
}

/// Analytic per-state loss gradients for every parameter, without difference probes.
inline std::vector<double> loss_ld_gradient(const BrickWallCircuit& c, const DenseOperator& u_s, const StateVector& psi_a,
                                            const SubsystemPartition& part) {
  detail::require_circuit_partition(c, part);
  const DenseOperator rho = input_density(psi_a, part);
  const DenseOperator u = circuit_unitary(c);
  const auto yt = outputs_on_c(u, rho, part);
  const auto y = outputs_on_c(u_s, rho, part);
  std::vector<double> out;
  for (std::size_t l = 0; l < c.parameter_count(); ++l) {
    const auto dy = detail::c_expectations(detail::output_derivative(c, l, rho), part);
    double acc = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) acc += 2.0 * (yt[k] - y[k]) * dy[k];
    out.push_back(acc / static_cast<double>(y.size()));
  }
  return out;
}

/// Analytic per-state cost gradients for every parameter.
inline std::vector<double> cost_gradient(const BrickWallCircuit& c, const DenseOperator& rho, const SubsystemPartition& part) {
  detail::require_circuit_partition(c, part);
  detail::require_density(rho, Eigen::Index{1} << part.n_total(), "cost_gradient");
  const auto y = outputs_on_c(circuit_unitary(c), rho, part);
  std::vector<double> out;
  for (std::size_t l = 0; l < c.parameter_count(); ++l) {
    const auto dy = detail::c_expectations(detail::output_derivative(c, l, rho), part);
    double acc = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) acc += 2.0 * y[k] * dy[k];
    out.push_back(acc / static_cast<double>(y.size()));
  }
  return out;
}

/// Analytic OTOC gradient for every parameter.
inline std::vector<double> otoc_gradient(const BrickWallCircuit& c, const SubsystemPartition& part) {
  detail::require_circuit_partition(c, part);
  std::vector<double> out;
  for (std::size_t l = 0; l < c.parameter_count(); ++l) out.push_back(detail::d_otoc(detail::unitary_derivative(c, l), part));
  return out;
}

/// Analytic true-error gradient for every parameter.
inline std::vector<double> true_error_gradient(const BrickWallCircuit& c, const DenseOperator& u_s,
                                               const SubsystemPartition& part) {
  detail::require_circuit_partition(c, part);
  std::vector<double> out;
  for (std::size_t l = 0; l < c.parameter_count(); ++l) {
    const auto d = detail::unitary_derivative(c, l);
    out.push_back(part.g() * (detail::d_otoc(d, part) - 2.0 * detail::d_op(d, u_s, part)));
  }
  return out;
}

struct LandscapePoint {
  double eps = 0.0;
  double otoc = 0.0;
};

struct LandscapeScan {
  std::vector<LandscapePoint> points;

  double flatness() const {
    if (points.empty()) return 0.0;
    auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                        [](const LandscapePoint& a, const LandscapePoint& b) { return a.otoc < b.otoc; });
    return hi->otoc - lo->otoc;
  }
};

/// OTOC(perturb(c, eps)) over the grid.
inline LandscapeScan landscape_scan(const BrickWallCircuit& c, const SubsystemPartition& part,
                                    const std::vector<double>& eps_grid) {
  detail::require_circuit_partition(c, part);
  for (double e : eps_grid) {
    if (!std::isfinite(e)) throw ArgumentError("landscape_scan: grid value is not finite");
  }
  LandscapeScan scan;
  for (double e : eps_grid) scan.points.push_back({e, otoc(circuit_unitary(perturb(c, e)), part).value});
  return scan;
}

/// n points evenly spaced on [lo, hi].
inline std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw ArgumentError("linspace: need at least one point");
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  return v;
}

}  // namespace scramblenet

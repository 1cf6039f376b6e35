#pragma once

// Loss, true error, OTOC bounds on the true error, loss variants, the cost
// function and the Levy concentration constants.

#include "scramblenet/linalg.hpp"
#include "scramblenet/partition.hpp"
#include "scramblenet/pauli.hpp"
#include "scramblenet/scrambling.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace scramblenet {

/// rho_d = |psi><psi|_A (x) I_B / d_B.
inline DenseOperator input_density(const StateVector& psi_a, const SubsystemPartition& part) {
  if (psi_a.size() != static_cast<Eigen::Index>(part.d_a())) throw ArgumentError("input_density: psi_A has wrong dimension");
  if (std::abs(psi_a.norm() - 1.0) > 1e-10) throw ArgumentError("input_density: psi_A is not normalized");
  const auto db = static_cast<Eigen::Index>(part.d_b());
  return kron(projector(psi_a), DenseOperator::Identity(db, db) / part.d_b());
}

/// y(O_C) = Tr(U rho U^dag O_C) for every O_C on C, in enumeration order.
inline std::vector<double> outputs_on_c(const DenseOperator& u, const DenseOperator& rho, const SubsystemPartition& part) {
  require_partition_dim(u, part, "outputs_on_c");
  return detail::c_expectations(u * rho * u.adjoint(), part);
}

/// L_d = avg_{O_C} |y~_d - y_d|^2 for rho_d built from psi_A.
inline double loss_ld(const DenseOperator& u, const DenseOperator& u_s, const StateVector& psi_a,
                      const SubsystemPartition& part) {
  require_partition_dim(u_s, part, "loss_ld");
  const DenseOperator rho = input_density(psi_a, part);
  const auto yt = outputs_on_c(u, rho, part);
  const auto y = outputs_on_c(u_s, rho, part);
  double acc = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) acc += (yt[k] - y[k]) * (yt[k] - y[k]);
  return acc / static_cast<double>(y.size());
}

/// L_d = d_D^2 [C_d(U,U) + C_d(U_S,U_S) - 2 C_d(U,U_S)].
inline double loss_ld_correlator(const DenseOperator& u, const DenseOperator& u_s, const StateVector& psi_a,
                                 const SubsystemPartition& part) {
  const DenseOperator rho = input_density(psi_a, part);
  const double dd2 = part.d_d() * part.d_d();
  return dd2 * (correlator_cd(u, u, rho, part) + correlator_cd(u_s, u_s, rho, part) -
                2.0 * correlator_cd(u, u_s, rho, part));
}

struct ErrorBundle {
  double L = 0.0;
  double L_plus = 0.0;
  double L_minus = 0.0;
  double otoc_u = 0.0;
  double otoc_us = 0.0;
  double op_corr = 0.0;
  SubsystemPartition partition{2, 1, 1};

  /// 4 G sqrt(OTOC(U) OTOC(U_S)).
  double gap_bound() const { return 4.0 * partition.g() * std::sqrt(otoc_u * otoc_us); }

  bool satisfies_bounds(double tol = 1e-9) const {
    return L_minus <= L + tol && L <= L_plus + tol && std::abs(L - L_plus) <= gap_bound() + tol &&
           std::abs(L - L_minus) <= gap_bound() + tol;
  }
};

/// L = G [OTOC(U) + OTOC(U_S) - 2 OP(U,U_S)] with L_pm = G [sqrt OTOC(U) +- sqrt OTOC(U_S)]^2.
inline ErrorBundle true_error_analytic(const DenseOperator& u, const DenseOperator& u_s, const SubsystemPartition& part) {
  ErrorBundle b;
  b.partition = part;
  b.otoc_u = otoc(u, part).value;
  b.otoc_us = otoc(u_s, part).value;
  b.op_corr = op_correlator(u, u_s, part);
  const double g = part.g();
  b.L = g * (b.otoc_u + b.otoc_us - 2.0 * b.op_corr);
  const double ru = std::sqrt(std::max(b.otoc_u, 0.0));
  const double rs = std::sqrt(std::max(b.otoc_us, 0.0));
  b.L_plus = g * (ru + rs) * (ru + rs);
  b.L_minus = g * (ru - rs) * (ru - rs);
  return b;
}

/// 2 G [OTOC_scram - 1/d_A^2].
inline double l_floor(const SubsystemPartition& part) {
  return 2.0 * part.g() * (otoc_scram(part) - 1.0 / (part.d_a() * part.d_a()));
}

/// Large-size limit of the floor, 2 / (d_B d_tot).
inline double l_floor_asymptote(const SubsystemPartition& part) { return 2.0 / (part.d_b() * part.d_tot()); }

/// G [otoc_u + OTOC_scram - 2/d_A^2], for an already evaluated OTOC(U).
inline double l_scram_from_otoc(double otoc_u, const SubsystemPartition& part) {
  return part.g() * (otoc_u + otoc_scram(part) - 2.0 / (part.d_a() * part.d_a()));
}

inline double l_scram(const DenseOperator& u, const SubsystemPartition& part) {
  return l_scram_from_otoc(otoc(u, part).value, part);
}

struct BoundPair {
  double plus = 0.0;
  double minus = 0.0;
};

/// 2^{N-N_A-N_D} G [2^{-S2_AC(U)/2} +- 2^{-S2_AC(U_S)/2}]^2.
inline BoundPair renyi_bound(const DenseOperator& u, const DenseOperator& u_s, const SubsystemPartition& part) {
  const double su = renyi2_ac(u, part);
  const double ss = renyi2_ac(u_s, part);
  const double pre = std::exp2(part.n_total() - part.n_a() - part.n_d()) * part.g();
  const double a = std::exp2(-su / 2.0);
  const double b = std::exp2(-ss / 2.0);
  return {pre * (a + b) * (a + b), pre * (a - b) * (a - b)};
}

/// G [2^{(I3(U)-2N_A)/2} + 2^{(I3(U_S)-2N_A)/2} - 2 OP(U,U_S)].
inline double mi_lower_bound(const DenseOperator& u, const DenseOperator& u_s, const SubsystemPartition& part) {
  const double i3u = tripartite_mi(u, part);
  const double i3s = tripartite_mi(u_s, part);
  const double na2 = 2.0 * part.n_a();
  return part.g() * (std::exp2((i3u - na2) / 2.0) + std::exp2((i3s - na2) / 2.0) - 2.0 * op_correlator(u, u_s, part));
}

struct LossVariants {
  double v1 = 0.0;           // avg_d avg_{S_C} |dy|^2
  double v2 = 0.0;           // avg_d |avg_{S_C} dy|^2
  double v3 = 0.0;           // avg_d |avg_{S_C} dy|
  double l_empirical = 0.0;  // avg_d avg_{P_C} |dy|^2 on the same samples
  std::size_t subset_size = 0;
  std::size_t n_samples = 0;
};

/// Variant averages over a subset S_C of the Pauli group on C, estimated
/// over the given input states.
inline LossVariants loss_variants(const DenseOperator& u, const DenseOperator& u_s, const std::vector<StateVector>& psi_samples,
                                  const std::vector<PauliString>& s_c, const SubsystemPartition& part) {
  if (s_c.empty()) throw ArgumentError("loss_variants: S_C is empty");
  if (psi_samples.empty()) throw ArgumentError("loss_variants: no input samples");
  std::vector<PauliAction> subset;
  for (const auto& p : s_c) {
    if (p.n_qubits() != part.n_c()) throw ArgumentError("loss_variants: S_C strings must act on N_C qubits");
    subset.push_back(place(p, part.c_qubits(), part.n_c()));
  }
  const auto full = detail::placed_group(part.n_c(), part.c_qubits(), part.n_c());
  LossVariants out;
  out.subset_size = s_c.size();
  out.n_samples = psi_samples.size();
  for (const auto& psi : psi_samples) {
    const DenseOperator rho = input_density(psi, part);
    const DenseOperator delta = partial_trace(u * rho * u.adjoint() - u_s * rho * u_s.adjoint(), part.n_total(), part.c_qubits());
    double sq = 0.0;
    double lin = 0.0;
    for (const auto& a : subset) {
      const double dy = pauli_expectation(a, delta).real();
      sq += dy * dy;
      lin += dy;
    }
    const double n_sub = static_cast<double>(subset.size());
    out.v1 += sq / n_sub;
    out.v2 += (lin / n_sub) * (lin / n_sub);
    out.v3 += std::abs(lin / n_sub);
    double full_sq = 0.0;
    for (const auto& a : full) {
      const double dy = pauli_expectation(a, delta).real();
      full_sq += dy * dy;
    }
    out.l_empirical += full_sq / static_cast<double>(full.size());
  }
  const double n = static_cast<double>(psi_samples.size());
  out.v1 /= n;
  out.v2 /= n;
  out.v3 /= n;
  out.l_empirical /= n;
  return out;
}

/// Cost avg_{O_C} y~^2 for an input density.
inline double cost(const DenseOperator& u, const DenseOperator& rho, const SubsystemPartition& part) {
  detail::require_density(rho, u.rows(), "cost");
  const auto y = outputs_on_c(u, rho, part);
  double acc = 0.0;
  for (double v : y) acc += v * v;
  return acc / static_cast<double>(y.size());
}

/// d_D^2 C_d(U,U).
inline double cost_correlator(const DenseOperator& u, const DenseOperator& rho, const SubsystemPartition& part) {
  return part.d_d() * part.d_d() * correlator_cd(u, u, rho, part);
}

/// Haar average over psi_A of the cost, G [1/d_A + OTOC(U)].
inline double cost_av(const DenseOperator& u, const SubsystemPartition& part) {
  return part.g() * (1.0 / part.d_a() + otoc(u, part).value);
}

/// f(eps) = sqrt((9 pi^3 / (2 d_A)) ln(2/eps)).
inline double f_epsilon(double epsilon, const SubsystemPartition& part) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ArgumentError("f_epsilon: epsilon must lie in (0, 1)");
  const double pi3 = std::numbers::pi * std::numbers::pi * std::numbers::pi;
  return std::sqrt(9.0 * pi3 / (2.0 * part.d_a()) * std::log(2.0 / epsilon));
}

struct LevyBundle {
  double epsilon = 0.0;
  double f_eps = 0.0;
  double eta = 0.0;
  double eta_g = 0.0;
  double eta_C = 0.0;
  double eta_Cg = 0.0;
};

/// Lipschitz constants from OTOC values, with generator norm v_norm.
inline LevyBundle levy_bundle_from(double otoc_u, double otoc_us, const SubsystemPartition& part, double epsilon,
                                   double v_norm = 1.0) {
  LevyBundle b;
  b.epsilon = epsilon;
  b.f_eps = f_epsilon(epsilon, part);
  const double g = part.g();
  const double ru = std::sqrt(std::max(otoc_u, 0.0));
  const double rs = std::sqrt(std::max(otoc_us, 0.0));
  const double l_plus = g * (ru + rs) * (ru + rs);
  const double da = part.d_a();
  const double root = std::sqrt(da * (da + 1.0) * l_plus);
  b.eta = 8.0 * root;
  b.eta_g = 8.0 * v_norm * (root + 2.0);
  b.eta_C = 4.0 * std::sqrt(da) * da / part.d_c() * ru;
  b.eta_Cg = 8.0 * v_norm * (std::sqrt(da) * da / part.d_c() * ru + 1.0);
  return b;
}

inline LevyBundle levy_bundle(const DenseOperator& u, const DenseOperator& u_s, const SubsystemPartition& part,
                              double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ArgumentError("levy_bundle: epsilon must lie in (0, 1)");
  return levy_bundle_from(otoc(u, part).value, otoc(u_s, part).value, part, epsilon);
}

/// Maximally scrambling limit of eta f(eps): (16/d_C) sqrt((9 pi^3/2) ln(2/eps)).
inline double levy_scram_limit(const SubsystemPartition& part, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ArgumentError("levy_scram_limit: epsilon must lie in (0, 1)");
  const double pi3 = std::numbers::pi * std::numbers::pi * std::numbers::pi;
  return 16.0 / part.d_c() * std::sqrt(9.0 * pi3 / 2.0 * std::log(2.0 / epsilon));
}

/// Maximally scrambling gradient bound 16 ||V|| (1/d_C + 1/sqrt(d_A)) sqrt((9 pi^3/2) ln(2/eps)).
inline double grad_levy_scram_limit(const SubsystemPartition& part, double epsilon, double v_norm = 1.0) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ArgumentError("grad_levy_scram_limit: epsilon must lie in (0, 1)");
  const double pi3 = std::numbers::pi * std::numbers::pi * std::numbers::pi;
  return 16.0 * v_norm * (1.0 / part.d_c() + 1.0 / std::sqrt(part.d_a())) *
         std::sqrt(9.0 * pi3 / 2.0 * std::log(2.0 / epsilon));
}

}  // namespace scramblenet

#pragma once

// Averaged OTOC (Pauli double sum and Choi/Renyi route), the cross
// correlator OP, the C_d correlator, commutator norms, Choi-state entropies
// and the tripartite mutual information.

#include "scramblenet/linalg.hpp"
#include "scramblenet/parallel.hpp"
#include "scramblenet/partition.hpp"
#include "scramblenet/pauli.hpp"

#include <cmath>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scramblenet {

/// Largest N_A or N_D handled by the Pauli double sum.
inline constexpr int kMaxDirectSubsystemQubits = 3;

enum class OtocRoute { direct_average, renyi };

inline std::string to_string(OtocRoute r) { return r == OtocRoute::direct_average ? "direct" : "renyi"; }

struct OtocReport {
  double value = 0.0;
  OtocRoute route = OtocRoute::direct_average;
  SubsystemPartition partition{2, 1, 1};
};

namespace detail {

inline void require_unitary(const DenseOperator& u, const char* what) {
  if (!is_unitary(u, 1e-8)) throw ArgumentError(std::string(what) + ": operator is not unitary");
}

inline std::vector<PauliAction> placed_group(int n_sub, std::span<const int> qubits, int n_total) {
  std::vector<PauliAction> out;
  for (const auto& p : enumerate_group(n_sub)) out.push_back(place(p, qubits, n_total));
  return out;
}

/// Tr(w1 O w2 O) for a placed Pauli O, given w2t = w2^T.
///   Tr(W1 O W2 O) = (-1)^{n_y} sum_{r,c} s(r) s(c) W1(c, r^x) W2(r, c^x)
inline cplx pauli_sandwich_trace(const DenseOperator& w1, const DenseOperator& w2t, const PauliAction& o) {
  const Eigen::Index d = w1.rows();
  std::vector<double> s(static_cast<std::size_t>(d));
  for (Eigen::Index j = 0; j < d; ++j) s[static_cast<std::size_t>(j)] = o.sign(static_cast<std::uint64_t>(j));
  cplx total{0.0, 0.0};
  for (Eigen::Index r = 0; r < d; ++r) {
    const cplx* a = w1.col(static_cast<Eigen::Index>(static_cast<std::uint64_t>(r) ^ o.x)).data();
    const cplx* b = w2t.col(r).data();
    cplx acc{0.0, 0.0};
    for (Eigen::Index c = 0; c < d; ++c) {
      acc += s[static_cast<std::size_t>(c)] * a[c] * b[static_cast<std::uint64_t>(c) ^ o.x];
    }
    total += s[static_cast<std::size_t>(r)] * acc;
  }
  return (o.n_y & 1) ? -total : total;
}

/// U O U^dagger for a placed Pauli O.
inline DenseOperator conjugate(const DenseOperator& u, const PauliAction& o) {
  return u * pauli_left(o, u.adjoint());
}

/// avg_{O_A} avg_{O_D} Tr(W1 O_D W2 O_D) / d_tot, with (W1, W2) = make(O_A).
template <class MakePair>
double pauli_double_average(const SubsystemPartition& part, MakePair&& make) {
  if (part.n_a() > kMaxDirectSubsystemQubits || part.n_d() > kMaxDirectSubsystemQubits) {
    throw SizeError("direct Pauli average: N_A and N_D are capped at 3");
  }
  const auto a_group = placed_group(part.n_a(), part.a_qubits(), part.n_total());
  const auto d_group = placed_group(part.n_d(), part.d_qubits(), part.n_total());
  const auto partial = parallel_map<double>(a_group.size(), [&](std::size_t i) {
    const std::pair<DenseOperator, DenseOperator> w = make(a_group[i]);
    const DenseOperator w2t = w.second.transpose();
    double acc = 0.0;
    for (const auto& od : d_group) acc += pauli_sandwich_trace(w.first, w2t, od).real();
    return acc;
  });
  double sum = 0.0;
  for (double v : partial) sum += v;
  return sum / (static_cast<double>(a_group.size()) * static_cast<double>(d_group.size()) * part.d_tot());
}

}  // namespace detail

/// Pauli double-sum OTOC: avg_A avg_D Tr(U O_A U^dag O_D U O_A U^dag O_D) / d_tot.
inline OtocReport otoc_direct(const DenseOperator& u, const SubsystemPartition& part) {
  require_partition_dim(u, part, "otoc_direct");
  detail::require_unitary(u, "otoc_direct");
  const double v = detail::pauli_double_average(part, [&](const PauliAction& oa) {
    DenseOperator w = detail::conjugate(u, oa);
    return std::pair<DenseOperator, DenseOperator>{w, w};
  });
  return {v, OtocRoute::direct_average, part};
}

/// OP(U, U_S) = avg_A avg_D Tr(U O_A U^dag O_D U_S O_A U_S^dag O_D) / d_tot.
inline double op_correlator(const DenseOperator& u, const DenseOperator& u_s, const SubsystemPartition& part) {
  require_partition_dim(u, part, "op_correlator");
  require_partition_dim(u_s, part, "op_correlator");
  detail::require_unitary(u, "op_correlator");
  detail::require_unitary(u_s, "op_correlator");
  return detail::pauli_double_average(part, [&](const PauliAction& oa) {
    return std::pair<DenseOperator, DenseOperator>{detail::conjugate(u, oa), detail::conjugate(u_s, oa)};
  });
}

/// Pure Choi state |U> = d^{-1/2} sum_i |i>_in |U i>_out on 2N qubits. The
/// input copy occupies qubits 0..N-1, the output copy N..2N-1.
class ChoiState {
 public:
  explicit ChoiState(const DenseOperator& u) {
    require_square(u, "choi");
    n_ = qubit_count(u.rows());
    if (2 * n_ > kMaxVectorQubits) throw SizeError("choi: state exceeds 16 qubits");
    detail::require_unitary(u, "choi");
    const Eigen::Index d = u.rows();
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    psi_.resize(d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) psi_(i * d + j) = u(j, i) * norm;
    }
  }

  int n_qubits() const { return n_; }
  int n_choi_qubits() const { return 2 * n_; }
  const StateVector& state() const { return psi_; }

  /// Choi-register qubits of the named subsystems, e.g. "AC" or "BD".
  static std::vector<int> labels(const SubsystemPartition& part, std::string_view which) {
    std::vector<int> out;
    const int n = part.n_total();
    for (char ch : which) {
      std::vector<int> q;
      switch (ch) {
        case 'A': q = part.a_qubits(); break;
        case 'B': q = part.b_qubits(); break;
        case 'C': q = part.c_qubits(); break;
        case 'D': q = part.d_qubits(); break;
        default: throw ArgumentError("ChoiState::labels: unknown subsystem '" + std::string(1, ch) + "'");
      }
      const int offset = (ch == 'C' || ch == 'D') ? n : 0;
      for (int x : q) out.push_back(x + offset);
    }
    return detail::sorted_unique(out);
  }

  DenseOperator marginal(std::span<const int> keep) const { return reduced_density(psi_, 2 * n_, keep); }

  /// Full projector; only for small registers.
  DenseOperator density() const {
    require_operator_qubits(2 * n_);
    return projector(psi_);
  }

  /// Entropy (order 1 = von Neumann, 2 = Renyi) of the marginal on `keep`,
  /// evaluated on whichever of keep / complement is smaller.
  double entropy(std::span<const int> keep, int order) const {
    const auto kept = detail::sorted_unique(keep);
    std::vector<int> side = kept;
    if (2 * static_cast<int>(kept.size()) > 2 * n_) {
      side = detail::IndexSplit(2 * n_, kept).rest;
    }
    if (side.empty()) return 0.0;
    const DenseOperator rho = marginal(side);
    if (order == 1) return von_neumann_entropy(rho);
    if (order == 2) return renyi2_entropy(rho);
    throw ArgumentError("ChoiState::entropy: order must be 1 or 2");
  }

  double entropy(const SubsystemPartition& part, std::string_view which, int order) const {
    return entropy(labels(part, which), order);
  }

 private:
  int n_ = 0;
  StateVector psi_;
};

inline ChoiState choi(const DenseOperator& u) { return ChoiState(u); }

/// S^(2) of the AC marginal of the Choi state.
inline double renyi2_ac(const DenseOperator& u, const SubsystemPartition& part) {
  require_partition_dim(u, part, "renyi2_ac");
  return choi(u).entropy(part, "AC", 2);
}

/// OTOC = 2^{N - N_A - N_D - S^(2)_AC}.
inline OtocReport otoc_renyi(const DenseOperator& u, const SubsystemPartition& part) {
  const double s2 = renyi2_ac(u, part);
  const double v = std::exp2(part.n_total() - part.n_a() - part.n_d() - s2);
  return {v, OtocRoute::renyi, part};
}

/// Direct route when both subsystems are small enough, else the Renyi route.
inline OtocReport otoc(const DenseOperator& u, const SubsystemPartition& part) {
  if (part.n_a() <= kMaxDirectSubsystemQubits && part.n_d() <= kMaxDirectSubsystemQubits) {
    return otoc_direct(u, part);
  }
  return otoc_renyi(u, part);
}

/// Haar value [d_tot^2/d_A^2 - 1 + d_C^2 (1 - 1/d_A^2)] / (d_tot^2 - 1).
inline double otoc_scram(const SubsystemPartition& part) {
  const double dt2 = part.d_tot() * part.d_tot();
  const double da2 = part.d_a() * part.d_a();
  const double dc2 = part.d_c() * part.d_c();
  return (dt2 / da2 - 1.0 + dc2 * (1.0 - 1.0 / da2)) / (dt2 - 1.0);
}

/// Large-d_tot limit 1/d_A^2 + 1/d_D^2 - 1/(d_A^2 d_D^2).
inline double otoc_scram_limit(const SubsystemPartition& part) {
  const double da2 = part.d_a() * part.d_a();
  const double dd2 = part.d_d() * part.d_d();
  return 1.0 / da2 + 1.0 / dd2 - 1.0 / (da2 * dd2);
}

/// I_3(A:C:D) = I(A:C) + I(A:D) - I(A:CD) from von Neumann entropies of Choi marginals.
inline double tripartite_mi(const DenseOperator& u, const SubsystemPartition& part) {
  require_partition_dim(u, part, "tripartite_mi");
  const ChoiState c = choi(u);
  const double s_a = c.entropy(part, "A", 1);
  const double s_c = c.entropy(part, "C", 1);
  const double s_d = c.entropy(part, "D", 1);
  const double s_cd = c.entropy(part, "CD", 1);
  const double s_ac = c.entropy(part, "AC", 1);
  const double s_ad = c.entropy(part, "AD", 1);
  const double s_acd = c.entropy(part, "ACD", 1);
  const double i_ac = s_a + s_c - s_ac;
  const double i_ad = s_a + s_d - s_ad;
  const double i_acd = s_a + s_cd - s_acd;
  return i_ac + i_ad - i_acd;
}

namespace detail {

inline void require_density(const DenseOperator& rho, Eigen::Index dim, const char* what) {
  if (rho.rows() != dim || rho.cols() != dim) throw ArgumentError(std::string(what) + ": density dimension mismatch");
  if (!is_hermitian(rho, 1e-10)) throw ArgumentError(std::string(what) + ": density is not Hermitian");
  if (std::abs(rho.trace() - cplx(1.0, 0.0)) > 1e-10) throw ArgumentError(std::string(what) + ": density trace is not 1");
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) throw ArgumentError(std::string(what) + ": density is not positive");
}

/// Tr(sigma O_C) for every O_C in enumeration order, O_C acting on C.
inline std::vector<double> c_expectations(const DenseOperator& sigma, const SubsystemPartition& part) {
  const DenseOperator sigma_c = partial_trace(sigma, part.n_total(), part.c_qubits());
  const auto group = placed_group(part.n_c(), part.c_qubits(), part.n_c());
  std::vector<double> out;
  out.reserve(group.size());
  for (const auto& a : group) out.push_back(pauli_expectation(a, sigma_c).real());
  return out;
}

}  // namespace detail

/// C_d(U1, U2) = avg_{O_D} Tr(U1 rho U1^dag O_D U2 rho U2^dag O_D) / d_tot.
inline double correlator_cd(const DenseOperator& u1, const DenseOperator& u2, const DenseOperator& rho,
                            const SubsystemPartition& part) {
  require_partition_dim(u1, part, "correlator_cd");
  require_partition_dim(u2, part, "correlator_cd");
  detail::require_density(rho, u1.rows(), "correlator_cd");
  if (part.n_d() > kMaxPauliGroupQubits) throw SizeError("correlator_cd: D exceeds Pauli group cap");
  const DenseOperator s1 = u1 * rho * u1.adjoint();
  const DenseOperator s2t = (u2 * rho * u2.adjoint()).transpose();
  const auto d_group = detail::placed_group(part.n_d(), part.d_qubits(), part.n_total());
  double acc = 0.0;
  for (const auto& od : d_group) acc += detail::pauli_sandwich_trace(s1, s2t, od).real();
  return acc / (static_cast<double>(d_group.size()) * part.d_tot());
}

/// Same quantity through avg_{O_C} Tr(U1 rho U1^dag O_C) Tr(U2 rho U2^dag O_C) / d_D^2.
inline double correlator_cd_via_c(const DenseOperator& u1, const DenseOperator& u2, const DenseOperator& rho,
                                  const SubsystemPartition& part) {
  require_partition_dim(u1, part, "correlator_cd_via_c");
  require_partition_dim(u2, part, "correlator_cd_via_c");
  detail::require_density(rho, u1.rows(), "correlator_cd_via_c");
  const auto y1 = detail::c_expectations(u1 * rho * u1.adjoint(), part);
  const auto y2 = detail::c_expectations(u2 * rho * u2.adjoint(), part);
  double acc = 0.0;
  for (std::size_t k = 0; k < y1.size(); ++k) acc += y1[k] * y2[k];
  return acc / static_cast<double>(y1.size()) / (part.d_d() * part.d_d());
}

namespace detail {

inline void require_strings(const PauliString& o_a, const PauliString& o_d, const SubsystemPartition& part) {
  if (o_a.n_qubits() != part.n_a()) throw ArgumentError("commutator: O_A must act on N_A qubits");
  if (o_d.n_qubits() != part.n_d()) throw ArgumentError("commutator: O_D must act on N_D qubits");
}

}  // namespace detail

/// || [U^dag O_D U, O_A] ||_HS from the explicit commutator.
inline double commutator_hs_norm(const DenseOperator& u, const PauliString& o_a, const PauliString& o_d,
                                 const SubsystemPartition& part) {
  require_partition_dim(u, part, "commutator_hs_norm");
  detail::require_strings(o_a, o_d, part);
  const PauliAction a = place(o_a, part.a_qubits(), part.n_total());
  const PauliAction d = place(o_d, part.d_qubits(), part.n_total());
  const DenseOperator od_t = u.adjoint() * pauli_left(d, u);
  const DenseOperator comm = pauli_right(od_t, a) - pauli_left(a, od_t);
  return comm.norm();
}

/// sqrt(2 d_tot (1 - Re<O_D(t) O_A O_D(t) O_A>)) with <X> = Tr X / d_tot.
inline double commutator_hs_norm_from_correlator(const DenseOperator& u, const PauliString& o_a,
                                                 const PauliString& o_d, const SubsystemPartition& part) {
  require_partition_dim(u, part, "commutator_hs_norm_from_correlator");
  detail::require_strings(o_a, o_d, part);
  const PauliAction a = place(o_a, part.a_qubits(), part.n_total());
  const PauliAction d = place(o_d, part.d_qubits(), part.n_total());
  const DenseOperator od_t = u.adjoint() * pauli_left(d, u);
  const DenseOperator od_t_transposed = od_t.transpose();
  const double corr = detail::pauli_sandwich_trace(od_t, od_t_transposed, a).real() / part.d_tot();
  return std::sqrt(std::max(0.0, 2.0 * part.d_tot() * (1.0 - corr)));
}

}  // namespace scramblenet

#pragma once

// Dense complex operator algebra on qubit registers.
//
// Qubit 0 is the most significant tensor factor: for an n-qubit register the
// computational-basis index of |b_0 b_1 ... b_{n-1}> is sum_q b_q 2^{n-1-q}.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace scramblenet {

using cplx = std::complex<double>;
using DenseOperator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr int kMaxOperatorQubits = 12;
inline constexpr int kMaxVectorQubits = 16;

class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Number of qubits n with dim == 2^n; throws if dim is not a power of two.
inline int qubit_count(Eigen::Index dim) {
  if (dim < 1 || (dim & (dim - 1)) != 0) {
    throw ArgumentError("dimension " + std::to_string(dim) + " is not a power of two");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

inline void require_operator_qubits(int n) {
  if (n > kMaxOperatorQubits) {
    throw SizeError("operator on " + std::to_string(n) + " qubits exceeds cap of " +
                    std::to_string(kMaxOperatorQubits));
  }
}

inline void require_square(const DenseOperator& op, const char* what) {
  if (op.rows() != op.cols()) throw ArgumentError(std::string(what) + ": operator is not square");
  qubit_count(op.rows());
}

/// Bit mask (in basis-index coordinates) of a single qubit.
inline std::uint64_t qubit_bit(int qubit, int n_qubits) {
  return std::uint64_t{1} << (n_qubits - 1 - qubit);
}

inline DenseOperator identity(int n_qubits) {
  require_operator_qubits(n_qubits);
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  return DenseOperator::Identity(d, d);
}

inline DenseOperator dagger(const DenseOperator& a) { return a.adjoint(); }

inline cplx trace(const DenseOperator& a) { return a.trace(); }

/// Hilbert-Schmidt inner product Tr(a^dagger b).
inline cplx frobenius_inner(const DenseOperator& a, const DenseOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ArgumentError("frobenius_inner: shape mismatch");
  return (a.array().conjugate() * b.array()).sum();
}

inline double max_abs(const DenseOperator& a) { return a.cwiseAbs().maxCoeff(); }

inline bool is_hermitian(const DenseOperator& a, double tol = 1e-10) {
  return a.rows() == a.cols() && max_abs(a - a.adjoint()) <= tol;
}

inline bool is_unitary(const DenseOperator& a, double tol = 1e-10) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a.adjoint() * a - DenseOperator::Identity(a.rows(), a.cols())) <= tol;
}

/// Largest singular value.
inline double spectral_norm(const DenseOperator& a) {
  if (a.size() == 0) return 0.0;
  if (is_hermitian(a, 1e-13)) {
    Eigen::SelfAdjointEigenSolver<DenseOperator> es(a, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::JacobiSVD<DenseOperator> svd(a);
  return svd.singularValues()(0);
}

inline StateVector apply(const DenseOperator& op, const StateVector& psi) {
  if (op.cols() != psi.size()) throw ArgumentError("apply: dimension mismatch");
  return op * psi;
}

inline StateVector normalized(StateVector psi) {
  const double nrm = psi.norm();
  if (nrm == 0.0) throw ArgumentError("normalized: zero vector");
  psi /= nrm;
  return psi;
}

inline DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  const int n = qubit_count(a.rows()) + qubit_count(b.rows());
  if (n > kMaxVectorQubits) throw SizeError("kron: result dimension exceeds 2^16");
  DenseOperator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline DenseOperator projector(const StateVector& psi) { return psi * psi.adjoint(); }

namespace detail {

// Splits basis indices of an n-qubit register into a "kept" part (bits of the
// listed qubits, first-listed most significant) and the remaining part (in
// ascending qubit order).
struct IndexSplit {
  int n_qubits = 0;
  std::vector<int> kept;
  std::vector<int> rest;

  IndexSplit(int n, std::span<const int> keep) : n_qubits(n), kept(keep.begin(), keep.end()) {
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (int q : kept) {
      if (q < 0 || q >= n) throw ArgumentError("qubit index " + std::to_string(q) + " out of range");
      if (used[static_cast<std::size_t>(q)]) throw ArgumentError("duplicate qubit index " + std::to_string(q));
      used[static_cast<std::size_t>(q)] = true;
    }
    for (int q = 0; q < n; ++q) {
      if (!used[static_cast<std::size_t>(q)]) rest.push_back(q);
    }
  }

  std::uint64_t compose(std::uint64_t kept_value, std::uint64_t rest_value) const {
    std::uint64_t full = 0;
    const int nk = static_cast<int>(kept.size());
    for (int i = 0; i < nk; ++i) {
      if ((kept_value >> (nk - 1 - i)) & 1U) full |= qubit_bit(kept[static_cast<std::size_t>(i)], n_qubits);
    }
    const int nr = static_cast<int>(rest.size());
    for (int i = 0; i < nr; ++i) {
      if ((rest_value >> (nr - 1 - i)) & 1U) full |= qubit_bit(rest[static_cast<std::size_t>(i)], n_qubits);
    }
    return full;
  }

  // full index for every (kept, rest) pair, laid out as table[rest * dk + kept]
  std::vector<std::uint64_t> table() const {
    const std::uint64_t dk = std::uint64_t{1} << kept.size();
    const std::uint64_t dr = std::uint64_t{1} << rest.size();
    std::vector<std::uint64_t> t(dk * dr);
    for (std::uint64_t r = 0; r < dr; ++r) {
      for (std::uint64_t k = 0; k < dk; ++k) t[r * dk + k] = compose(k, r);
    }
    return t;
  }
};

inline std::vector<int> sorted_unique(std::span<const int> qubits) {
  std::vector<int> v(qubits.begin(), qubits.end());
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) throw ArgumentError("duplicate qubit index");
  return v;
}

}  // namespace detail

/// Reduced operator on `keep` (ascending qubit order), tracing out the rest.
inline DenseOperator partial_trace(const DenseOperator& op, int n_qubits, std::span<const int> keep) {
  require_square(op, "partial_trace");
  if (op.rows() != (Eigen::Index{1} << n_qubits)) throw ArgumentError("partial_trace: dimension mismatch");
  const auto kept = detail::sorted_unique(keep);
  const detail::IndexSplit split(n_qubits, kept);
  const auto table = split.table();
  const Eigen::Index dk = Eigen::Index{1} << kept.size();
  const Eigen::Index dr = Eigen::Index{1} << split.rest.size();
  DenseOperator out = DenseOperator::Zero(dk, dk);
  for (Eigen::Index r = 0; r < dr; ++r) {
    const auto* row = &table[static_cast<std::size_t>(r * dk)];
    for (Eigen::Index b = 0; b < dk; ++b) {
      for (Eigen::Index a = 0; a < dk; ++a) {
        out(a, b) += op(static_cast<Eigen::Index>(row[a]), static_cast<Eigen::Index>(row[b]));
      }
    }
  }
  return out;
}

/// Reduced density matrix of a pure state on `keep` (ascending qubit order).
inline DenseOperator reduced_density(const StateVector& psi, int n_qubits, std::span<const int> keep) {
  if (psi.size() != (Eigen::Index{1} << n_qubits)) throw ArgumentError("reduced_density: dimension mismatch");
  const auto kept = detail::sorted_unique(keep);
  if (static_cast<int>(kept.size()) > kMaxOperatorQubits) throw SizeError("reduced_density: marginal too large");
  const detail::IndexSplit split(n_qubits, kept);
  const auto table = split.table();
  const Eigen::Index dk = Eigen::Index{1} << kept.size();
  const Eigen::Index dr = Eigen::Index{1} << split.rest.size();
  DenseOperator m(dk, dr);
  for (Eigen::Index r = 0; r < dr; ++r) {
    for (Eigen::Index k = 0; k < dk; ++k) m(k, r) = psi(static_cast<Eigen::Index>(table[static_cast<std::size_t>(r * dk + k)]));
  }
  return m * m.adjoint();
}

/// Full operator acting as `op` on `on_qubits` (op's qubit i -> on_qubits[i]).
inline DenseOperator embed(const DenseOperator& op, std::span<const int> on_qubits, int n_total) {
  require_square(op, "embed");
  require_operator_qubits(n_total);
  if (op.rows() != (Eigen::Index{1} << on_qubits.size())) throw ArgumentError("embed: operator size does not match qubit list");
  const detail::IndexSplit split(n_total, on_qubits);
  const auto table = split.table();
  const Eigen::Index dk = op.rows();
  const Eigen::Index dr = Eigen::Index{1} << split.rest.size();
  const Eigen::Index d = Eigen::Index{1} << n_total;
  DenseOperator out = DenseOperator::Zero(d, d);
  for (Eigen::Index r = 0; r < dr; ++r) {
    const auto* row = &table[static_cast<std::size_t>(r * dk)];
    for (Eigen::Index b = 0; b < dk; ++b) {
      for (Eigen::Index a = 0; a < dk; ++a) {
        out(static_cast<Eigen::Index>(row[a]), static_cast<Eigen::Index>(row[b])) = op(a, b);
      }
    }
  }
  return out;
}

/// In-place left multiplication target <- (op on `qubits`) * target.
/// `target` has 2^n_total rows and any number of columns.
inline void apply_left(DenseOperator& target, const DenseOperator& op, std::span<const int> qubits, int n_total) {
  const detail::IndexSplit split(n_total, qubits);
  const Eigen::Index dk = op.rows();
  if (dk != (Eigen::Index{1} << qubits.size()) || op.cols() != dk) throw ArgumentError("apply_left: operator size mismatch");
  if (target.rows() != (Eigen::Index{1} << n_total)) throw ArgumentError("apply_left: target size mismatch");
  const auto table = split.table();
  const Eigen::Index dr = Eigen::Index{1} << split.rest.size();
  Eigen::VectorXcd gathered(dk);
  for (Eigen::Index col = 0; col < target.cols(); ++col) {
    for (Eigen::Index r = 0; r < dr; ++r) {
      const auto* row = &table[static_cast<std::size_t>(r * dk)];
      for (Eigen::Index a = 0; a < dk; ++a) gathered(a) = target(static_cast<Eigen::Index>(row[a]), col);
      for (Eigen::Index a = 0; a < dk; ++a) {
        cplx acc{0.0, 0.0};
        for (Eigen::Index b = 0; b < dk; ++b) acc += op(a, b) * gathered(b);
        target(static_cast<Eigen::Index>(row[a]), col) = acc;
      }
    }
  }
}

/// exp(-i theta v) for Hermitian v via eigendecomposition.
inline DenseOperator herm_exp(const DenseOperator& v, double theta) {
  require_square(v, "herm_exp");
  if (!is_hermitian(v, 1e-10)) throw ArgumentError("herm_exp: generator is not Hermitian");
  const DenseOperator h = 0.5 * (v + v.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(h);
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<cplx>() * cplx(0.0, -theta)).array().exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Eigenvalues of a density operator, clipped below 1e-12 to zero.
inline Eigen::VectorXd density_spectrum(const DenseOperator& rho) {
  require_square(rho, "density_spectrum");
  const DenseOperator h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(h, Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < 1e-12) ev(i) = 0.0;
  }
  return ev;
}

/// von Neumann entropy in bits.
inline double von_neumann_entropy(const DenseOperator& rho) {
  const Eigen::VectorXd ev = density_spectrum(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > 0.0) s -= ev(i) * std::log2(ev(i));
  }
  return s;
}

inline double purity(const DenseOperator& rho) { return frobenius_inner(rho, rho).real(); }

/// Second Renyi entropy -log2 Tr(rho^2).
inline double renyi2_entropy(const DenseOperator& rho) { return -std::log2(purity(rho)); }

}  // namespace scramblenet

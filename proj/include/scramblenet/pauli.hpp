#pragma once

// Unsigned Pauli strings and averages over the Pauli group of a subsystem.

#include "scramblenet/linalg.hpp"

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace scramblenet {

inline constexpr int kMaxPauliGroupQubits = 8;

/// Pauli word on `n_qubits` local qubits. Bit q of each mask refers to local
/// qubit q, which is the q-th character of the string form ("XIZY" has X on
/// qubit 0). X and Z on the same qubit denote the Hermitian Y.
class PauliString {
 public:
  PauliString() = default;
  PauliString(int n_qubits, std::uint32_t x_mask, std::uint32_t z_mask)
      : n_qubits_(n_qubits), x_mask_(x_mask), z_mask_(z_mask) {
    if (n_qubits < 0 || n_qubits > 32) throw ArgumentError("PauliString: qubit count out of range");
    const std::uint64_t limit = std::uint64_t{1} << n_qubits;
    if (x_mask >= limit || z_mask >= limit) throw ArgumentError("PauliString: mask exceeds qubit count");
  }

  static PauliString identity(int n_qubits) { return {n_qubits, 0, 0}; }

  static PauliString parse(std::string_view word) {
    std::uint32_t x = 0;
    std::uint32_t z = 0;
    for (std::size_t q = 0; q < word.size(); ++q) {
      const std::uint32_t bit = std::uint32_t{1} << q;
      switch (word[q]) {
        case 'I': break;
        case 'X': x |= bit; break;
        case 'Z': z |= bit; break;
        case 'Y': x |= bit; z |= bit; break;
        default: throw ArgumentError("PauliString::parse: bad character in '" + std::string(word) + "'");
      }
    }
    return {static_cast<int>(word.size()), x, z};
  }

  int n_qubits() const { return n_qubits_; }
  std::uint32_t x_mask() const { return x_mask_; }
  std::uint32_t z_mask() const { return z_mask_; }
  bool is_identity() const { return x_mask_ == 0 && z_mask_ == 0; }
  int y_count() const { return std::popcount(x_mask_ & z_mask_); }

  std::string str() const {
    std::string s(static_cast<std::size_t>(n_qubits_), 'I');
    for (int q = 0; q < n_qubits_; ++q) {
      const bool x = (x_mask_ >> q) & 1U;
      const bool z = (z_mask_ >> q) & 1U;
      s[static_cast<std::size_t>(q)] = x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
    }
    return s;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  int n_qubits_ = 0;
  std::uint32_t x_mask_ = 0;
  std::uint32_t z_mask_ = 0;
};

/// All 4^n strings, ordered lexicographically on (x_mask, z_mask).
inline std::vector<PauliString> enumerate_group(int n_qubits) {
  if (n_qubits < 1) throw ArgumentError("enumerate_group: need at least one qubit");
  if (n_qubits > kMaxPauliGroupQubits) throw SizeError("enumerate_group: more than 8 qubits");
  const std::uint32_t d = std::uint32_t{1} << n_qubits;
  std::vector<PauliString> out;
  out.reserve(static_cast<std::size_t>(d) * d);
  for (std::uint32_t x = 0; x < d; ++x) {
    for (std::uint32_t z = 0; z < d; ++z) out.emplace_back(n_qubits, x, z);
  }
  return out;
}

/// A Pauli string placed on a register, in basis-index coordinates. Acting on
/// a basis state: P|j> = phase(j) |j ^ x>, with phase(j) = i^{n_y} (-1)^{|j & z|}.
struct PauliAction {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  int n_y = 0;

  double sign(std::uint64_t j) const { return (std::popcount(j & z) & 1) ? -1.0 : 1.0; }

  cplx phase(std::uint64_t j) const {
    static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return kIPow[n_y & 3] * sign(j);
  }
};

inline PauliAction place(const PauliString& p, std::span<const int> placement, int n_total) {
  if (static_cast<int>(placement.size()) != p.n_qubits()) throw ArgumentError("place: placement length mismatch");
  detail::IndexSplit check(n_total, placement);  // validates range and duplicates
  PauliAction a;
  for (int q = 0; q < p.n_qubits(); ++q) {
    const std::uint64_t bit = qubit_bit(placement[static_cast<std::size_t>(q)], n_total);
    if ((p.x_mask() >> q) & 1U) a.x |= bit;
    if ((p.z_mask() >> q) & 1U) a.z |= bit;
  }
  a.n_y = p.y_count();
  return a;
}

/// P * m (P acting on the row index of m).
inline DenseOperator pauli_left(const PauliAction& p, const DenseOperator& m) {
  DenseOperator out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const auto src = static_cast<std::uint64_t>(r) ^ p.x;
    out.row(r) = p.phase(src) * m.row(static_cast<Eigen::Index>(src));
  }
  return out;
}

/// m * P (P acting on the column index of m).
inline DenseOperator pauli_right(const DenseOperator& m, const PauliAction& p) {
  DenseOperator out(m.rows(), m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const auto src = static_cast<std::uint64_t>(c) ^ p.x;
    out.col(c) = p.phase(static_cast<std::uint64_t>(c)) * m.col(static_cast<Eigen::Index>(src));
  }
  return out;
}

/// Tr(P rho) for a Pauli placed on the same register as rho.
inline cplx pauli_expectation(const PauliAction& p, const DenseOperator& rho) {
  // Tr(P rho) = sum_j <j|P rho|j> = sum_j phase(j^x) rho(j^x, j)
  cplx acc{0.0, 0.0};
  for (Eigen::Index j = 0; j < rho.rows(); ++j) {
    const auto src = static_cast<std::uint64_t>(j) ^ p.x;
    acc += p.phase(src) * rho(static_cast<Eigen::Index>(src), j);
  }
  return acc;
}

/// Hermitian matrix realization of `p` with local qubit q on placement[q].
inline DenseOperator to_matrix(const PauliString& p, std::span<const int> placement, int n_total) {
  require_operator_qubits(n_total);
  const PauliAction a = place(p, placement, n_total);
  const Eigen::Index d = Eigen::Index{1} << n_total;
  DenseOperator out = DenseOperator::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    out(static_cast<Eigen::Index>(static_cast<std::uint64_t>(j) ^ a.x), j) = a.phase(static_cast<std::uint64_t>(j));
  }
  return out;
}

inline DenseOperator to_matrix(const PauliString& p) {
  std::vector<int> placement(static_cast<std::size_t>(p.n_qubits()));
  for (int q = 0; q < p.n_qubits(); ++q) placement[static_cast<std::size_t>(q)] = q;
  return to_matrix(p, placement, p.n_qubits());
}

/// Pauli-group average of O^dagger q O over all strings on n_qubits.
inline DenseOperator one_design_check(int n_qubits, const DenseOperator& q) {
  require_square(q, "one_design_check");
  if (q.rows() != (Eigen::Index{1} << n_qubits)) throw ArgumentError("one_design_check: dimension mismatch");
  std::vector<int> placement(static_cast<std::size_t>(n_qubits));
  for (int i = 0; i < n_qubits; ++i) placement[static_cast<std::size_t>(i)] = i;
  DenseOperator acc = DenseOperator::Zero(q.rows(), q.cols());
  const auto group = enumerate_group(n_qubits);
  for (const auto& p : group) {
    const PauliAction a = place(p, placement, n_qubits);
    acc += pauli_right(pauli_left(a, q), a);  // O is Hermitian, so O^dagger = O
  }
  return acc / static_cast<double>(group.size());
}

}  // namespace scramblenet

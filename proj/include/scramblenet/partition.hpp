#pragma once

#include "scramblenet/linalg.hpp"

#include <string>
#include <vector>

namespace scramblenet {

/// Input subsystems A, B and output subsystems C, D of an N-qubit register.
///
/// Layout: A = input qubits {0..N_A-1}, B = the remaining inputs,
/// C = output qubits {0..N_C-1}, D = output qubits {N-N_D..N-1}.
class SubsystemPartition {
 public:
  SubsystemPartition(int n_total, int n_a, int n_d) : n_total_(n_total), n_a_(n_a), n_d_(n_d) {
    if (n_total < 2) throw ArgumentError("SubsystemPartition: need at least two qubits");
    if (n_a < 1 || n_a >= n_total) throw ArgumentError("SubsystemPartition: need 1 <= N_A < N");
    if (n_d < 1 || n_d >= n_total) throw ArgumentError("SubsystemPartition: need 1 <= N_D < N");
  }

  /// Partition from (N, N_A, N_C); D is the complement of C.
  static SubsystemPartition from_c(int n_total, int n_a, int n_c) {
    return SubsystemPartition(n_total, n_a, n_total - n_c);
  }

  int n_total() const { return n_total_; }
  int n_a() const { return n_a_; }
  int n_b() const { return n_total_ - n_a_; }
  int n_c() const { return n_total_ - n_d_; }
  int n_d() const { return n_d_; }

  double d_a() const { return pow2(n_a()); }
  double d_b() const { return pow2(n_b()); }
  double d_c() const { return pow2(n_c()); }
  double d_d() const { return pow2(n_d()); }
  double d_tot() const { return pow2(n_total_); }

  /// G = d_A^2 / ((d_A + 1) d_C^2).
  double g() const { return d_a() * d_a() / ((d_a() + 1.0) * d_c() * d_c()); }

  std::vector<int> a_qubits() const { return range(0, n_a()); }
  std::vector<int> b_qubits() const { return range(n_a(), n_total_); }
  std::vector<int> c_qubits() const { return range(0, n_c()); }
  std::vector<int> d_qubits() const { return range(n_c(), n_total_); }

  std::string str() const {
    return "N=" + std::to_string(n_total_) + " N_A=" + std::to_string(n_a_) + " N_D=" + std::to_string(n_d_);
  }

  friend bool operator==(const SubsystemPartition&, const SubsystemPartition&) = default;

 private:
  static double pow2(int n) { return static_cast<double>(std::uint64_t{1} << n); }
  static std::vector<int> range(int lo, int hi) {
    std::vector<int> v;
    for (int q = lo; q < hi; ++q) v.push_back(q);
    return v;
  }

  int n_total_;
  int n_a_;
  int n_d_;
};

inline void require_partition_dim(const DenseOperator& u, const SubsystemPartition& part, const char* what) {
  if (u.rows() != u.cols() || u.rows() != (Eigen::Index{1} << part.n_total())) {
    throw ArgumentError(std::string(what) + ": operator dimension does not match partition");
  }
}

}  // namespace scramblenet

#pragma once

// Seeded random ensembles (Haar unitaries and states, GUE Hermitians) and
// Monte-Carlo estimates of the k-fold Haar twirling channel.

#include "scramblenet/linalg.hpp"

#include <cstdint>
#include <numbers>
#include <random>

namespace scramblenet {

/// Deterministic random stream identified by (seed, stream). Child streams
/// are derived by mixing the parent identity with a stream id, so workers can
/// draw independently and reproducibly.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream), engine_(mix(seed, stream)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  SeededRng child(std::uint64_t stream_id) const {
    return SeededRng(seed_, splitmix64(stream_ ^ splitmix64(stream_id + 0x632BE59BD9B4E019ULL)));
  }

  double uniform() { return uniform_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform_(engine_); }
  double normal() { return normal_(engine_); }

  /// Complex Gaussian with E|z|^2 = 1.
  cplx complex_normal() {
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    constexpr double kScale = 1.0 / std::numbers::sqrt2;
    return {re * kScale, im * kScale};
  }

  std::mt19937_64& engine() { return engine_; }

  static std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ (stream * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline DenseOperator ginibre(Eigen::Index dim, SeededRng& rng) {
  DenseOperator z(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) z(i, j) = rng.complex_normal();
  }
  return z;
}

/// Unitary factor of z = QR with the diagonal of R rotated to positive reals.
/// For Ginibre z this is exactly Haar distributed.
inline DenseOperator haar_from_ginibre(const DenseOperator& z) {
  Eigen::HouseholderQR<DenseOperator> qr(z);
  DenseOperator q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < z.cols(); ++k) {
    const cplx rkk = r(k, k);
    const double mag = std::abs(rkk);
    q.col(k) *= (mag > 0.0) ? rkk / mag : cplx{1.0, 0.0};
  }
  return q;
}

inline DenseOperator haar_unitary(Eigen::Index dim, SeededRng& rng) {
  if (dim < 1) throw ArgumentError("haar_unitary: dimension must be positive");
  if (dim > (Eigen::Index{1} << kMaxOperatorQubits)) throw SizeError("haar_unitary: dimension exceeds cap");
  return haar_from_ginibre(ginibre(dim, rng));
}

/// GUE matrix (Z + Z^dagger)/2; optionally rescaled to unit spectral norm.
inline DenseOperator gue_hermitian(Eigen::Index dim, SeededRng& rng, bool unit_spectral_norm) {
  if (dim < 1) throw ArgumentError("gue_hermitian: dimension must be positive");
  const DenseOperator z = ginibre(dim, rng);
  DenseOperator h = 0.5 * (z + z.adjoint());
  if (unit_spectral_norm) {
    Eigen::SelfAdjointEigenSolver<DenseOperator> es(h, Eigen::EigenvaluesOnly);
    h /= es.eigenvalues().cwiseAbs().maxCoeff();
    h = 0.5 * (h + h.adjoint()).eval();
  }
  return h;
}

inline StateVector haar_state(Eigen::Index dim, SeededRng& rng) {
  if (dim < 1) throw ArgumentError("haar_state: dimension must be positive");
  StateVector psi(dim);
  for (Eigen::Index i = 0; i < dim; ++i) psi(i) = rng.complex_normal();
  return normalized(std::move(psi));
}

/// Swap of two copies of a dim-dimensional space.
inline DenseOperator swap_operator(Eigen::Index dim) {
  DenseOperator s = DenseOperator::Zero(dim * dim, dim * dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) s(j * dim + i, i * dim + j) = 1.0;
  }
  return s;
}

/// Closed-form one-fold Haar twirl: (Tr q / dim) I.
inline DenseOperator twirl1_closed_form(const DenseOperator& q) {
  const Eigen::Index d = q.rows();
  return DenseOperator::Identity(d, d) * (q.trace() / static_cast<double>(d));
}

/// Closed-form two-fold Haar twirl of an operator on two dim-dimensional copies.
inline DenseOperator twirl2_closed_form(const DenseOperator& q, Eigen::Index dim) {
  if (q.rows() != dim * dim) throw ArgumentError("twirl2_closed_form: operator is not on two copies");
  const double d = static_cast<double>(dim);
  const DenseOperator id = DenseOperator::Identity(dim * dim, dim * dim);
  const DenseOperator s = swap_operator(dim);
  const cplx tr_i = q.trace();
  const cplx tr_s = (s * q).trace();
  return (id * (tr_i - tr_s / d) + s * (tr_s - tr_i / d)) / (d * d - 1.0);
}

/// Twirl of (|psi><psi|)^{⊗k}: sum of permutation operators / (d (d+1) ... (d+k-1)).
inline DenseOperator twirl_pure_power_closed_form(int k, Eigen::Index dim) {
  const double d = static_cast<double>(dim);
  if (k == 1) return DenseOperator::Identity(dim, dim) / d;
  if (k == 2) {
    return (DenseOperator::Identity(dim * dim, dim * dim) + swap_operator(dim)) / (d * (d + 1.0));
  }
  throw ArgumentError("twirl_pure_power_closed_form: only k = 1, 2 supported");
}

struct TwirlEstimate {
  DenseOperator mean;
  Eigen::MatrixXd stderr_re;
  Eigen::MatrixXd stderr_im;
  int n_samples = 0;

  /// Monte-Carlo scale: the largest per-component standard error.
  double sigma() const { return std::max(stderr_re.maxCoeff(), stderr_im.maxCoeff()); }
};

/// Monte-Carlo estimate of E_U[(U^dagger)^{⊗k} q U^{⊗k}] over Haar U(dim).
inline TwirlEstimate twirl_mc(const DenseOperator& q, int k, Eigen::Index dim, int n_samples, SeededRng& rng) {
  if (n_samples < 1) throw ArgumentError("twirl_mc: need at least one sample");
  if (k != 1 && k != 2) throw ArgumentError("twirl_mc: k must be 1 or 2");
  const Eigen::Index full = (k == 1) ? dim : dim * dim;
  if (q.rows() != full || q.cols() != full) throw ArgumentError("twirl_mc: operator dimension is not dim^k");

  Eigen::MatrixXd sum_re = Eigen::MatrixXd::Zero(full, full);
  Eigen::MatrixXd sum_im = Eigen::MatrixXd::Zero(full, full);
  Eigen::MatrixXd sq_re = Eigen::MatrixXd::Zero(full, full);
  Eigen::MatrixXd sq_im = Eigen::MatrixXd::Zero(full, full);
  for (int s = 0; s < n_samples; ++s) {
    const DenseOperator u = haar_unitary(dim, rng);
    const DenseOperator uk = (k == 1) ? u : kron(u, u);
    const DenseOperator x = uk.adjoint() * q * uk;
    const Eigen::MatrixXd re = x.real();
    const Eigen::MatrixXd im = x.imag();
    sum_re += re;
    sum_im += im;
    sq_re += re.cwiseProduct(re);
    sq_im += im.cwiseProduct(im);
  }
  const double n = static_cast<double>(n_samples);
  TwirlEstimate est;
  est.n_samples = n_samples;
  const Eigen::MatrixXd mean_re = sum_re / n;
  const Eigen::MatrixXd mean_im = sum_im / n;
  est.mean = mean_re.cast<cplx>() + cplx(0.0, 1.0) * mean_im.cast<cplx>();
  const double denom = (n_samples > 1) ? (n - 1.0) * n : n;
  est.stderr_re = ((sq_re - n * mean_re.cwiseProduct(mean_re)).cwiseMax(0.0) / denom).cwiseSqrt();
  est.stderr_im = ((sq_im - n * mean_im.cwiseProduct(mean_im)).cwiseMax(0.0) / denom).cwiseSqrt();
  return est;
}

}  // namespace scramblenet

#include "scramblenet/linalg.hpp"
#include "scramblenet/randmat.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace scramblenet;

namespace {

DenseOperator random_matrix(Eigen::Index d, SeededRng& rng) {
  DenseOperator m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.complex_normal();
  }
  return m;
}

// Bit of qubit q in basis index i, qubit 0 most significant.
int bit(std::size_t i, int q, int n) { return static_cast<int>((i >> (n - 1 - q)) & 1U); }

// Element-by-element partial trace straight from the definition.
DenseOperator brute_partial_trace(const DenseOperator& op, int n, const std::vector<int>& keep) {
  const std::size_t dk = std::size_t{1} << keep.size();
  const std::size_t d = std::size_t{1} << n;
  DenseOperator out = DenseOperator::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      bool same_rest = true;
      for (int q = 0; q < n; ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end() && bit(i, q, n) != bit(j, q, n)) same_rest = false;
      }
      if (!same_rest) continue;
      std::size_t a = 0, b = 0;
      for (int q : keep) {
        a = (a << 1) | static_cast<std::size_t>(bit(i, q, n));
        b = (b << 1) | static_cast<std::size_t>(bit(j, q, n));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) += op(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

DenseOperator taylor_exp(const DenseOperator& a) {
  DenseOperator term = DenseOperator::Identity(a.rows(), a.cols());
  DenseOperator sum = term;
  for (int k = 1; k < 60; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

}  // namespace

TEST(Linalg, QubitCountAcceptsPowersOfTwoOnly) {
  EXPECT_EQ(qubit_count(1), 0);
  EXPECT_EQ(qubit_count(256), 8);
  EXPECT_THROW(qubit_count(6), ArgumentError);
  EXPECT_THROW(qubit_count(0), ArgumentError);
}

TEST(Linalg, OperatorCapThrowsSizeError) {
  EXPECT_THROW(identity(13), SizeError);
  EXPECT_NO_THROW(require_operator_qubits(12));
}

TEST(Linalg, KronMatchesIndexDefinition) {
  SeededRng rng(7);
  const auto a = random_matrix(2, rng);
  const auto b = random_matrix(4, rng);
  const auto k = kron(a, b);
  for (Eigen::Index i = 0; i < 8; ++i) {
    for (Eigen::Index j = 0; j < 8; ++j) EXPECT_EQ(k(i, j), a(i / 4, j / 4) * b(i % 4, j % 4));
  }
}

TEST(Linalg, KronIsMultiplicative) {
  SeededRng rng(8);
  const auto a = random_matrix(2, rng), b = random_matrix(2, rng), c = random_matrix(4, rng), d = random_matrix(4, rng);
  EXPECT_LT(max_abs(kron(a, c) * kron(b, d) - kron(a * b, c * d)), 1e-12);
}

TEST(Linalg, TraceAndHilbertSchmidtInner) {
  SeededRng rng(9);
  const auto a = random_matrix(4, rng), b = random_matrix(4, rng);
  EXPECT_LT(std::abs(frobenius_inner(a, b) - (a.adjoint() * b).trace()), 1e-12);
  EXPECT_LT(std::abs(trace(kron(a, b)) - trace(a) * trace(b)), 1e-10);
}

TEST(Linalg, PartialTraceMatchesBruteForce) {
  SeededRng rng(10);
  const auto op = random_matrix(16, rng);
  for (const std::vector<int>& keep : {std::vector<int>{0}, {3}, {1, 2}, {0, 3}, {0, 1, 3}, {0, 1, 2, 3}}) {
    EXPECT_LT(max_abs(partial_trace(op, 4, keep) - brute_partial_trace(op, 4, keep)), 1e-12);
  }
}

TEST(Linalg, PartialTraceOfProductFactorizes) {
  SeededRng rng(11);
  const auto a = random_matrix(4, rng);
  const auto b = random_matrix(2, rng);
  const std::vector<int> keep{0, 1};
  EXPECT_LT(max_abs(partial_trace(kron(a, b), 3, keep) - trace(b) * a), 1e-12);
  const std::vector<int> keep_last{2};
  EXPECT_LT(max_abs(partial_trace(kron(a, b), 3, keep_last) - trace(a) * b), 1e-12);
}

TEST(Linalg, PartialTracePreservesTrace) {
  SeededRng rng(12);
  const auto op = random_matrix(32, rng);
  const std::vector<int> keep{1, 4};
  EXPECT_LT(std::abs(trace(partial_trace(op, 5, keep)) - trace(op)), 1e-10);
}

TEST(Linalg, ReducedDensityMatchesPartialTraceOfProjector) {
  SeededRng rng(13);
  const auto psi = haar_state(32, rng);
  const std::vector<int> keep{0, 2, 3};
  EXPECT_LT(max_abs(reduced_density(psi, 5, keep) - partial_trace(projector(psi), 5, keep)), 1e-12);
}

TEST(Linalg, EmbedOnContiguousQubitsIsKronWithIdentity) {
  SeededRng rng(14);
  const auto g = random_matrix(4, rng);
  const std::vector<int> q{1, 2};
  EXPECT_LT(max_abs(embed(g, q, 4) - kron(kron(identity(1), g), identity(1))), 1e-14);
}

TEST(Linalg, EmbedRespectsQubitOrder) {
  SeededRng rng(15);
  const auto a = random_matrix(2, rng), b = random_matrix(2, rng);
  const std::vector<int> rev{1, 0};
  EXPECT_LT(max_abs(embed(kron(a, b), rev, 2) - kron(b, a)), 1e-14);
}

TEST(Linalg, ApplyLeftEqualsEmbeddedProduct) {
  SeededRng rng(16);
  const auto g = random_matrix(4, rng);
  DenseOperator t = random_matrix(16, rng);
  const DenseOperator expected = embed(g, std::vector<int>{2, 0}, 4) * t;
  apply_left(t, g, std::vector<int>{2, 0}, 4);
  EXPECT_LT(max_abs(t - expected), 1e-12);
}

TEST(Linalg, EmbedRejectsBadQubits) {
  const auto g = identity(2);
  EXPECT_THROW(embed(g, std::vector<int>{0, 0}, 3), ArgumentError);
  EXPECT_THROW(embed(g, std::vector<int>{0, 3}, 3), ArgumentError);
}

TEST(Linalg, HermExpMatchesTaylorSeries) {
  SeededRng rng(17);
  const auto v = gue_hermitian(4, rng, true);
  const double theta = 0.73;
  EXPECT_LT(max_abs(herm_exp(v, theta) - taylor_exp(cplx(0.0, -theta) * v)), 1e-12);
  EXPECT_TRUE(is_unitary(herm_exp(v, theta)));
  EXPECT_THROW(herm_exp(random_matrix(4, rng), 1.0), ArgumentError);
}

TEST(Linalg, SpectralNormOfDiagonal) {
  DenseOperator d = DenseOperator::Zero(4, 4);
  d(0, 0) = 0.5;
  d(1, 1) = cplx(0.0, -3.0);
  d(2, 2) = 2.0;
  EXPECT_NEAR(spectral_norm(d), 3.0, 1e-12);
}

TEST(Linalg, BellStateEntropies) {
  StateVector bell = StateVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const auto rho = reduced_density(bell, 2, std::vector<int>{0});
  EXPECT_NEAR(von_neumann_entropy(rho), 1.0, 1e-12);
  EXPECT_NEAR(renyi2_entropy(rho), 1.0, 1e-12);
  EXPECT_NEAR(purity(rho), 0.5, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(projector(bell)), 0.0, 1e-10);
}

TEST(Linalg, RenyiNeverExceedsVonNeumann) {
  SeededRng rng(18);
  for (int t = 0; t < 10; ++t) {
    const auto psi = haar_state(64, rng);
    const auto rho = reduced_density(psi, 6, std::vector<int>{0, 1, 5});
    EXPECT_LE(renyi2_entropy(rho), von_neumann_entropy(rho) + 1e-12);
    EXPECT_LE(von_neumann_entropy(rho), 3.0 + 1e-12);
  }
}

TEST(Linalg, NormalizedRejectsZero) {
  EXPECT_THROW(normalized(StateVector::Zero(4)), ArgumentError);
  StateVector v = StateVector::Ones(4);
  EXPECT_NEAR(normalized(v).norm(), 1.0, 1e-15);
}

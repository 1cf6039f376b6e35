#include "scramblenet/circuit.hpp"
#include "scramblenet/scrambling.hpp"
#include "scramblenet/stats.hpp"

#include <gtest/gtest.h>

using namespace scramblenet;

namespace {

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i < hi; ++i) v.push_back(i);
  return v;
}

// OTOC from full Pauli matrices and plain matrix products.
double brute_otoc(const DenseOperator& u, int n, int na, int nd) {
  const auto a_q = range(0, na);
  const auto d_q = range(n - nd, n);
  double acc = 0.0;
  const auto ga = enumerate_group(na);
  const auto gd = enumerate_group(nd);
  for (const auto& pa : ga) {
    const DenseOperator w = u * to_matrix(pa, a_q, n) * u.adjoint();
    for (const auto& pd : gd) {
      const DenseOperator od = to_matrix(pd, d_q, n);
      acc += trace(w * od * w * od).real();
    }
  }
  return acc / (static_cast<double>(ga.size() * gd.size()) * static_cast<double>(u.rows()));
}

DenseOperator random_density(Eigen::Index d, SeededRng& rng) {
  DenseOperator m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.complex_normal();
  }
  DenseOperator rho = m * m.adjoint();
  return rho / rho.trace();
}

}  // namespace

TEST(Partition, DimensionsAndQubitSets) {
  const SubsystemPartition p(5, 2, 3);
  EXPECT_EQ(p.n_b(), 3);
  EXPECT_EQ(p.n_c(), 2);
  EXPECT_EQ(p.a_qubits(), range(0, 2));
  EXPECT_EQ(p.b_qubits(), range(2, 5));
  EXPECT_EQ(p.c_qubits(), range(0, 2));
  EXPECT_EQ(p.d_qubits(), range(2, 5));
  EXPECT_DOUBLE_EQ(p.g(), 16.0 / (5.0 * 16.0));
  EXPECT_EQ(SubsystemPartition::from_c(8, 1, 7), SubsystemPartition(8, 1, 1));
  EXPECT_THROW(SubsystemPartition(4, 0, 1), ArgumentError);
  EXPECT_THROW(SubsystemPartition(4, 1, 4), ArgumentError);
  EXPECT_THROW(SubsystemPartition(1, 1, 1), ArgumentError);
}

TEST(Otoc, DirectRouteMatchesBruteForce) {
  SeededRng rng(1);
  for (auto [n, na, nd] : std::vector<std::tuple<int, int, int>>{{3, 1, 1}, {3, 2, 1}, {4, 2, 2}, {4, 1, 3}}) {
    const auto u = haar_unitary(Eigen::Index{1} << n, rng);
    EXPECT_NEAR(otoc_direct(u, SubsystemPartition(n, na, nd)).value, brute_otoc(u, n, na, nd), 1e-12);
  }
}

TEST(Otoc, RoutesAgreeOnHaarAndCircuits) {
  SeededRng rng(2);
  for (int t = 0; t < 6; ++t) {
    const SubsystemPartition part(5, 1 + t % 3, 1 + (t + 1) % 3);
    const auto u = t % 2 ? haar_unitary(32, rng) : circuit_unitary(build_brickwall(5, 1 + t, rng));
    EXPECT_NEAR(otoc_direct(u, part).value, otoc_renyi(u, part).value, 1e-9);
  }
}

TEST(Otoc, IdentityWithDisjointSubsystemsIsOne) {
  const SubsystemPartition part(4, 2, 2);
  EXPECT_NEAR(otoc_direct(identity(4), part).value, 1.0, 1e-12);
  EXPECT_NEAR(otoc_renyi(identity(4), part).value, 1.0, 1e-12);
}

TEST(Otoc, ValueLiesInUnitInterval) {
  SeededRng rng(3);
  for (int t = 0; t < 10; ++t) {
    const double v = otoc(circuit_unitary(build_brickwall(4, t, rng)), SubsystemPartition(4, 2, 1)).value;
    EXPECT_GE(v, -1e-12);
    EXPECT_LE(v, 1.0 + 1e-12);
  }
}

TEST(Otoc, DispatcherPicksRouteBySubsystemSize) {
  SeededRng rng(4);
  const auto u = haar_unitary(32, rng);
  EXPECT_EQ(otoc(u, SubsystemPartition(5, 3, 2)).route, OtocRoute::direct_average);
  EXPECT_EQ(otoc(u, SubsystemPartition(5, 4, 1)).route, OtocRoute::renyi);
  EXPECT_THROW(otoc_direct(u, SubsystemPartition(5, 4, 1)), SizeError);
}

TEST(Otoc, RejectsNonUnitaryAndWrongSize) {
  DenseOperator m = identity(3);
  m(0, 0) = 2.0;
  EXPECT_THROW(otoc_direct(m, SubsystemPartition(3, 1, 1)), ArgumentError);
  EXPECT_THROW(otoc_direct(identity(3), SubsystemPartition(4, 1, 1)), ArgumentError);
}

TEST(Otoc, HaarMeanMatchesScrambledClosedForm) {
  const SubsystemPartition part(3, 1, 1);
  SeededRng rng(5);
  std::vector<double> v;
  for (int s = 0; s < 300; ++s) v.push_back(otoc(haar_unitary(8, rng), part).value);
  EXPECT_TRUE(within_sigma(sample_stats(v), otoc_scram(part)));
}

TEST(Otoc, ScrambledClosedFormValuesAndLimit) {
  EXPECT_NEAR(otoc_scram(SubsystemPartition(8, 3, 3)), 2031.0 / 65535.0, 1e-16);
  const SubsystemPartition big(12, 2, 3);
  EXPECT_NEAR(otoc_scram(big), otoc_scram_limit(big), 1e-5);
}

TEST(Otoc, CorrelatorWithItselfIsOtoc) {
  SeededRng rng(6);
  const auto u = haar_unitary(16, rng);
  const SubsystemPartition part(4, 2, 1);
  EXPECT_NEAR(op_correlator(u, u, part), otoc(u, part).value, 1e-12);
}

TEST(Choi, StateIsNormalizedAndMarginalsMaximallyMixed) {
  SeededRng rng(7);
  const auto u = haar_unitary(8, rng);
  const ChoiState c(u);
  EXPECT_NEAR(c.state().norm(), 1.0, 1e-12);
  EXPECT_NEAR(trace(c.density()).real(), 1.0, 1e-12);
  const SubsystemPartition part(3, 1, 2);
  EXPECT_NEAR(c.entropy(part, "A", 1), 1.0, 1e-10);
  EXPECT_NEAR(c.entropy(part, "C", 1), 1.0, 1e-10);
  EXPECT_NEAR(c.entropy(part, "AB", 2), 3.0, 1e-10);
  EXPECT_NEAR(c.entropy(part, "ABCD", 1), 0.0, 1e-10);
  EXPECT_THROW(c.entropy(part, "AQ", 1), ArgumentError);
  EXPECT_THROW(c.entropy(part, "A", 3), ArgumentError);
}

TEST(Choi, AmplitudesFollowInputOutputOrdering) {
  SeededRng rng(8);
  const auto u = haar_unitary(4, rng);
  const ChoiState c(u);
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(c.state()(i * 4 + j) - u(j, i) / 2.0), 0.0, 1e-15);
  }
  EXPECT_EQ(c.labels(SubsystemPartition(2, 1, 1), "AD"), (std::vector<int>{0, 3}));
}

TEST(Choi, ComplementEntropiesAgree) {
  SeededRng rng(9);
  const ChoiState c(haar_unitary(16, rng));
  const SubsystemPartition part(4, 1, 1);
  EXPECT_NEAR(c.entropy(part, "AC", 2), c.entropy(part, "BD", 2), 1e-10);
  EXPECT_NEAR(c.entropy(part, "AC", 1), c.entropy(part, "BD", 1), 1e-10);
}

TEST(Choi, SizeCap) { EXPECT_THROW(ChoiState(identity(9)), SizeError); }

TEST(TripartiteInformation, IdentityAndScramblerValues) {
  const SubsystemPartition part(4, 1, 1);
  EXPECT_NEAR(tripartite_mi(identity(4), part), 0.0, 1e-10);
  SeededRng rng(10);
  const double i3 = tripartite_mi(haar_unitary(64, rng), SubsystemPartition(6, 2, 2));
  EXPECT_LT(i3, -2.0);
  EXPECT_GE(i3, -4.0 - 1e-9);
}

TEST(Correlators, CdRoutesAgree) {
  SeededRng rng(11);
  for (int t = 0; t < 5; ++t) {
    const SubsystemPartition part(4, 1 + t % 3, 1 + (t + 2) % 3);
    const auto u1 = haar_unitary(16, rng);
    const auto u2 = haar_unitary(16, rng);
    const auto rho = random_density(16, rng);
    EXPECT_NEAR(correlator_cd(u1, u2, rho, part), correlator_cd_via_c(u1, u2, rho, part), 1e-12);
  }
}

TEST(Correlators, CdRejectsInvalidDensity) {
  const SubsystemPartition part(3, 1, 1);
  EXPECT_THROW(correlator_cd(identity(3), identity(3), identity(3), part), ArgumentError);
}

TEST(Commutator, ExplicitAndCorrelatorFormsAgree) {
  SeededRng rng(12);
  const SubsystemPartition part(4, 2, 1);
  const auto u = circuit_unitary(build_brickwall(4, 2, rng));
  for (const auto& oa : enumerate_group(2)) {
    for (const auto& od : enumerate_group(1)) {
      EXPECT_NEAR(commutator_hs_norm(u, oa, od, part), commutator_hs_norm_from_correlator(u, oa, od, part), 1e-9);
    }
  }
}

TEST(Commutator, CommutingAndAnticommutingStrings) {
  const SubsystemPartition part(2, 1, 1);
  const DenseOperator sw = [] {
    DenseOperator s = DenseOperator::Zero(4, 4);
    s(0, 0) = s(3, 3) = 1.0;
    s(1, 2) = s(2, 1) = 1.0;
    return s;
  }();
  // Under SWAP, O_D on qubit 1 is moved onto qubit 0 = A.
  EXPECT_NEAR(commutator_hs_norm(sw, PauliString::parse("X"), PauliString::parse("Z"), part), 4.0, 1e-12);
  EXPECT_NEAR(commutator_hs_norm(sw, PauliString::parse("X"), PauliString::parse("X"), part), 0.0, 1e-12);
  EXPECT_NEAR(commutator_hs_norm(identity(2), PauliString::parse("X"), PauliString::parse("Z"), part), 0.0, 1e-12);
  EXPECT_THROW(commutator_hs_norm(sw, PauliString::parse("XX"), PauliString::parse("Z"), part), ArgumentError);
}

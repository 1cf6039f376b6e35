#include "scramblenet/circuit.hpp"
#include "scramblenet/error.hpp"
#include "scramblenet/stats.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace scramblenet;

namespace {

// L_d from explicit reduced output states and full Pauli matrices on C.
double brute_loss(const DenseOperator& u, const DenseOperator& us, const StateVector& psi, const SubsystemPartition& part) {
  const int n = part.n_total();
  const DenseOperator rho = kron(projector(psi), DenseOperator::Identity(Eigen::Index(part.d_b()), Eigen::Index(part.d_b())) / part.d_b());
  const DenseOperator s1 = partial_trace(u * rho * u.adjoint(), n, part.c_qubits());
  const DenseOperator s2 = partial_trace(us * rho * us.adjoint(), n, part.c_qubits());
  double acc = 0.0;
  const auto g = enumerate_group(part.n_c());
  for (const auto& p : g) {
    const DenseOperator m = to_matrix(p);
    const double dy = (trace(m * s1) - trace(m * s2)).real();
    acc += dy * dy;
  }
  return acc / static_cast<double>(g.size());
}

std::vector<StateVector> states(int count, Eigen::Index d, SeededRng& rng) {
  std::vector<StateVector> v;
  for (int i = 0; i < count; ++i) v.push_back(haar_state(d, rng));
  return v;
}

}  // namespace

TEST(Loss, PauliAndCorrelatorRoutesMatchBruteForce) {
  SeededRng rng(1);
  for (auto [na, nd] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {1, 3}, {3, 2}}) {
    const SubsystemPartition part(4, na, nd);
    const auto u = haar_unitary(16, rng);
    const auto us = haar_unitary(16, rng);
    const auto psi = haar_state(Eigen::Index(part.d_a()), rng);
    const double b = brute_loss(u, us, psi, part);
    EXPECT_NEAR(loss_ld(u, us, psi, part), b, 1e-12);
    EXPECT_NEAR(loss_ld_correlator(u, us, psi, part), b, 1e-12);
  }
}

TEST(Loss, InputValidation) {
  const SubsystemPartition part(3, 1, 1);
  EXPECT_THROW(input_density(StateVector::Ones(2), part), ArgumentError);
  EXPECT_THROW(input_density(StateVector::Ones(4) / 2.0, part), ArgumentError);
}

TEST(TrueError, MonteCarloMeanMatchesAnalytic) {
  const SubsystemPartition part(3, 1, 1);
  SeededRng rng(2);
  const auto u = circuit_unitary(build_brickwall(3, 2, rng));
  const auto us = haar_unitary(8, rng);
  std::vector<double> ld;
  for (const auto& psi : states(600, 2, rng)) ld.push_back(loss_ld(u, us, psi, part));
  EXPECT_TRUE(within_sigma(sample_stats(ld), true_error_analytic(u, us, part).L));
}

TEST(TrueError, VanishesForIdenticalUnitaries) {
  SeededRng rng(3);
  const auto u = haar_unitary(16, rng);
  const SubsystemPartition part(4, 2, 2);
  const auto b = true_error_analytic(u, u, part);
  EXPECT_NEAR(b.L, 0.0, 1e-12);
  EXPECT_NEAR(b.L_minus, 0.0, 1e-12);
  EXPECT_NEAR(renyi_bound(u, u, part).minus, 0.0, 1e-12);
  EXPECT_LE(mi_lower_bound(u, u, part), 1e-9);
}

TEST(TrueError, BoundsHoldOnRandomPairs) {
  SeededRng rng(4);
  for (int t = 0; t < 20; ++t) {
    const SubsystemPartition part(4, 1 + t % 3, 1 + (t / 3) % 3);
    const auto u = t % 2 ? haar_unitary(16, rng) : circuit_unitary(build_brickwall(4, 1 + t % 5, rng));
    const auto us = circuit_unitary(build_brickwall(4, 1 + t % 4, rng));
    const auto b = true_error_analytic(u, us, part);
    EXPECT_TRUE(b.satisfies_bounds()) << t;
    const auto r = renyi_bound(u, us, part);
    EXPECT_NEAR(r.plus, b.L_plus, 1e-9);
    EXPECT_NEAR(r.minus, b.L_minus, 1e-9);
  }
}

TEST(TrueError, OtocBoundedByTripartiteInformationLessAdInformation) {
  // S2 <= S on the Choi marginal AC gives OTOC >= 2^{I3 - I(A:D)}.
  SeededRng rng(14);
  for (int t = 0; t < 20; ++t) {
    const SubsystemPartition part(4, 1 + t % 3, 1 + (t / 3) % 3);
    const auto u = t % 2 ? haar_unitary(16, rng) : circuit_unitary(build_brickwall(4, 1 + t % 5, rng));
    const ChoiState c(u);
    const double i_ad = part.n_a() + part.n_d() - c.entropy(part, "AD", 1);
    EXPECT_GE(otoc(u, part).value, std::pow(2.0, tripartite_mi(u, part) - i_ad) - 1e-9) << t;
  }
}

TEST(TrueError, MutualInformationFormFailsForSwap) {
  // SWAP moves A onto D: I3 = 0 and OTOC = 1/4, below 2^{(I3 - 2N_A)/2} = 1/2.
  DenseOperator sw = DenseOperator::Zero(4, 4);
  sw(0, 0) = sw(3, 3) = 1.0;
  sw(1, 2) = sw(2, 1) = 1.0;
  const SubsystemPartition part(2, 1, 1);
  EXPECT_NEAR(tripartite_mi(sw, part), 0.0, 1e-10);
  EXPECT_NEAR(otoc(sw, part).value, 0.25, 1e-12);
  EXPECT_NEAR(true_error_analytic(sw, sw, part).L, 0.0, 1e-12);
  EXPECT_GT(mi_lower_bound(sw, sw, part), 0.1 * part.g());
}

TEST(TrueError, HaarTargetAverageIsLScram) {
  const SubsystemPartition part(3, 1, 1);
  SeededRng rng(5);
  const auto u = circuit_unitary(build_brickwall(3, 2, rng));
  std::vector<double> l;
  for (int s = 0; s < 300; ++s) l.push_back(true_error_analytic(u, haar_unitary(8, rng), part).L);
  EXPECT_TRUE(within_sigma(sample_stats(l), l_scram(u, part)));
}

TEST(TrueError, FloorValues) {
  const SubsystemPartition p8(8, 3, 3);
  EXPECT_NEAR(l_floor(p8), (2.0 / 144.0) * (64449.0 / 4194240.0), 1e-18);
  EXPECT_NEAR(l_scram_from_otoc(otoc_scram(p8), p8), l_floor(p8), 1e-18);
  const SubsystemPartition big(40, 20, 20);
  EXPECT_NEAR(l_floor(big) / l_floor_asymptote(big), 1.0, 1e-5);
}

TEST(Variants, ChainHoldsForEverySubsetSize) {
  const SubsystemPartition part(4, 2, 2);
  SeededRng rng(6);
  const auto group = enumerate_group(2);
  for (int t = 0; t < 5; ++t) {
    const auto u = haar_unitary(16, rng);
    const auto us = circuit_unitary(build_brickwall(4, 2, rng));
    const auto psis = states(30, 4, rng);
    for (std::size_t k : {1u, 4u, 16u}) {
      std::vector<PauliString> subset(group.begin() + static_cast<long>(16 - k), group.end());
      const auto v = loss_variants(u, us, psis, subset, part);
      EXPECT_LE(v.v3 * v.v3, v.v2 + 1e-14);
      EXPECT_LE(v.v2, v.v1 + 1e-14);
      EXPECT_LE(v.v1, 16.0 / static_cast<double>(k) * v.l_empirical + 1e-14);
      if (k == 16) EXPECT_NEAR(v.v1, v.l_empirical, 1e-14);
    }
  }
}

TEST(Variants, EmpiricalLossConvergesToTrueError) {
  const SubsystemPartition part(3, 1, 1);
  SeededRng rng(7);
  const auto u = haar_unitary(8, rng);
  const auto us = haar_unitary(8, rng);
  const auto psis = states(600, 2, rng);
  std::vector<double> ld;
  for (const auto& p : psis) ld.push_back(loss_ld(u, us, p, part));
  const auto v = loss_variants(u, us, psis, enumerate_group(2), part);
  EXPECT_NEAR(v.l_empirical, sample_stats(ld).mean, 1e-14);
  EXPECT_TRUE(within_sigma(sample_stats(ld), true_error_analytic(u, us, part).L));
}

TEST(Variants, ZeroForIdenticalUnitariesAndEmptySubsetRejected) {
  const SubsystemPartition part(3, 1, 1);
  SeededRng rng(8);
  const auto u = haar_unitary(8, rng);
  const auto psis = states(5, 2, rng);
  const auto v = loss_variants(u, u, psis, {PauliString::parse("XZ")}, part);
  EXPECT_NEAR(v.v1 + v.v2 + v.v3, 0.0, 1e-14);
  EXPECT_THROW(loss_variants(u, u, psis, {}, part), ArgumentError);
  EXPECT_THROW(loss_variants(u, u, {}, {PauliString::parse("XZ")}, part), ArgumentError);
}

TEST(Cost, RoutesAgreeAndMaximallyMixedValue) {
  const SubsystemPartition part(4, 2, 1);
  SeededRng rng(9);
  const auto u = haar_unitary(16, rng);
  const auto rho = input_density(haar_state(4, rng), part);
  EXPECT_NEAR(cost(u, rho, part), cost_correlator(u, rho, part), 1e-12);
  const DenseOperator mixed = identity(4) / 16.0;
  EXPECT_NEAR(cost(identity(4), mixed, part), 1.0 / (part.d_c() * part.d_c()), 1e-14);
  EXPECT_THROW(cost(u, identity(4), part), ArgumentError);
}

TEST(Cost, MonteCarloMeanMatchesAverageCost) {
  const SubsystemPartition part(3, 1, 1);
  SeededRng rng(10);
  const auto u = circuit_unitary(build_brickwall(3, 3, rng));
  std::vector<double> c;
  for (const auto& psi : states(800, 2, rng)) c.push_back(cost(u, input_density(psi, part), part));
  EXPECT_TRUE(within_sigma(sample_stats(c), cost_av(u, part)));
}

TEST(Levy, FEpsilonValueAndDomain) {
  const SubsystemPartition part(6, 3, 2);
  EXPECT_NEAR(f_epsilon(0.05, part), 8.02, 0.005);
  EXPECT_THROW(f_epsilon(2.0, part), ArgumentError);
  EXPECT_THROW(f_epsilon(0.0, part), ArgumentError);
  SeededRng rng(11);
  EXPECT_THROW(levy_bundle(identity(6), identity(6), part, 1.5), ArgumentError);
}

TEST(Levy, ConstantsFollowClosedForms) {
  const SubsystemPartition part(5, 2, 2);
  const double ou = 0.3, os = 0.2;
  const auto b = levy_bundle_from(ou, os, part, 0.1);
  const double g = part.g();
  const double lp = g * std::pow(std::sqrt(ou) + std::sqrt(os), 2);
  EXPECT_NEAR(b.eta, 8.0 * std::sqrt(4.0 * 5.0 * lp), 1e-12);
  EXPECT_NEAR(b.eta_g, 8.0 * (std::sqrt(20.0 * lp) + 2.0), 1e-12);
  EXPECT_NEAR(b.eta_C, 4.0 * 2.0 * 4.0 / 8.0 * std::sqrt(ou), 1e-12);
  EXPECT_NEAR(b.eta_Cg, 8.0 * (2.0 * 4.0 / 8.0 * std::sqrt(ou) + 1.0), 1e-12);
}

TEST(Levy, ScramblingLimitsAreReachedAtLargeSize) {
  const SubsystemPartition part(60, 15, 45);
  const double o = otoc_scram(part);
  const auto b = levy_bundle_from(o, o, part, 0.05);
  EXPECT_NEAR(b.eta * b.f_eps / levy_scram_limit(part, 0.05), 1.0, 1e-3);
  EXPECT_NEAR(b.eta_g * b.f_eps / grad_levy_scram_limit(part, 0.05), 1.0, 1e-3);
}

TEST(Levy, EmpiricalViolationRateBelowEpsilon) {
  const SubsystemPartition part(4, 2, 2);
  SeededRng rng(12);
  const auto u = circuit_unitary(build_brickwall(4, 3, rng));
  const auto us = haar_unitary(16, rng);
  const double l = true_error_analytic(u, us, part).L;
  for (double eps : {0.05, 0.2}) {
    const auto b = levy_bundle(u, us, part, eps);
    int bad = 0;
    const int n = 300;
    for (const auto& psi : states(n, 4, rng)) bad += std::abs(loss_ld(u, us, psi, part) - l) > b.eta * b.f_eps;
    EXPECT_LE(bad / double(n), binomial_ceiling(eps, n));
  }
}

#include "scramblenet/randmat.hpp"
#include "scramblenet/stats.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace scramblenet;

namespace {

// Weingarten expansion for k = 2 with the identity and swap permutations.
DenseOperator weingarten_phi2(const DenseOperator& q, Eigen::Index d) {
  const DenseOperator id = DenseOperator::Identity(d * d, d * d);
  const DenseOperator sw = swap_operator(d);
  const double dd = static_cast<double>(d);
  const double wg_e = 1.0 / (dd * dd - 1.0);
  const double wg_s = -1.0 / (dd * (dd * dd - 1.0));
  const cplx ti = trace(q);
  const cplx ts = trace(sw * q);
  return (wg_e * ti + wg_s * ts) * id + (wg_s * ti + wg_e * ts) * sw;
}

double semicircle_cdf(double x) {
  x = std::clamp(x, -1.0, 1.0);
  return 0.5 + (x * std::sqrt(1.0 - x * x) + std::asin(x)) / std::numbers::pi;
}

}  // namespace

TEST(Randmat, SameSeedAndStreamReproduce) {
  SeededRng a(42, 3), b(42, 3), c(42, 4);
  const auto ua = haar_unitary(8, a);
  const auto ub = haar_unitary(8, b);
  const auto uc = haar_unitary(8, c);
  EXPECT_EQ(max_abs(ua - ub), 0.0);
  EXPECT_GT(max_abs(ua - uc), 1e-3);
  EXPECT_NE(SeededRng(1).child(1).uniform(), SeededRng(1).child(2).uniform());
}

TEST(Randmat, HaarUnitaryIsUnitary) {
  SeededRng rng(1);
  for (Eigen::Index d : {2, 4, 16, 64}) EXPECT_TRUE(is_unitary(haar_unitary(d, rng), 1e-10));
}

TEST(Randmat, HaarEntryMomentsMatchWeingarten) {
  SeededRng rng(2);
  const Eigen::Index d = 4;
  std::vector<double> m2, m4;
  for (int s = 0; s < 2000; ++s) {
    const auto u = haar_unitary(d, rng);
    const double a = std::norm(u(1, 2));
    m2.push_back(a);
    m4.push_back(a * a);
  }
  EXPECT_TRUE(within_sigma(sample_stats(m2), 1.0 / d));
  EXPECT_TRUE(within_sigma(sample_stats(m4), 2.0 / (d * (d + 1.0))));
}

TEST(Randmat, HaarStateIsNormalizedAndUniform) {
  SeededRng rng(3);
  std::vector<double> p0;
  for (int s = 0; s < 2000; ++s) {
    const auto psi = haar_state(8, rng);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    p0.push_back(std::norm(psi(0)));
  }
  EXPECT_TRUE(within_sigma(sample_stats(p0), 1.0 / 8.0));
}

TEST(Randmat, GueIsHermitianAndOptionallyUnitNorm) {
  SeededRng rng(4);
  const auto h = gue_hermitian(16, rng, false);
  EXPECT_TRUE(is_hermitian(h, 1e-14));
  EXPECT_NEAR(spectral_norm(gue_hermitian(16, rng, true)), 1.0, 1e-12);
}

TEST(Randmat, GueSpectrumFollowsSemicircle) {
  SeededRng rng(5);
  const Eigen::Index d = 100;
  std::vector<double> ev;
  for (int s = 0; s < 30; ++s) {
    Eigen::SelfAdjointEigenSolver<DenseOperator> es(gue_hermitian(d, rng, false), Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < d; ++i) ev.push_back(es.eigenvalues()(i) / std::sqrt(2.0 * d));
  }
  std::sort(ev.begin(), ev.end());
  double ks = 0.0;
  const double n = static_cast<double>(ev.size());
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const double f = semicircle_cdf(ev[i]);
    ks = std::max({ks, std::abs(f - i / n), std::abs(f - (i + 1) / n)});
  }
  EXPECT_LT(ks, 0.03);
}

TEST(Randmat, GinibreRowsAreNotOrthogonal) {
  SeededRng rng(6);
  const auto z = ginibre(8, rng);
  EXPECT_FALSE(is_unitary(z, 1e-3));
  EXPECT_TRUE(is_unitary(haar_from_ginibre(z), 1e-10));
}

TEST(Randmat, TwoTwirlClosedFormMatchesWeingartenOracle) {
  SeededRng rng(7);
  for (Eigen::Index d : {2, 3, 4}) {
    const auto q = gue_hermitian(d * d, rng, false);
    EXPECT_LT(max_abs(twirl2_closed_form(q, d) - weingarten_phi2(q, d)), 1e-12);
  }
}

TEST(Randmat, PurePowerTwirlIsTwirlOfProductState) {
  for (Eigen::Index d : {2, 4}) {
    DenseOperator p = DenseOperator::Zero(d * d, d * d);
    p(0, 0) = 1.0;
    EXPECT_LT(max_abs(twirl_pure_power_closed_form(2, d) - weingarten_phi2(p, d)), 1e-14);
    EXPECT_NEAR(trace(twirl_pure_power_closed_form(2, d)).real(), 1.0, 1e-14);
  }
  EXPECT_LT(max_abs(twirl_pure_power_closed_form(1, 4) - DenseOperator::Identity(4, 4) / 4.0), 1e-15);
}

TEST(Randmat, OneTwirlIsTraceTimesIdentity) {
  SeededRng rng(8);
  const auto q = gue_hermitian(3, rng, false);
  EXPECT_LT(max_abs(twirl1_closed_form(q) - trace(q) / 3.0 * DenseOperator::Identity(3, 3)), 1e-14);
  EXPECT_LT(max_abs(twirl1_closed_form(DenseOperator::Identity(4, 4)) - DenseOperator::Identity(4, 4)), 1e-15);
}

TEST(Randmat, MonteCarloTwirlConvergesToClosedForm) {
  SeededRng qrng(9), mc(10);
  const auto q = gue_hermitian(4, qrng, false);
  const auto est = twirl_mc(q, 2, 2, 4000, mc);
  EXPECT_LE(max_abs(est.mean - twirl2_closed_form(q, 2)), 3.0 * est.sigma() + 1e-12);
  EXPECT_EQ(est.n_samples, 4000);
}

TEST(Randmat, TwirlArgumentChecks) {
  SeededRng rng(11);
  const DenseOperator q = DenseOperator::Identity(4, 4);
  EXPECT_THROW(twirl_mc(q, 2, 2, 0, rng), ArgumentError);
  EXPECT_THROW(twirl_mc(q, 3, 2, 10, rng), ArgumentError);
  EXPECT_THROW(twirl_mc(q, 1, 2, 10, rng), ArgumentError);
  EXPECT_THROW(twirl_pure_power_closed_form(3, 2), ArgumentError);
}

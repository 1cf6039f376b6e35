#include "scramblenet/pauli.hpp"
#include "scramblenet/randmat.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace scramblenet;

namespace {

DenseOperator single(char c) {
  DenseOperator m = DenseOperator::Zero(2, 2);
  switch (c) {
    case 'I': m(0, 0) = m(1, 1) = 1.0; break;
    case 'X': m(0, 1) = m(1, 0) = 1.0; break;
    case 'Y': m(0, 1) = cplx(0, -1); m(1, 0) = cplx(0, 1); break;
    case 'Z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
  }
  return m;
}

DenseOperator word_matrix(const std::string& w) {
  DenseOperator m = single(w[0]);
  for (std::size_t i = 1; i < w.size(); ++i) m = kron(m, single(w[i]));
  return m;
}

DenseOperator random_matrix(Eigen::Index d, SeededRng& rng) {
  DenseOperator m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.complex_normal();
  }
  return m;
}

}  // namespace

TEST(Pauli, ParseAndPrintRoundTrip) {
  for (const std::string w : {"I", "XIZY", "YYYY", "ZXIZX"}) EXPECT_EQ(PauliString::parse(w).str(), w);
  EXPECT_EQ(PauliString::parse("XYZY").y_count(), 2);
  EXPECT_THROW(PauliString::parse("XQ"), ArgumentError);
}

TEST(Pauli, ToMatrixMatchesKroneckerOfSingleQubitPaulis) {
  for (const std::string w : {"X", "Y", "Z", "XY", "ZI", "IYZ", "YXZY"}) {
    EXPECT_LT(max_abs(to_matrix(PauliString::parse(w)) - word_matrix(w)), 1e-15) << w;
  }
}

TEST(Pauli, PlacementPutsLocalQubitsOnTargets) {
  const std::vector<int> placement{3, 1};
  const auto m = to_matrix(PauliString::parse("XZ"), placement, 4);
  EXPECT_LT(max_abs(m - word_matrix("IZIX")), 1e-15);
}

TEST(Pauli, GroupHasFourToTheNDistinctHermitianUnitaries) {
  for (int n = 1; n <= 3; ++n) {
    const auto g = enumerate_group(n);
    EXPECT_EQ(g.size(), std::size_t{1} << (2 * n));
    std::set<std::string> names;
    for (const auto& p : g) {
      names.insert(p.str());
      const auto m = to_matrix(p);
      EXPECT_TRUE(is_hermitian(m, 1e-14));
      EXPECT_TRUE(is_unitary(m, 1e-14));
    }
    EXPECT_EQ(names.size(), g.size());
    EXPECT_TRUE(g.front().is_identity());
  }
  EXPECT_THROW(enumerate_group(0), ArgumentError);
  EXPECT_THROW(enumerate_group(9), SizeError);
}

TEST(Pauli, GroupIsHilbertSchmidtOrthogonal) {
  const auto g = enumerate_group(2);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      const cplx t = trace(to_matrix(g[i]) * to_matrix(g[j]));
      EXPECT_LT(std::abs(t - (i == j ? cplx(4.0) : cplx(0.0))), 1e-14);
    }
  }
}

TEST(Pauli, LeftRightActionsMatchMatrixProducts) {
  SeededRng rng(3);
  const auto m = random_matrix(8, rng);
  for (const auto& p : enumerate_group(2)) {
    const std::vector<int> placement{2, 0};
    const auto a = place(p, placement, 3);
    const auto pm = to_matrix(p, placement, 3);
    EXPECT_LT(max_abs(pauli_left(a, m) - pm * m), 1e-13);
    EXPECT_LT(max_abs(pauli_right(m, a) - m * pm), 1e-13);
    EXPECT_LT(std::abs(pauli_expectation(a, m) - trace(pm * m)), 1e-12);
  }
}

TEST(Pauli, GroupAverageIsCompletelyDepolarizing) {
  SeededRng rng(4);
  const auto q = random_matrix(8, rng);
  const DenseOperator expected = trace(q) / 8.0 * DenseOperator::Identity(8, 8);
  EXPECT_LT(max_abs(one_design_check(3, q) - expected), 1e-12);
}

TEST(Pauli, PlaceRejectsBadPlacement) {
  const auto p = PauliString::parse("XZ");
  EXPECT_THROW(place(p, std::vector<int>{0}, 3), ArgumentError);
  EXPECT_THROW(place(p, std::vector<int>{1, 1}, 3), ArgumentError);
  EXPECT_THROW(place(p, std::vector<int>{0, 5}, 3), ArgumentError);
}

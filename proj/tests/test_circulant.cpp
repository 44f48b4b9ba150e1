#include <gtest/gtest.h>

#include <json.hpp>

#include <numbers>
#include <sstream>

#include "test_util.hpp"
#include "zqwalk/circulant.hpp"

using namespace zqwalk;

namespace {

// P_ab = v_{(b-a) mod q}, written out directly
Eigen::MatrixXd rotate_right(const std::vector<double>& v) {
  const int q = static_cast<int>(v.size());
  Eigen::MatrixXd P(q, q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) P(a, b) = v[((b - a) % q + q) % q];
  return P;
}

}  // namespace

TEST(BuildCirculant, Identity) {
  EXPECT_TRUE(build_circulant(IncrementLaw1D::point_mass(5, 0)).isIdentity(0.0));
}

TEST(BuildCirculant, ThreeCycle) {
  Eigen::Matrix3d want;
  want << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  EXPECT_EQ(build_circulant(IncrementLaw1D({0, 1, 0})), Eigen::MatrixXd(want));
}

TEST(BuildCirculant, RotatesRight) {
  const auto P = build_circulant(IncrementLaw1D({0.4, 0.3, 0.2, 0.1}));
  EXPECT_EQ(P.row(0), Eigen::RowVector4d(0.4, 0.3, 0.2, 0.1));
  EXPECT_EQ(P.row(1), Eigen::RowVector4d(0.1, 0.4, 0.3, 0.2));
  EXPECT_LT((Eigen::RowVectorXd::Ones(4) * P - Eigen::RowVectorXd::Ones(4)).norm(), 1e-15);
}

TEST(BuildCirculant, RejectsBadLaw) {
  EXPECT_THROW(IncrementLaw1D({0.5, 0.6}), Error);
  EXPECT_THROW(IncrementLaw1D({1.2, -0.2}), Error);
}

TEST(Eigenvalues1D, Uniform) {
  const auto e = eigenvalues_1d(IncrementLaw1D::uniform(7));
  for (int r = 0; r < 7; ++r) EXPECT_LT(std::abs(e.eta[r] - (r == 0 ? 1.0 : 0.0)), 1e-15);
}

TEST(Eigenvalues1D, LazyWalk) {
  const auto e = eigenvalues_1d(IncrementLaw1D::lazy(5, 0.5));
  for (int r = 0; r < 5; ++r) {
    EXPECT_NEAR(e.eta[r].real(), 0.5 + 0.5 * std::cos(2 * std::numbers::pi * r / 5), 1e-15);
    EXPECT_NEAR(e.eta[r].imag(), 0.0, 1e-15);
  }
}

TEST(Eigenvalues1D, DirectSum) {
  const auto e = eigenvalues_1d(IncrementLaw1D({0.4, 0.3, 0.2, 0.1}));
  EXPECT_LT(std::abs(e.eta[1] - Complex(0.2, 0.2)), 1e-15);
}

TEST(Eigenvalues1D, MatchEigenSolver) {
  // eigenvalues of the dense matrix, as an unordered set
  std::mt19937_64 rng(11);
  for (int q : {3, 5, 8}) {
    const auto v = testutil::random_law_1d(q, rng);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(rotate_right(v.probs()).cast<Complex>());
    auto want = es.eigenvalues();
    auto eta = eigenvalues_1d(v).eta;
    for (const auto& ev : eta) {
      double best = 1e9;
      for (Eigen::Index i = 0; i < want.size(); ++i) best = std::min(best, std::abs(want[i] - ev));
      EXPECT_LT(best, 1e-10);
    }
  }
}

TEST(SpectralTransition, IdentityAndDeterministic) {
  const auto id = eigenvalues_1d(IncrementLaw1D::point_mass(6, 0));
  const auto shift = eigenvalues_1d(IncrementLaw1D::point_mass(6, 4));
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      EXPECT_NEAR(spectral_transition_1d(id, a, b), a == b ? 1.0 : 0.0, 1e-14);
      EXPECT_NEAR(spectral_transition_1d(shift, a, b), b == (a + 4) % 6 ? 1.0 : 0.0, 1e-14);
    }
  }
}

TEST(SpectralTransition, MatchesDirectMatrix) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> qd(2, 32);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int q = qd(rng);
    const auto v = testutil::random_law_1d(q, rng, i % 2 == 1);
    const auto P = rotate_right(v.probs());
    const auto eta = eigenvalues_1d(v);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) worst = std::max(worst, std::abs(spectral_transition_1d(eta, a, b) - P(a, b)));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(SpectralTransition, RejectsInconsistentTable) {
  EigenTable1D bad{{1.0, Complex(0.0, 0.5), 0.0}};
  try {
    spectral_transition_1d(bad, 0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNumericalInconsistency);
  }
}

TEST(RecoverIncrement, KnownTables) {
  const auto u = recover_increment(EigenTable1D{{1.0, 0.0, 0.0, 0.0, 0.0}});
  for (int j = 0; j < 5; ++j) EXPECT_NEAR(u[j], 0.2, 1e-15);
  RootTable th(6);
  EigenTable1D eta;
  for (int r = 0; r < 6; ++r) eta.eta.push_back(th(r));
  const auto pm = recover_increment(eta);
  for (int j = 0; j < 6; ++j) EXPECT_NEAR(pm[j], j == 1 ? 1.0 : 0.0, 1e-15);
}

TEST(RecoverIncrement, RoundTrip) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const int q = 2 + i % 15;
    const auto v = testutil::random_law_1d(q, rng, i % 3 == 0);
    const auto back = recover_increment(eigenvalues_1d(v));
    for (int j = 0; j < q; ++j) EXPECT_NEAR(back[j], v[j], 1e-12);
  }
}

TEST(RecoverIncrement, RejectsNonLaw) {
  try {
    recover_increment(EigenTable1D{{1.0, -1.0, -1.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidEigenvalue);
  }
}

TEST(Ergodic, Sufficient) {
  EXPECT_TRUE(is_ergodic_sufficient(IncrementLaw1D::lazy(5, 1.0)));
  EXPECT_FALSE(is_ergodic_sufficient(IncrementLaw1D({0, 1})));
  EXPECT_FALSE(is_ergodic_sufficient(IncrementLaw1D({0, 0, 1, 0})));
  EXPECT_FALSE(is_ergodic_direct(IncrementLaw1D({0, 0, 1, 0})));
  EXPECT_THROW(is_ergodic_sufficient(IncrementLaw1D({0.2, 0.8, 0.0})), Error);
}

TEST(Ergodic, Direct) {
  EXPECT_FALSE(is_ergodic_direct(IncrementLaw1D({0, 0, 0.5, 0, 0.5, 0})));
  EXPECT_FALSE(is_ergodic_direct(IncrementLaw1D::point_mass(5, 1)));
  EXPECT_TRUE(is_ergodic_direct(IncrementLaw1D({0.5, 0.5, 0, 0, 0})));
}

TEST(Ergodic, SufficientImpliesDirect) {
  std::mt19937_64 rng(5);
  for (int q : {3, 5, 7, 11, 13}) {
    for (int i = 0; i < 20; ++i) {
      const auto v = symmetrize(testutil::random_law_1d(q, rng, true));
      if (is_ergodic_sufficient(v)) {
        EXPECT_TRUE(is_ergodic_direct(v)) << law_to_json(v);
      }
    }
  }
}

TEST(Symmetrize, Examples) {
  const auto a = symmetrize(IncrementLaw1D::point_mass(4, 3));
  EXPECT_NEAR(a[0], 1.0, 1e-15);
  const auto u = symmetrize(IncrementLaw1D::uniform(5));
  for (int j = 0; j < 5; ++j) EXPECT_NEAR(u[j], 0.2, 1e-15);
  const auto s = symmetrize(IncrementLaw1D({0.5, 0.5, 0.0}));
  EXPECT_NEAR(s[0], 0.5, 1e-15);
  EXPECT_NEAR(s[1], 0.25, 1e-15);
  EXPECT_NEAR(s[2], 0.25, 1e-15);
}

TEST(Symmetrize, SquaredModulusAndSymmetricMatrix) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    const int q = 2 + i % 10;
    const auto v = testutil::random_law_1d(q, rng);
    const auto e = eigenvalues_1d(v).eta;
    const auto s = symmetrize(v);
    const auto es = eigenvalues_1d(s).eta;
    for (int r = 0; r < q; ++r) {
      EXPECT_NEAR(es[r].real(), std::norm(e[r]), 1e-12);
      EXPECT_LT(std::abs(es[r].imag()), 1e-12);
    }
    const auto P = build_circulant(s);
    EXPECT_LT((P - P.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Serialization, JsonAndCsv) {
  const IncrementLaw1D v({0.25, 0.75});
  EXPECT_EQ(nlohmann::json::parse(law_to_json(v)), nlohmann::json::parse("[0.25,0.75]"));
  std::ostringstream os;
  write_matrix_csv(os, build_circulant(v));
  EXPECT_EQ(os.str(), "0.25,0.75\n0.75,0.25\n");
}

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "test_util.hpp"
#include "zqwalk/grouped.hpp"
#include "zqwalk/krawtchouk.hpp"
#include "zqwalk/mc_oracle.hpp"

using namespace zqwalk;

namespace {

std::map<OutcomeKey, double> row_table(const Eigen::MatrixXd& P, const StatePoint& x0) {
  std::map<OutcomeKey, double> out;
  const auto i = static_cast<Eigen::Index>(x0.linear_index());
  for (Eigen::Index j = 0; j < P.cols(); ++j) {
    out[StatePoint::from_index(static_cast<std::size_t>(j), x0.q(), x0.d()).values()] = P(i, j);
  }
  return out;
}

}  // namespace

TEST(SimulatePaths, TimeZeroIsPointMass) {
  std::mt19937_64 rng(1);
  const auto incr = testutil::random_explicit(3, 2, rng, 4);
  const StatePoint x0({2, 1}, 3);
  const auto emp = simulate_paths(incr, x0, 0, 500, 9);
  ASSERT_EQ(emp.counts.size(), 1u);
  EXPECT_EQ(emp.counts.at({2, 1}), 500);
}

TEST(SimulatePaths, Reproducible) {
  std::mt19937_64 rng(2);
  const auto incr = testutil::random_explicit(4, 2, rng, 6);
  const auto a = simulate_paths(incr, StatePoint::zero(2, 4), 5, 20'000, 123);
  const auto b = simulate_paths(incr, StatePoint::zero(2, 4), 5, 20'000, 123);
  EXPECT_EQ(a, b);
  EXPECT_EQ(report_to_json(compare(row_table(matrix_power_reference(incr, 5), StatePoint::zero(2, 4)), a)).dump(),
            report_to_json(compare(row_table(matrix_power_reference(incr, 5), StatePoint::zero(2, 4)), b)).dump());
  EXPECT_NE(a, simulate_paths(incr, StatePoint::zero(2, 4), 5, 20'000, 124));
}

TEST(SimulatePaths, PathSeedsSplit) {
  // the first k paths of a run are a run of k paths
  std::mt19937_64 rng(3);
  const auto incr = testutil::random_explicit(3, 2, rng, 5);
  const auto whole = simulate_paths(incr, StatePoint::zero(2, 3), 4, 1000, 77);
  auto part = simulate_paths(incr, StatePoint::zero(2, 3), 4, 400, 77);
  EXPECT_EQ(part.total, 400);
  long long shared = 0;
  for (const auto& [k, n] : part.counts) shared += std::min(n, whole.counts.count(k) ? whole.counts.at(k) : 0LL);
  EXPECT_EQ(shared, 400);
}

TEST(SimulatePaths, UniformMixesInOneStep) {
  const auto incr = IncrementDist::iid(IncrementLaw1D::uniform(3), 3);
  const auto emp = simulate_paths(incr, StatePoint({1, 0, 2}, 3), 1, 100'000, 5);
  std::map<OutcomeKey, double> expect;
  for (std::size_t i = 0; i < 27; ++i) expect[StatePoint::from_index(i, 3, 3).values()] = 1.0 / 27;
  const auto rep = compare(expect, emp);
  EXPECT_EQ(rep.n_cells, 27);
  EXPECT_LT(rep.max_z, 4.0);
}

TEST(SimulatePaths, MatchesMatrixPowers) {
  std::mt19937_64 rng(4);
  const auto incr = testutil::random_explicit(3, 2, rng, 4);
  const StatePoint x0({0, 2}, 3);
  const auto rep = compare(row_table(matrix_power_reference(incr, 3), x0), simulate_paths(incr, x0, 3, 100'000, 31));
  EXPECT_LT(rep.max_z, 4.0);
}

TEST(SimulatePaths, GroupedCounts) {
  const auto incr = IncrementDist::iid(IncrementLaw1D::lazy(3, 0.4), 4);
  const auto emp = simulate_paths(incr, StatePoint::zero(4, 3), 2, 50'000, 8, OutcomeMode::kGroupedCounts);
  // lump the dense t-step row by counts
  const auto P = matrix_power_reference(incr, 2);
  std::map<OutcomeKey, double> expect;
  for (Eigen::Index j = 0; j < P.cols(); ++j) {
    expect[counts_of(StatePoint::from_index(static_cast<std::size_t>(j), 3, 4).values(), 3).counts()] += P(0, j);
  }
  EXPECT_LT(compare(expect, emp).max_z, 5.0);
}

TEST(EmpiricalDist, MergeIsAssociativeAndCommutative) {
  std::mt19937_64 rng(6);
  const auto incr = testutil::random_explicit(3, 2, rng, 3);
  const auto a = simulate_paths(incr, StatePoint::zero(2, 3), 2, 300, 1);
  const auto b = simulate_paths(incr, StatePoint::zero(2, 3), 2, 500, 2);
  const auto c = simulate_paths(incr, StatePoint::zero(2, 3), 2, 700, 3);
  EmpiricalDist ab_c, a_bc, cba;
  ab_c.merge(a);
  ab_c.merge(b);
  ab_c.merge(c);
  EmpiricalDist bc;
  bc.merge(b);
  bc.merge(c);
  a_bc.merge(a);
  a_bc.merge(bc);
  cba.merge(c);
  cba.merge(b);
  cba.merge(a);
  EXPECT_EQ(ab_c.counts, a_bc.counts);
  EXPECT_EQ(ab_c.counts, cba.counts);
  EXPECT_EQ(ab_c.total, 1500);
}

TEST(MatrixPower, Basics) {
  std::mt19937_64 rng(7);
  const auto incr = testutil::random_explicit(3, 3, rng, 8);
  const auto P1 = matrix_power_reference(incr, 1);
  std::vector<double> pmf;
  for (std::size_t i = 0; i < 27; ++i) pmf.push_back(increment_pmf(incr, StatePoint::from_index(i, 3, 3).values()));
  EXPECT_LT((P1 - testutil::direct_matrix(pmf, 3, 3)).cwiseAbs().maxCoeff(), 1e-15);
  const auto P5 = matrix_power_reference(incr, 5);
  EXPECT_LT((P5.rowwise().sum().array() - 1.0).abs().maxCoeff(), 1e-12);
  EXPECT_EQ(matrix_power_reference(incr, 0), Eigen::MatrixXd::Identity(27, 27));
  EXPECT_THROW(matrix_power_reference(IncrementDist::iid(IncrementLaw1D::uniform(5), 6), 1), Error);
}

TEST(MatrixPower, SpectralKernelAgrees) {
  // every law up to q^d = 3^6
  std::mt19937_64 rng(8);
  for (auto [q, d] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {4, 2}, {5, 2}, {3, 4}, {3, 6}}) {
    std::vector<IncrementDist> laws{testutil::random_explicit(q, d, rng, 5), IncrementDist::iid(testutil::random_law_1d(q, rng), d),
                                    testutil::random_exchangeable(q, d, rng, true)};
    for (const auto& incr : laws) {
      for (int t : {1, 3}) {
        const auto K = kernel_to_matrix(ProductSpectrum(incr).kernel(t), q, d);
        EXPECT_LT((K - matrix_power_reference(incr, t)).cwiseAbs().maxCoeff(), 1e-9) << q << ' ' << d << ' ' << t;
      }
    }
  }
}

TEST(MatrixPower, GroupedChainAgrees) {
  std::mt19937_64 rng(9);
  for (auto [q, d] : std::vector<std::pair<int, int>>{{3, 3}, {3, 5}, {4, 3}}) {
    const auto incr = testutil::random_exchangeable(q, d, rng);
    const auto table = MvkTable::build(q, d);
    const auto chain = GroupedChain::from_increment(incr);
    const auto P = matrix_power_reference(incr, 2);
    for (const auto& m : table.states()) {
      std::vector<int> rep;
      for (int j = 0; j < q; ++j) rep.insert(rep.end(), static_cast<std::size_t>(m[j]), j);
      const auto i = static_cast<Eigen::Index>(StatePoint(rep, q).linear_index());
      std::vector<double> lumped(table.size(), 0.0);
      for (Eigen::Index j = 0; j < P.cols(); ++j) {
        lumped[table.state_of(counts_of(StatePoint::from_index(static_cast<std::size_t>(j), q, d).values(), q))] += P(i, j);
      }
      const auto row = grouped_row_raw(chain, table, m, 2);
      for (std::size_t k = 0; k < row.size(); ++k) EXPECT_NEAR(row[k], lumped[k], 1e-9);
    }
  }
}

TEST(Compare, DrawnFromExpected) {
  std::mt19937_64 rng(10);
  const auto p = testutil::random_probs(12, rng);
  std::discrete_distribution<int> dist(p.begin(), p.end());
  EmpiricalDist emp;
  for (int i = 0; i < 100'000; ++i) emp.add({dist(rng)});
  std::map<OutcomeKey, double> expect;
  for (int i = 0; i < 12; ++i) expect[{i}] = p[static_cast<std::size_t>(i)];
  EXPECT_LT(compare(expect, emp).max_z, 5.0);

  // expected set to the observed frequencies
  std::map<OutcomeKey, double> freq;
  for (int i = 0; i < 12; ++i) freq[{i}] = emp.frequency({i});
  EXPECT_EQ(compare(freq, emp).max_abs_dev, 0.0);

  // negative control: swap the largest and smallest cells
  auto wrong = expect;
  const int hi = static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
  const int lo = static_cast<int>(std::min_element(p.begin(), p.end()) - p.begin());
  std::swap(wrong[{hi}], wrong[{lo}]);
  EXPECT_GT(compare(wrong, emp).max_z, 10.0);
  std::map<OutcomeKey, double> flat;
  for (int i = 0; i < 12; ++i) flat[{i}] = 1.0 / 12;
  EXPECT_GT(compare(flat, emp).max_z, 10.0);
}

TEST(Compare, ImpossibleOutcome) {
  EmpiricalDist emp;
  emp.add({0}, 10);
  emp.add({1}, 1);
  try {
    compare({{{0}, 1.0}, {{1}, 0.0}}, emp);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kImpossibleOutcome);
  }
  try {
    compare({{{0}, 1.0}}, emp);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kImpossibleOutcome);
  }
}

TEST(Compare, JsonReport) {
  const ComparisonReport r{0.01, 2.5, 7};
  const auto j = report_to_json(r);
  EXPECT_EQ(j.at("n_cells").get<long long>(), 7);
  EXPECT_DOUBLE_EQ(j.at("max_z").get<double>(), 2.5);
  EXPECT_TRUE(r.passes());
}

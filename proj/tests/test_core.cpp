#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <numbers>

#include "zqwalk/core.hpp"
#include "zqwalk/series.hpp"

using namespace zqwalk;

namespace {

std::vector<std::vector<int>> counts_list(const std::vector<CountVector>& v) {
  std::vector<std::vector<int>> out;
  for (const auto& c : v) out.push_back(c.counts());
  return out;
}

std::vector<std::vector<int>> index_list(const std::vector<MultiIndex>& v) {
  std::vector<std::vector<int>> out;
  for (const auto& l : v) out.push_back(l.values());
  return out;
}

}  // namespace

TEST(RootOfUnity, QuarterTurnIsExact) {
  const Complex z = root_of_unity(4, 1);
  EXPECT_EQ(z.real(), 0.0);
  EXPECT_EQ(z.imag(), 1.0);
}

TEST(RootOfUnity, SpinValue) {
  EXPECT_EQ(root_of_unity(2, 1), Complex(-1.0, 0.0));
}

TEST(RootOfUnity, ReducesExponent) {
  const Complex want = std::polar(1.0, 4.0 * std::numbers::pi / 3.0);
  EXPECT_LT(std::abs(root_of_unity(3, 5) - want), 1e-15);
  EXPECT_LT(std::abs(root_of_unity(3, -1) - want), 1e-15);
}

TEST(RootOfUnity, RejectsSmallModulus) {
  try {
    root_of_unity(1, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidModulus);
  }
}

TEST(RootOfUnity, ConjugatePairsMultiplyToOne) {
  double worst = 0.0;
  for (int q = 2; q <= 64; ++q) {
    for (int k = 0; k < q; ++k) worst = std::max(worst, std::abs(root_of_unity(q, k) * root_of_unity(q, q - k) - 1.0));
  }
  EXPECT_LT(worst, 1e-14);
}

TEST(RootOfUnity, CharacterOrthogonality) {
  for (int q : {2, 3, 5, 8, 12}) {
    RootTable th(q);
    for (int r = 0; r < q; ++r) {
      for (int s = 0; s < q; ++s) {
        Complex acc = 0.0;
        for (int a = 0; a < q; ++a) acc += th.theta(r, a) * std::conj(th.theta(s, a));
        EXPECT_LT(std::abs(acc / double(q) - (r == s ? 1.0 : 0.0)), 1e-12) << q << ' ' << r << ' ' << s;
      }
    }
  }
}

TEST(CyclicElement, RangeChecked) {
  EXPECT_EQ(CyclicElement(2, 3).value(), 2);
  EXPECT_THROW(CyclicElement(3, 3), Error);
  EXPECT_THROW(CyclicElement(-1, 3), Error);
}

TEST(CountVector, InvariantsAndPlusMinus) {
  const CountVector m({1, 1, 2});
  EXPECT_EQ(m.q(), 3);
  EXPECT_EQ(m.d(), 4);
  EXPECT_EQ(m.minus().values(), (std::vector<int>{1, 2}));
  EXPECT_THROW(CountVector({1, -1}), Error);
  const MultiIndex l({2, 1}, 4);
  EXPECT_EQ(l.order(), 3);
  EXPECT_EQ(l.plus().counts(), (std::vector<int>{1, 2, 1}));
  EXPECT_THROW(MultiIndex({3, 2}, 4), Error);
}

TEST(Enumerate, CountVectorsSmall) {
  EXPECT_EQ(counts_list(enumerate_count_vectors(1, 2)), (std::vector<std::vector<int>>{{0, 1}, {1, 0}}));
  EXPECT_EQ(counts_list(enumerate_count_vectors(2, 2)), (std::vector<std::vector<int>>{{0, 2}, {1, 1}, {2, 0}}));
}

TEST(Enumerate, CountVectorCardinality) {
  // stars and bars, counted here by brute force over q^d words
  for (int q = 2; q <= 4; ++q) {
    for (int d = 0; d <= 5; ++d) {
      std::set<std::vector<int>> seen;
      long long words = 1;
      for (int k = 0; k < d; ++k) words *= q;
      for (long long w = 0; w < words; ++w) {
        std::vector<int> c(q, 0);
        long long x = w;
        for (int k = 0; k < d; ++k, x /= q) ++c[x % q];
        seen.insert(c);
      }
      const auto got = counts_list(enumerate_count_vectors(d, q));
      EXPECT_EQ(got, std::vector<std::vector<int>>(seen.begin(), seen.end())) << q << ' ' << d;
    }
  }
  EXPECT_EQ(enumerate_count_vectors(2, 3).size(), 6u);
}

TEST(Enumerate, MultiIndicesSmall) {
  EXPECT_EQ(index_list(enumerate_multi_indices(1, 3)), (std::vector<std::vector<int>>{{0, 0}, {1, 0}, {0, 1}}));
  EXPECT_EQ(index_list(enumerate_multi_indices(2, 2)), (std::vector<std::vector<int>>{{0}, {1}, {2}}));
  EXPECT_EQ(enumerate_multi_indices(3, 3).size(), 10u);
}

TEST(Enumerate, MultiIndicesGraded) {
  const auto idx = enumerate_multi_indices(4, 4);
  EXPECT_EQ(idx.size(), 35u);
  for (std::size_t i = 1; i < idx.size(); ++i) EXPECT_LE(idx[i - 1].order(), idx[i].order());
  EXPECT_EQ(idx.front().order(), 0);
}

TEST(Enumerate, SizeGuard) {
  try {
    enumerate_count_vectors(2000, 6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSize);
  }
}

TEST(Multinomial, Values) {
  EXPECT_EQ(multinomial_coeff(CountVector({2, 1, 1})), 12);
  EXPECT_EQ(multinomial_coeff(CountVector({7, 0, 0})), 1);
  EXPECT_EQ(multinomial_coeff(CountVector({1, 1, 2})), 12);
}

TEST(Multinomial, ExactBeyondDoublePrecision) {
  // 30!/(10!)^3 = 5550996791340, checked against a Pascal-style recursion
  std::map<std::vector<int>, BigInt> memo;
  std::function<BigInt(std::vector<int>)> rec = [&](std::vector<int> c) -> BigInt {
    int n = 0;
    for (int x : c) n += x;
    if (n == 0) return 1;
    if (auto it = memo.find(c); it != memo.end()) return it->second;
    BigInt s = 0;
    for (auto& x : c) {
      if (x == 0) continue;
      --x;
      s += rec(c);
      ++x;
    }
    return memo[c] = s;
  };
  EXPECT_EQ(multinomial_coeff(CountVector({10, 10, 10})), rec({10, 10, 10}));
  EXPECT_EQ(multinomial_coeff(CountVector({10, 10, 10})), BigInt("5550996791340"));
  EXPECT_EQ(multinomial_coeff(CountVector({20, 15, 12})), rec({20, 15, 12}));
}

TEST(StationaryPmf, Values) {
  EXPECT_DOUBLE_EQ(stationary_pmf(CountVector({1, 0})), 0.5);
  EXPECT_DOUBLE_EQ(stationary_pmf(CountVector({5, 0, 0})), std::pow(3.0, -5));
}

TEST(StationaryPmf, Normalized) {
  for (int q = 2; q <= 5; ++q) {
    for (int d = 0; d <= 8; ++d) {
      double s = 0.0;
      for (const auto& m : enumerate_count_vectors(d, q)) s += stationary_pmf(m);
      EXPECT_NEAR(s, 1.0, 1e-12) << q << ' ' << d;
    }
  }
}

TEST(Series, ExpMatchesTaylor) {
  // exp(x + y) truncated at degree 4 has coefficient 1/(a! b!)
  auto lay = MonomialLayout::total_degree(2, 4);
  std::vector<Complex> f(lay.size(), 0.0);
  f[lay.find({1, 0})] = 1.0;
  f[lay.find({0, 1})] = 1.0;
  const auto e = lay.exp(f);
  for (std::size_t i = 0; i < lay.size(); ++i) {
    const auto& a = lay.exponent(i);
    EXPECT_NEAR(e[i].real(), 1.0 / (std::tgamma(a[0] + 1.0) * std::tgamma(a[1] + 1.0)), 1e-14);
  }
}

#pragma once

// Large-d limits of the Krawtchouk system: fraction limits, reproducing-kernel
// limits and the Gaussian (CLT) form built on Hermite-Chebycheff polynomials.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "zqwalk/core.hpp"
#include "zqwalk/krawtchouk.hpp"
#include "zqwalk/series.hpp"

namespace zqwalk {

/// Limiting fractions z[j-1] of coordinates equal to j, j = 1..q-1.
class FractionVector {
 public:
  explicit FractionVector(std::vector<double> z) : z_(std::move(z)) {
    detail::require(!z_.empty(), ErrorKind::kInvalidModulus, "fraction vector needs q-1 >= 1 entries");
    double s = 0.0;
    for (double x : z_) {
      detail::require(x >= 0.0, ErrorKind::kValidation, "fractions must be >= 0");
      s += x;
    }
    detail::require(s <= 1.0 + 1e-12, ErrorKind::kValidation, "fractions sum above 1");
    total_ = s;
  }

  int q() const noexcept { return static_cast<int>(z_.size()) + 1; }
  double total() const noexcept { return total_; }
  double operator[](std::size_t j) const { return z_[j]; }
  const std::vector<double>& values() const noexcept { return z_; }

  /// Realized fractions m[1..]/d of a count vector.
  static FractionVector of(const CountVector& m) {
    std::vector<double> z;
    for (int j = 1; j < m.q(); ++j) z.push_back(static_cast<double>(m[static_cast<std::size_t>(j)]) / m.d());
    return FractionVector(std::move(z));
  }

 private:
  std::vector<double> z_;
  double total_ = 0.0;
};

/// A point of the singular Gaussian limit; entries sum to zero.
class GaussianCoordinate {
 public:
  explicit GaussianCoordinate(std::vector<double> m) : m_(std::move(m)) {
    check_modulus(static_cast<int>(m_.size()));
    double s = 0.0;
    double scale = 1.0;
    for (double x : m_) {
      s += x;
      scale = std::max(scale, std::abs(x));
    }
    detail::require(std::abs(s) <= 1e-12 * scale * m_.size(), ErrorKind::kValidation,
                    "Gaussian coordinate must sum to zero");
  }

  int q() const noexcept { return static_cast<int>(m_.size()); }
  double operator[](std::size_t j) const { return m_[j]; }
  const std::vector<double>& values() const noexcept { return m_; }

  /// (m - d/q) / sqrt(d), re-centred so the entries sum to exactly zero.
  static GaussianCoordinate of(const CountVector& m) {
    const double d = m.d();
    std::vector<double> x;
    for (int j = 0; j < m.q(); ++j) x.push_back((m[static_cast<std::size_t>(j)] - d / m.q()) / std::sqrt(d));
    double mean = 0.0;
    for (double v : x) mean += v / m.q();
    for (double& v : x) v -= mean;
    return GaussianCoordinate(std::move(x));
  }

 private:
  std::vector<double> m_;
};

/// lim h_l Q_l(n) = prod_k (1 - |z| + sum_j z[j] theta_k^j)^{l_k}.
inline Complex mvk_limit(const FractionVector& z, const MultiIndex& l) {
  detail::require(z.q() == l.q(), ErrorKind::kShape, "fraction vector and index disagree on q");
  const int q = l.q();
  const RootTable roots(q);
  Complex prod{1.0, 0.0};
  for (int k = 1; k < q; ++k) {
    Complex f{1.0 - z.total(), 0.0};
    for (int j = 1; j < q; ++j) f += z[static_cast<std::size_t>(j - 1)] * roots.theta(k, j);
    prod *= std::pow(f, l[static_cast<std::size_t>(k - 1)]);
  }
  return prod;
}

/// lim C(d,L)^{-1} Q_L(n, m) = (q(1-|xi|)(1-|eta|) + q sum_j xi[j] eta[j] - 1)^L.
inline double rk_limit(const FractionVector& xi, const FractionVector& eta, int L) {
  detail::require(xi.q() == eta.q(), ErrorKind::kShape, "fraction vectors disagree on q");
  detail::require(L >= 0, ErrorKind::kParameter, "L must be >= 0");
  const int q = xi.q();
  double s = q * (1.0 - xi.total()) * (1.0 - eta.total()) - 1.0;
  for (std::size_t j = 0; j < xi.values().size(); ++j) s += q * xi[j] * eta[j];
  return std::pow(s, L);
}

/// H_k(x; q), orthogonal for N(0, 1/q): H_{k+1} = x H_k - (k/q) H_{k-1}.
inline double hermite_chebycheff(int k, double x, int q) {
  detail::require(k >= 0, ErrorKind::kParameter, "degree must be >= 0");
  check_modulus(q);
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int i = 1; i < k; ++i) {
    const double next = x * cur - (static_cast<double>(i) / q) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline constexpr int kMaxCltDegree = 12;

/// Limit polynomials Q_l(m; infinity) for all |l| <= Lmax: the coefficient of
/// w^l in exp{-1/2 sum_k w_k w_{q-k} + sum_k w_k S_k}, S_k = sum_j m[j] theta_k^j.
class CltBasis {
 public:
  CltBasis(int q, int lmax) : q_(q), layout_(MonomialLayout::total_degree(q - 1, lmax)) {
    check_modulus(q);
    detail::require(lmax >= 0 && lmax <= kMaxCltDegree, ErrorKind::kSize,
                    "CLT series degree " + std::to_string(lmax) + " exceeds the cap of 12");
    // quadratic part; w_k w_{q-k} appears twice unless k = q-k
    std::vector<Complex> quad(layout_.size(), Complex{0.0, 0.0});
    for (int k = 1; k < q; ++k) {
      std::vector<int> e(static_cast<std::size_t>(q - 1), 0);
      ++e[static_cast<std::size_t>(k - 1)];
      ++e[static_cast<std::size_t>(q - k - 1)];
      if (layout_.contains(e)) quad[layout_.find(e)] += -0.5;
    }
    gauss_ = layout_.exp(quad);
    std::vector<int> sum(static_cast<std::size_t>(q - 1));
    for (std::size_t i = 0; i < layout_.size(); ++i) {
      if (gauss_[i] == Complex{}) continue;
      for (std::size_t j = 0; j < layout_.size(); ++j) {
        for (int k = 0; k < q - 1; ++k) sum[k] = layout_.exponent(i)[k] + layout_.exponent(j)[k];
        if (layout_.contains(sum)) pairs_.push_back({i, j, layout_.find(sum)});
      }
    }
  }

  int q() const noexcept { return q_; }
  const MonomialLayout& layout() const noexcept { return layout_; }

  /// Q_l(m; infinity) for every l in layout order.
  std::vector<Complex> row(const GaussianCoordinate& m) const {
    detail::require(m.q() == q_, ErrorKind::kShape, "coordinate has wrong q");
    const RootTable roots(q_);
    std::vector<Complex> S(static_cast<std::size_t>(q_ - 1), Complex{0.0, 0.0});
    for (int k = 1; k < q_; ++k) {
      for (int j = 0; j < q_; ++j) S[static_cast<std::size_t>(k - 1)] += m[static_cast<std::size_t>(j)] * roots.theta(k, j);
    }
    // exp(sum_k w_k S_k) has coefficients prod_k S_k^{b_k} / b_k!
    std::vector<Complex> lin(layout_.size(), Complex{0.0, 0.0});
    lin[0] = 1.0;
    for (std::size_t pos = 1; pos < layout_.size(); ++pos) {
      for (int k = 0; k < q_ - 1; ++k) {
        const std::size_t p = layout_.dec(pos, k);
        if (p == MonomialLayout::npos) continue;
        lin[pos] = lin[p] * S[static_cast<std::size_t>(k)] / static_cast<double>(layout_.exponent(pos)[k]);
        break;
      }
    }
    std::vector<Complex> out(layout_.size(), Complex{0.0, 0.0});
    for (const auto& pr : pairs_) out[pr.k] += gauss_[pr.i] * lin[pr.j];
    return out;
  }

 private:
  struct Pair {
    std::size_t i, j, k;
  };
  int q_;
  MonomialLayout layout_;
  std::vector<Complex> gauss_;
  std::vector<Pair> pairs_;
};

inline Complex mvk_clt(const GaussianCoordinate& m, const MultiIndex& l) {
  detail::require(m.q() == l.q(), ErrorKind::kShape, "coordinate and index disagree on q");
  detail::require(l.order() <= kMaxCltDegree, ErrorKind::kSize, "CLT series degree exceeds the cap of 12");
  const CltBasis basis(m.q(), l.order());
  return basis.row(m)[basis.layout().find(l.values())];
}

/// The same limit through the explicit form
/// sum_{|a|=|l|} prod_j H_{a_j}(m[j]) Q_{a^-}(l^+; d=|l|) / prod l^+!.
inline Complex mvk_clt_hermite(const GaussianCoordinate& m, const MultiIndex& l) {
  detail::require(m.q() == l.q(), ErrorKind::kShape, "coordinate and index disagree on q");
  const int q = l.q();
  const int L = l.order();
  if (L == 0) return {1.0, 0.0};
  std::vector<int> lp{0};
  lp.insert(lp.end(), l.values().begin(), l.values().end());
  const CountVector lplus(lp);
  double lfact = 1.0;
  for (int x : l.values()) lfact *= to_double(factorial(x));
  Complex s{0.0, 0.0};
  for (const auto& a : enumerate_count_vectors(L, q)) {
    double h = 1.0;
    for (int j = 0; j < q; ++j) h *= hermite_chebycheff(a[static_cast<std::size_t>(j)], m[static_cast<std::size_t>(j)], q);
    if (h == 0.0) continue;
    s += h * mvk_value(a.minus(), lplus);
  }
  return s / lfact;
}

/// Draw M = Z - mean(Z) with Z_j iid N(0, 1/q); covariance (1/q)(delta_ab - 1/q).
inline GaussianCoordinate sample_singular_gaussian(int q, std::mt19937_64& rng) {
  check_modulus(q);
  std::normal_distribution<double> n(0.0, 1.0 / std::sqrt(static_cast<double>(q)));
  std::vector<double> z(static_cast<std::size_t>(q));
  double mean = 0.0;
  for (double& x : z) {
    x = n(rng);
    mean += x / q;
  }
  for (double& x : z) x -= mean;
  return GaussianCoordinate(std::move(z));
}

inline double singular_gaussian_covariance(int a, int b, int q) { return ((a == b ? 1.0 : 0.0) - 1.0 / q) / q; }

/// Density of the reduced coordinates m_+ = (m[1], ..., m[q-1]).
inline double singular_gaussian_density(const GaussianCoordinate& m) {
  const int q = m.q();
  double quad = 0.0;
  double s = 0.0;
  for (int a = 1; a < q; ++a) {
    quad += m[static_cast<std::size_t>(a)] * m[static_cast<std::size_t>(a)];
    s += m[static_cast<std::size_t>(a)];
  }
  quad += s * s;
  return std::pow(q, q / 2.0) / std::pow(2.0 * std::numbers::pi, (q - 1) / 2.0) * std::exp(-0.5 * q * quad);
}

/// Monte Carlo max |E[Q_l conj(Q_l')] - delta_{ll'} / prod l!| over |l|, |l'| <= lmax.
inline double clt_orthogonality_check(int q, int lmax, long long n_mc, std::uint64_t seed) {
  detail::require(n_mc >= 100'000, ErrorKind::kParameter, "need at least 10^5 samples");
  const CltBasis basis(q, lmax);
  const std::size_t n = basis.layout().size();
  std::vector<Complex> acc(n * n, Complex{0.0, 0.0});
  std::mt19937_64 rng(seed);
  for (long long s = 0; s < n_mc; ++s) {
    const auto row = basis.row(sample_singular_gaussian(q, rng));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) acc[i * n + j] += row[i] * std::conj(row[j]);
    }
  }
  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double inv = 1.0;
    for (int x : basis.layout().exponent(i)) inv *= to_double(factorial(x));
    for (std::size_t j = 0; j < n; ++j) {
      const double expect = i == j ? 1.0 / inv : 0.0;
      dev = std::max(dev, std::abs(acc[i * n + j] / static_cast<double>(n_mc) - expect));
    }
  }
  return dev;
}

inline constexpr int kMaxCltDensityDegree = 8;

/// phi(n_+) {1 + sum_{0<|l|<=Lmax} prod_k (1-|v| + sum_j v[j] theta_k^j)^{l_k}
///                                  prod l! Q_l(m) conj(Q_l(n))}.
inline double clt_transition_density(const GaussianCoordinate& m, const GaussianCoordinate& n, const FractionVector& v,
                                     int lmax) {
  detail::require(lmax >= 0 && lmax <= kMaxCltDensityDegree, ErrorKind::kSize, "density series degree above 8");
  detail::require(m.q() == n.q() && v.q() == m.q(), ErrorKind::kShape, "arguments disagree on q");
  const CltBasis basis(m.q(), lmax);
  const auto qm = basis.row(m);
  const auto qn = basis.row(n);
  Complex s{1.0, 0.0};
  for (std::size_t i = 1; i < basis.layout().size(); ++i) {
    const auto& e = basis.layout().exponent(i);
    double lf = 1.0;
    for (int x : e) lf *= to_double(factorial(x));
    s += mvk_limit(v, MultiIndex(e, basis.layout().degree(i))) * lf * qm[i] * std::conj(qn[i]);
  }
  detail::require(std::abs(s.imag()) <= 1e-8 * std::max(1.0, std::abs(s.real())), ErrorKind::kNumericalInconsistency,
                  "limit density series is not real");
  return singular_gaussian_density(n) * s.real();
}

}  // namespace zqwalk

#pragma once

// Multivariate Krawtchouk polynomials Q_l(m) on the uniform multinomial,
// defined as the coefficient of w^l in prod_j (1 + sum_k w_k theta_k^j)^{m[j]}.

#include <cmath>
#include <complex>
#include <ostream>
#include <string>
#include <vector>

#include "zqwalk/core.hpp"
#include "zqwalk/series.hpp"

namespace zqwalk {

/// Size guard on the number of count vectors per table.
inline constexpr std::size_t kMaxMvkStates = 100'000;
/// Memory guard on the dense (index x state) table.
inline constexpr std::size_t kMaxMvkEntries = std::size_t{1} << 26;

/// Exact h_l^{-1} = d! / ((d-|l|)! prod l_k!).
inline BigInt norm_h_inv(const MultiIndex& l) { return multinomial(l.plus().counts()); }

/// Exact h_l.
inline Rational norm_h(const MultiIndex& l) { return Rational(BigInt(1), norm_h_inv(l)); }

namespace detail {

inline void check_basis(int q, const std::vector<int>& basis) {
  if (basis.empty()) return;
  require(static_cast<int>(basis.size()) == q - 1, ErrorKind::kShape, "basis permutation needs q-1 entries");
  std::vector<int> sorted = basis;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < q - 1; ++k) {
    require(sorted[static_cast<std::size_t>(k)] == k + 1, ErrorKind::kValidation,
            "basis must be a permutation of 1..q-1");
  }
}

/// Coefficients of prod_j (1 + sum_k w_k theta_{s(k)}^j)^{m[j]} on `layout`.
inline std::vector<Complex> generating_coefficients(const MonomialLayout& layout, const CountVector& m,
                                                    const RootTable& roots, const std::vector<int>& basis) {
  const int q = m.q();
  std::vector<Complex> a(layout.size(), Complex{0.0, 0.0});
  a[0] = 1.0;
  std::vector<Complex> c(static_cast<std::size_t>(q - 1));
  for (int j = 0; j < q; ++j) {
    if (m[j] == 0) continue;
    for (int k = 1; k < q; ++k) {
      const int kk = basis.empty() ? k : basis[static_cast<std::size_t>(k - 1)];
      c[static_cast<std::size_t>(k - 1)] = roots.theta(kk, j);
    }
    for (int rep = 0; rep < m[j]; ++rep) layout.mul_linear(a, 1.0, c);
  }
  return a;
}

}  // namespace detail

/// Q_l(m) for one pair, extracting only the coefficients below l.
inline Complex mvk_value(const MultiIndex& l, const CountVector& m) {
  detail::require(l.q() == m.q() && l.d() == m.d(), ErrorKind::kShape, "index and count vector disagree on q or d");
  const auto layout = MonomialLayout::box(l.values());
  const RootTable roots(m.q());
  const auto a = detail::generating_coefficients(layout, m, roots, {});
  return a[layout.find(l.values())];
}

/// Q_l(m) for every l with |l| <= d, in enumerate_multi_indices order.
inline std::vector<Complex> mvk_row(const CountVector& m, const std::vector<int>& basis = {}) {
  detail::check_basis(m.q(), basis);
  checked_cardinality(m.d(), m.q());
  const auto layout = MonomialLayout::total_degree(m.q() - 1, m.d());
  const RootTable roots(m.q());
  return detail::generating_coefficients(layout, m, roots, basis);
}

class MvkTable {
 public:
  /// Full table over all (l, m). `basis` optionally relabels theta_k -> theta_{basis[k-1]}.
  static MvkTable build(int q, int d, const std::vector<int>& basis = {}) {
    check_modulus(q);
    detail::require(d >= 1, ErrorKind::kParameter, "d must be >= 1");
    detail::check_basis(q, basis);
    const std::size_t n = checked_cardinality(d, q);
    detail::require(n <= kMaxMvkStates, ErrorKind::kSize,
                    "C(d+q-1,q-1) = " + std::to_string(n) + " count vectors exceeds the table guard");
    detail::require(n <= kMaxMvkEntries / n, ErrorKind::kSize, "Krawtchouk table would not fit in memory");
    MvkTable t;
    t.q_ = q;
    t.d_ = d;
    t.indices_ = enumerate_multi_indices(d, q);
    t.states_ = enumerate_count_vectors(d, q);
    t.index_lookup_ = IndexLookup(t.indices_, [](const MultiIndex& l) { return l.values(); });
    t.state_lookup_ = IndexLookup(t.states_, [](const CountVector& m) { return m.counts(); });
    t.values_.resize(n * n);
    const auto layout = MonomialLayout::total_degree(q - 1, d);
    const RootTable roots(q);
    for (std::size_t mi = 0; mi < n; ++mi) {
      const auto a = detail::generating_coefficients(layout, t.states_[mi], roots, basis);
      for (std::size_t li = 0; li < n; ++li) t.values_[li * n + mi] = a[li];
    }
    t.h_.reserve(n);
    for (const auto& l : t.indices_) t.h_.push_back(to_double(norm_h(l)));
    t.pmf_.reserve(n);
    for (const auto& m : t.states_) t.pmf_.push_back(stationary_pmf(m));
    return t;
  }

  int q() const noexcept { return q_; }
  int d() const noexcept { return d_; }
  std::size_t size() const noexcept { return states_.size(); }

  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }
  const std::vector<CountVector>& states() const noexcept { return states_; }
  std::size_t index_of(const MultiIndex& l) const { return index_lookup_.at(l.values()); }
  std::size_t state_of(const CountVector& m) const { return state_lookup_.at(m.counts()); }

  /// Q_{indices()[li]}(states()[mi]).
  const Complex& operator()(std::size_t li, std::size_t mi) const { return values_[li * size() + mi]; }
  const Complex& value(const MultiIndex& l, const CountVector& m) const { return (*this)(index_of(l), state_of(m)); }

  /// h_l as doubles, by index position.
  const std::vector<double>& h() const noexcept { return h_; }
  /// Uniform multinomial pmf, by state position.
  const std::vector<double>& pmf() const noexcept { return pmf_; }

  void write_csv(std::ostream& os) const {
    const auto prec = os.precision(17);
    os << "l_index,m_index,re,im\n";
    for (std::size_t li = 0; li < size(); ++li) {
      for (std::size_t mi = 0; mi < size(); ++mi) {
        const Complex& v = (*this)(li, mi);
        os << li << ',' << mi << ',' << v.real() << ',' << v.imag() << '\n';
      }
    }
    os.precision(prec);
  }

 private:
  int q_ = 2;
  int d_ = 1;
  std::vector<MultiIndex> indices_;
  std::vector<CountVector> states_;
  IndexLookup index_lookup_;
  IndexLookup state_lookup_;
  std::vector<Complex> values_;
  std::vector<double> h_;
  std::vector<double> pmf_;
};

inline MvkTable mvk_build(int q, int d) { return MvkTable::build(q, d); }

/// Q_l(m) from the dual generating function: the coefficient of
/// C(d; m) s^m in h_l^{-1} (sum_j s_j)^{d-|l|} prod_k (sum_j s_j theta_k^j)^{l_k}.
inline Complex mvk_dual_eval(const MultiIndex& l, const CountVector& m) {
  detail::require(l.q() == m.q() && l.d() == m.d(), ErrorKind::kShape, "index and count vector disagree on q or d");
  const int q = m.q();
  checked_cardinality(m.d(), q);
  const auto layout = MonomialLayout::box(m.counts());
  const RootTable roots(q);
  std::vector<Complex> a(layout.size(), Complex{0.0, 0.0});
  a[0] = 1.0;
  std::vector<Complex> c(static_cast<std::size_t>(q), Complex{1.0, 0.0});
  for (int rep = 0; rep < l.d() - l.order(); ++rep) layout.mul_linear(a, 0.0, c);
  for (int k = 1; k < q; ++k) {
    for (int j = 0; j < q; ++j) c[static_cast<std::size_t>(j)] = roots.theta(k, j);
    for (int rep = 0; rep < l[static_cast<std::size_t>(k - 1)]; ++rep) layout.mul_linear(a, 0.0, c);
  }
  const double scale = to_double(Rational(norm_h_inv(l), multinomial_coeff(m)));
  return a[layout.find(m.counts())] * scale;
}

// ---------------------------------------------------------------------------
// Univariate Krawtchouk polynomials

/// K_l(m; d, q): coefficient of w^l in (1 + (q-1)w)^{d-m} (1 - w)^m.
inline BigInt univariate_k_exact(int l, int m, int d, int q) {
  check_modulus(q);
  detail::require(l >= 0 && l <= d && m >= 0 && m <= d, ErrorKind::kParameter, "need 0 <= l, m <= d");
  BigInt s = 0;
  for (int k = 0; k <= std::min(l, m); ++k) {
    BigInt term = binomial(m, k) * binomial(d - m, l - k) * pow_int(q - 1, l - k);
    if (k % 2) s -= term;
    else s += term;
  }
  return s;
}

inline double univariate_k(int l, int m, int d, int q) { return to_double(univariate_k_exact(l, m, d, q)); }

/// Q^K_l(m; d, 1-1/q) = K_l(m; d, q) / (C(d,l) (q-1)^l), so Q^K_l(0) = 1.
inline double scaled_krawtchouk(int l, int m, int d, int q) {
  return to_double(Rational(univariate_k_exact(l, m, d, q), binomial(d, l) * pow_int(q - 1, l)));
}

/// E[Q_l(M) | M[0] = m0] = (q-1)^{-|l|} C(|l|; l) K_{|l|}(d - m0; d, q).
inline double conditional_reduction(const MultiIndex& l, int m0, int d, int q) {
  detail::require(l.d() == d && l.q() == q, ErrorKind::kShape, "index does not match (d, q)");
  detail::require(m0 >= 0 && m0 <= d, ErrorKind::kParameter, "need 0 <= m0 <= d");
  const int L = l.order();
  return to_double(Rational(multinomial(l.values()) * univariate_k_exact(L, d - m0, d, q), pow_int(q - 1, L)));
}

// ---------------------------------------------------------------------------
// Reproducing kernels and hypergroup coefficients

/// Q_L(n, m) = sum_{|l| = L} h_l Q_l(m) conj(Q_l(n)).
inline double rk_poly(const MvkTable& table, int L, const CountVector& n, const CountVector& m) {
  detail::require(L >= 0 && L <= table.d(), ErrorKind::kParameter, "need 0 <= L <= d");
  const std::size_t ni = table.state_of(n);
  const std::size_t mi = table.state_of(m);
  Complex s{0.0, 0.0};
  for (std::size_t li = 0; li < table.size(); ++li) {
    if (table.indices()[li].order() != L) continue;
    s += table.h()[li] * table(li, mi) * std::conj(table(li, ni));
  }
  detail::require(std::abs(s.imag()) <= 1e-7 * std::max(1.0, std::abs(s.real())), ErrorKind::kNumericalInconsistency,
                  "reproducing kernel has imaginary residue " + std::to_string(s.imag()));
  return s.real();
}

/// Basis-free form of the kernel as an alternating sum of common-sample
/// overlaps zeta_k(n, m) = sum_{|w|=k} p(n-w) p(m-w) p(w) / (p(n) p(m)).
inline double rk_overlap(int L, const CountVector& n, const CountVector& m) {
  detail::require(n.q() == m.q() && n.d() == m.d(), ErrorKind::kShape, "count vectors disagree on q or d");
  const int q = n.q();
  const int d = n.d();
  detail::require(L >= 0 && L <= d, ErrorKind::kParameter, "need 0 <= L <= d");
  const Rational pn(multinomial(n.counts()), pow_int(q, d));
  const Rational pm(multinomial(m.counts()), pow_int(q, d));
  Rational total = 0;
  for (int k = 0; k <= L; ++k) {
    Rational zeta = 0;
    for (const auto& w : enumerate_count_vectors(k, q)) {
      std::vector<int> nw(static_cast<std::size_t>(q)), mw(static_cast<std::size_t>(q));
      bool ok = true;
      for (int j = 0; j < q; ++j) {
        nw[static_cast<std::size_t>(j)] = n[static_cast<std::size_t>(j)] - w[static_cast<std::size_t>(j)];
        mw[static_cast<std::size_t>(j)] = m[static_cast<std::size_t>(j)] - w[static_cast<std::size_t>(j)];
        ok = ok && nw[static_cast<std::size_t>(j)] >= 0 && mw[static_cast<std::size_t>(j)] >= 0;
      }
      if (!ok) continue;
      zeta += Rational(multinomial(nw), pow_int(q, d - k)) * Rational(multinomial(mw), pow_int(q, d - k)) *
              Rational(multinomial(w.counts()), pow_int(q, k));
    }
    Rational term = binomial(d, k) * binomial(d - k, L - k) * zeta;
    if ((L - k) % 2) total -= term;
    else total += term;
  }
  return to_double(total / (pn * pm));
}

/// Linearization coefficient c(m, n, g) = p(g) sum_l h_l^2 Q_l(m) conj(Q_l(n)) Q_l(g).
inline double hypergroup_coeff(const MvkTable& table, const CountVector& m, const CountVector& n,
                               const CountVector& g) {
  const std::size_t mi = table.state_of(m);
  const std::size_t ni = table.state_of(n);
  const std::size_t gi = table.state_of(g);
  Complex s{0.0, 0.0};
  for (std::size_t li = 0; li < table.size(); ++li) {
    const double h = table.h()[li];
    s += h * h * table(li, mi) * std::conj(table(li, ni)) * table(li, gi);
  }
  s *= table.pmf()[gi];
  detail::require(std::abs(s.imag()) <= 1e-7, ErrorKind::kNumericalInconsistency,
                  "hypergroup coefficient has imaginary residue " + std::to_string(s.imag()));
  detail::require(s.real() >= -1e-6, ErrorKind::kHypergroupViolation,
                  "negative hypergroup coefficient " + std::to_string(s.real()));
  return s.real();
}

}  // namespace zqwalk

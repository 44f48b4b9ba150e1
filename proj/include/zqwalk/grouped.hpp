#pragma once

// The grouped chain M_t of value counts, its eigenvalues kappa_l, chi-squared
// distance, cutoff bounds and Hamming-distance marginals.

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include "zqwalk/core.hpp"
#include "zqwalk/krawtchouk.hpp"
#include "zqwalk/product_chain.hpp"

namespace zqwalk {

/// h_l E[Q_l(C)] over a law on count vectors C.
inline std::vector<Complex> kappa_table_from_counts(const std::map<CountVector, double>& law, int q, int d) {
  const auto indices = enumerate_multi_indices(d, q);
  std::vector<Complex> kappa(indices.size(), Complex{0.0, 0.0});
  for (const auto& [c, p] : law) {
    const auto row = mvk_row(c);
    for (std::size_t i = 0; i < row.size(); ++i) kappa[i] += p * row[i];
  }
  for (std::size_t i = 0; i < indices.size(); ++i) kappa[i] *= to_double(norm_h(indices[i]));
  kappa[0] = 1.0;
  return kappa;
}

class GroupedChain {
 public:
  /// Eigenvalues by position in enumerate_multi_indices(d, q).
  static GroupedChain from_kappa(int q, int d, std::vector<Complex> kappa) {
    detail::require(kappa.size() == checked_cardinality(d, q), ErrorKind::kShape, "kappa table has wrong size");
    detail::require(std::abs(kappa[0] - 1.0) <= 1e-10, ErrorKind::kInvalidEigenvalue, "kappa_0 must equal 1");
    for (const auto& k : kappa) {
      detail::require(std::abs(k) <= 1.0 + 1e-10, ErrorKind::kInvalidEigenvalue, "|kappa_l| exceeds 1");
    }
    GroupedChain g;
    g.q_ = q;
    g.d_ = d;
    g.indices_ = enumerate_multi_indices(d, q);
    g.lookup_ = IndexLookup(g.indices_, [](const MultiIndex& l) { return l.values(); });
    g.kappa_ = std::move(kappa);
    return g;
  }

  /// kappa_l = h_l E[Q_l(V)] for an exchangeable increment law.
  static GroupedChain from_increment(const IncrementDist& incr) {
    detail::require(incr.is_exchangeable(), ErrorKind::kPrecondition, "grouped chain needs an exchangeable increment");
    return from_kappa(incr.q(), incr.d(), kappa_table_from_counts(count_law(incr), incr.q(), incr.d()));
  }

  /// Eigenvalues that depend only on |l|; kappa_by_order[L] for L = 0..d.
  static GroupedChain from_order_kappa(int q, int d, const std::vector<double>& kappa_by_order) {
    detail::require(static_cast<int>(kappa_by_order.size()) == d + 1, ErrorKind::kShape, "need d+1 order eigenvalues");
    const auto indices = enumerate_multi_indices(d, q);
    std::vector<Complex> kappa;
    kappa.reserve(indices.size());
    for (const auto& l : indices) kappa.emplace_back(kappa_by_order[static_cast<std::size_t>(l.order())]);
    return from_kappa(q, d, std::move(kappa));
  }

  int q() const noexcept { return q_; }
  int d() const noexcept { return d_; }
  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }
  const std::vector<Complex>& kappa() const noexcept { return kappa_; }
  const Complex& kappa(const MultiIndex& l) const { return kappa_[lookup_.at(l.values())]; }

 private:
  int q_ = 2;
  int d_ = 1;
  std::vector<MultiIndex> indices_;
  IndexLookup lookup_;
  std::vector<Complex> kappa_;
};

/// kappa_l for one index, computed as h_l E[Q_l(V)] over the count law.
inline Complex kappa_from_increment(const IncrementDist& incr, const MultiIndex& l) {
  detail::require(incr.is_exchangeable(), ErrorKind::kPrecondition, "kappa needs an exchangeable increment");
  detail::require(l.q() == incr.q() && l.d() == incr.d(), ErrorKind::kShape, "index does not match the law");
  Complex s{0.0, 0.0};
  for (const auto& [c, p] : count_law(incr)) s += p * mvk_value(l, c);
  return s * to_double(norm_h(l));
}

/// Block form E[theta_1^{S_1} ... theta_{q-1}^{S_{q-1}}], with S_k the sum of V
/// over a block of l_k coordinates; this is rho at any r with counts l^+.
inline Complex kappa_block(const IncrementDist& incr, const MultiIndex& l) {
  detail::require(l.q() == incr.q() && l.d() == incr.d(), ErrorKind::kShape, "index does not match the law");
  if (const auto* ex = std::get_if<ExchangeableLaw>(&incr.law())) return rho_exchangeable(*ex, l.plus());
  std::vector<int> r;
  for (int k = 0; k < l.q(); ++k) r.insert(r.end(), static_cast<std::size_t>(l.plus()[static_cast<std::size_t>(k)]), k);
  return rho(incr, r);
}

// ---------------------------------------------------------------------------
// Transition function and chi-squared distance

inline void check_chain_table(const GroupedChain& chain, const MvkTable& table) {
  detail::require(chain.q() == table.q() && chain.d() == table.d(), ErrorKind::kShape,
                  "Krawtchouk table does not match the chain");
}

/// P_t(n | m) for every n, unclamped.
inline std::vector<double> grouped_row_raw(const GroupedChain& chain, const MvkTable& table, const CountVector& m,
                                           int t = 1) {
  check_chain_table(chain, table);
  detail::require(t >= 0, ErrorKind::kParameter, "t must be >= 0");
  const std::size_t mi = table.state_of(m);
  const std::size_t n = table.size();
  std::vector<Complex> coef(n);
  for (std::size_t li = 0; li < n; ++li) coef[li] = std::pow(chain.kappa()[li], t) * table.h()[li] * table(li, mi);
  std::vector<double> row(n);
  for (std::size_t ni = 0; ni < n; ++ni) {
    Complex s{0.0, 0.0};
    for (std::size_t li = 0; li < n; ++li) s += coef[li] * std::conj(table(li, ni));
    s *= table.pmf()[ni];
    detail::require(std::abs(s.imag()) <= 1e-8, ErrorKind::kNumericalInconsistency,
                    "grouped transition has imaginary residue " + std::to_string(s.imag()));
    row[ni] = s.real();
  }
  return row;
}

/// P_t(n | m) = p(n) {1 + sum_{l != 0} kappa_l^t h_l Q_l(m) conj(Q_l(n))}, clamped at 0.
inline double grouped_transition(const GroupedChain& chain, const MvkTable& table, const CountVector& m,
                                 const CountVector& n, int t = 1) {
  check_chain_table(chain, table);
  const std::size_t mi = table.state_of(m);
  const std::size_t ni = table.state_of(n);
  Complex s{0.0, 0.0};
  for (std::size_t li = 0; li < table.size(); ++li) {
    s += std::pow(chain.kappa()[li], t) * table.h()[li] * table(li, mi) * std::conj(table(li, ni));
  }
  s *= table.pmf()[ni];
  detail::require(std::abs(s.imag()) <= 1e-8, ErrorKind::kNumericalInconsistency,
                  "grouped transition has imaginary residue " + std::to_string(s.imag()));
  detail::require(s.real() >= -1e-6, ErrorKind::kInvalidEigenvalue,
                  "negative grouped transition probability " + std::to_string(s.real()));
  return std::max(0.0, s.real());
}

inline Eigen::MatrixXd grouped_matrix(const GroupedChain& chain, const MvkTable& table, int t = 1) {
  const auto n = static_cast<Eigen::Index>(table.size());
  Eigen::MatrixXd P(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto row = grouped_row_raw(chain, table, table.states()[static_cast<std::size_t>(i)], t);
    for (Eigen::Index j = 0; j < n; ++j) {
      detail::require(row[static_cast<std::size_t>(j)] >= -1e-6, ErrorKind::kInvalidEigenvalue,
                      "negative grouped transition probability");
      P(i, j) = std::max(0.0, row[static_cast<std::size_t>(j)]);
    }
  }
  return P;
}

/// chi^2_t(m) = sum_{l != 0} |kappa_l|^{2t} h_l |Q_l(m)|^2.
inline double chi_squared(const GroupedChain& chain, const CountVector& m, int t) {
  detail::require(m.q() == chain.q() && m.d() == chain.d(), ErrorKind::kShape, "count vector does not match chain");
  detail::require(t >= 0, ErrorKind::kParameter, "t must be >= 0");
  const auto row = mvk_row(m);
  double s = 0.0;
  for (std::size_t li = 1; li < row.size(); ++li) {
    const double k2 = std::norm(chain.kappa()[li]);
    if (k2 == 0.0 && t > 0) continue;
    s += std::pow(k2, t) * to_double(norm_h(chain.indices()[li])) * std::norm(row[li]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Named models

/// E[(-1)^{#marked coordinates chosen}] for a uniform A-subset of d coordinates, L marked.
inline double subset_toggle_kappa(int A, int d, int L) {
  detail::require(A >= 0 && A <= d && L >= 0 && L <= d, ErrorKind::kParameter, "need 0 <= A, L <= d");
  // exact: the alternating sum cancels badly in floating point once C(d, A) is large
  BigInt s = 0;
  for (int n = 0; n <= std::min(L, A); ++n) {
    const BigInt term = binomial(L, n) * binomial(d - L, A - n);
    if (n % 2) s -= term;
    else s += term;
  }
  return to_double(Rational(s, binomial(d, A)));
}

/// Grouped chain of the subset-toggle model used for cutoff analysis: the
/// eigenvalue of order L is subset_toggle_kappa for L <= A and 0 above.
inline GroupedChain subset_toggle_chain(int d, int q, int A) {
  std::vector<double> k(static_cast<std::size_t>(d + 1), 0.0);
  for (int L = 0; L <= std::min(A, d); ++L) k[static_cast<std::size_t>(L)] = subset_toggle_kappa(A, d, L);
  return GroupedChain::from_order_kappa(q, d, k);
}

/// One uniformly chosen coordinate moves by -1.
inline IncrementDist left_shift_increment(int d, int q) {
  std::vector<int> c(static_cast<std::size_t>(q), 0);
  c[0] = d - 1;
  c[static_cast<std::size_t>(q - 1)] += 1;
  return IncrementDist::exchangeable({CountVector(c)}, {1.0});
}

/// One uniformly chosen coordinate moves to a left or right neighbour.
inline IncrementDist neighbor_increment(int d, int q) {
  if (q == 2) return left_shift_increment(d, q);
  std::vector<int> a(static_cast<std::size_t>(q), 0), b(static_cast<std::size_t>(q), 0);
  a[0] = b[0] = d - 1;
  a[1] = 1;
  b[static_cast<std::size_t>(q - 1)] = 1;
  return IncrementDist::exchangeable({CountVector(a), CountVector(b)}, {0.5, 0.5});
}

/// kappa_l = (1/d) sum_j l^+_j theta_1^{-j}.
inline GroupedChain left_shift_chain(int d, int q) {
  const RootTable roots(q);
  std::vector<Complex> kappa;
  for (const auto& l : enumerate_multi_indices(d, q)) {
    Complex s{0.0, 0.0};
    const auto lp = l.plus();
    for (int j = 0; j < q; ++j) s += static_cast<double>(lp[static_cast<std::size_t>(j)]) * roots(-j);
    kappa.push_back(s / static_cast<double>(d));
  }
  return GroupedChain::from_kappa(q, d, std::move(kappa));
}

/// kappa_l = (1/d) sum_j l^+_j cos(2 pi j / q).
inline GroupedChain neighbor_chain(int d, int q) {
  std::vector<Complex> kappa;
  for (const auto& l : enumerate_multi_indices(d, q)) {
    double s = 0.0;
    const auto lp = l.plus();
    for (int j = 0; j < q; ++j) s += lp[static_cast<std::size_t>(j)] * std::cos(2.0 * std::numbers::pi * j / q);
    kappa.emplace_back(s / d);
  }
  return GroupedChain::from_kappa(q, d, std::move(kappa));
}

/// Mixture of i.i.d. laws: kappa_l = sum w prod_k (sum_j theta_1^{kj} p_j)^{l_k}.
inline Complex definetti_kappa(const std::vector<double>& weights, const std::vector<std::vector<double>>& probs,
                               const MultiIndex& l) {
  detail::require(weights.size() == probs.size() && !weights.empty(), ErrorKind::kShape,
                  "mixture needs one weight per component");
  detail::check_probabilities(weights, "mixture weights");
  const int q = l.q();
  const RootTable roots(q);
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < weights.size(); ++i) {
    detail::require(static_cast<int>(probs[i].size()) == q, ErrorKind::kShape, "component has wrong length");
    detail::check_probabilities(probs[i], "component probabilities");
    Complex prod{1.0, 0.0};
    for (int k = 1; k < q; ++k) {
      Complex e{0.0, 0.0};
      for (int j = 0; j < q; ++j) e += roots(static_cast<long long>(k) * j) * probs[i][static_cast<std::size_t>(j)];
      prod *= std::pow(e, l[static_cast<std::size_t>(k - 1)]);
    }
    s += weights[i] * prod;
  }
  return s;
}

inline GroupedChain definetti_chain(int d, const std::vector<double>& weights,
                                    const std::vector<std::vector<double>>& probs) {
  detail::require(!probs.empty(), ErrorKind::kShape, "mixture needs components");
  const int q = static_cast<int>(probs.front().size());
  std::vector<Complex> kappa;
  for (const auto& l : enumerate_multi_indices(d, q)) kappa.push_back(definetti_kappa(weights, probs, l));
  return GroupedChain::from_kappa(q, d, std::move(kappa));
}

// ---------------------------------------------------------------------------
// Cutoff and mixing bounds

inline void check_frac(double frac) {
  detail::require(frac > 0.0 && frac <= 0.5, ErrorKind::kParameter, "need 0 < frac <= 1/2");
}

/// log(d(q-1)) / (4 frac).
inline double cutoff_time(int d, int q, double frac) {
  check_frac(frac);
  check_modulus(q);
  detail::require(d >= 1, ErrorKind::kParameter, "d must be >= 1");
  return std::log(static_cast<double>(d) * (q - 1)) / (4.0 * frac);
}

/// exp(d(q-1) e^{-4 frac t}) - 1.
inline double cutoff_upper_bound(int d, int q, double frac, double t) {
  check_frac(frac);
  return std::expm1(static_cast<double>(d) * (q - 1) * std::exp(-4.0 * frac * t));
}

/// d(q-1) (1 - 2 frac)^{2t}.
inline double cutoff_lower_bound(int d, int q, double frac, double t) {
  check_frac(frac);
  return static_cast<double>(d) * (q - 1) * std::pow(1.0 - 2.0 * frac, 2.0 * t);
}

struct MixingBounds {
  double lower;
  double upper;
};

/// Bracket on the chi-squared mixing time for one-coordinate moves with
/// step law gamma[c-1] = P(step c), c = 1..q-1.
inline MixingBounds mixing_bounds(const std::vector<double>& gamma, int d, int q, double eps) {
  check_modulus(q);
  detail::require(static_cast<int>(gamma.size()) == q - 1, ErrorKind::kShape, "gamma needs q-1 entries");
  double total = 0.0;
  for (double g : gamma) {
    detail::require(g >= 0.0, ErrorKind::kParameter, "gamma entries must be >= 0");
    total += g;
  }
  detail::require(total <= 1.0 + 1e-12, ErrorKind::kParameter, "|gamma| must be <= 1");
  detail::require(eps > -1.0, ErrorKind::kParameter, "need eps > -1");
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (int k = 1; k < q; ++k) {
    double s = 0.0;
    for (int c = 1; c < q; ++c) s += gamma[static_cast<std::size_t>(c - 1)] * std::cos(2.0 * std::numbers::pi * c * k / q);
    hi = std::max(hi, s);
    lo = std::min(lo, s);
  }
  detail::require(total > hi, ErrorKind::kNoBound, "nonpositive spectral gap, no mixing bound");
  const double logterm = std::max(0.0, std::log(static_cast<double>(d) * (q - 1) / (1.0 + eps)));
  return {logterm / (2.0 * (total - lo)), logterm / (2.0 * (total - hi))};
}

// ---------------------------------------------------------------------------
// Hamming distance

/// qh[h] = P(exactly h uniformly chosen coordinates change, to uniform nonzero values).
struct HammingModel {
  int q = 2;
  std::vector<double> qh;

  HammingModel(int q_, std::vector<double> qh_) : q(q_), qh(std::move(qh_)) {
    check_modulus(q);
    detail::require(qh.size() >= 2, ErrorKind::kShape, "need d >= 1");
    detail::check_probabilities(qh, "Hamming change probabilities");
  }

  int d() const noexcept { return static_cast<int>(qh.size()) - 1; }

  /// kappa_L = sum_h q_h Q^K_h(L).
  double kappa(int L) const {
    double s = 0.0;
    for (int h = 0; h <= d(); ++h) {
      if (qh[static_cast<std::size_t>(h)] != 0.0) s += qh[static_cast<std::size_t>(h)] * scaled_krawtchouk(h, L, d(), q);
    }
    return s;
  }

  IncrementDist increment() const {
    std::vector<CountVector> counts;
    std::vector<double> probs;
    for (int h = 0; h <= d(); ++h) {
      const double w = qh[static_cast<std::size_t>(h)];
      if (w == 0.0) continue;
      std::vector<std::vector<int>> comps;
      append_compositions(h, q - 1, comps);
      const double denom = to_double(pow_int(q - 1, h));
      for (const auto& c : comps) {
        std::vector<int> full{d() - h};
        full.insert(full.end(), c.begin(), c.end());
        counts.emplace_back(full);
        probs.push_back(w * to_double(multinomial(c)) / denom);
      }
    }
    const double s = std::accumulate(probs.begin(), probs.end(), 0.0);
    for (double& p : probs) p /= s;
    return IncrementDist::exchangeable(std::move(counts), std::move(probs));
  }

  GroupedChain chain() const {
    std::vector<double> k(static_cast<std::size_t>(d() + 1));
    for (int L = 0; L <= d(); ++L) k[static_cast<std::size_t>(L)] = kappa(L);
    return GroupedChain::from_order_kappa(q, d(), k);
  }
};

namespace detail {

inline std::vector<double> hamming_from_gamma(const std::vector<double>& gamma, int d, int q) {
  std::vector<double> out(static_cast<std::size_t>(d + 1));
  for (int dist = 0; dist <= d; ++dist) {
    double s = 1.0;
    for (int L = 1; L <= d; ++L) {
      s += gamma[static_cast<std::size_t>(L)] * binomial_double(d, L) * scaled_krawtchouk(L, dist, d, q);
    }
    const double base = binomial_double(d, dist) * std::pow(1.0 - 1.0 / q, dist) * std::pow(1.0 / q, d - dist);
    const double p = base * s;
    require(p >= -1e-6, ErrorKind::kInvalidModel, "negative Hamming probability " + std::to_string(p));
    out[static_cast<std::size_t>(dist)] = std::max(0.0, p);
  }
  return out;
}

}  // namespace detail

/// Law of the Hamming distance from the start after t steps.
inline std::vector<double> hamming_marginal(const HammingModel& model, int t) {
  detail::require(t >= 1, ErrorKind::kParameter, "t must be >= 1");
  const int d = model.d();
  std::vector<double> gamma(static_cast<std::size_t>(d + 1));
  for (int L = 0; L <= d; ++L) gamma[static_cast<std::size_t>(L)] = std::pow(model.q - 1.0, L) * std::pow(model.kappa(L), t);
  return detail::hamming_from_gamma(gamma, d, model.q);
}

/// Same for a general grouped chain, with gamma_L = sum_{|l|=L} C(L; l) kappa_l^t.
inline std::vector<double> hamming_marginal(const GroupedChain& chain, int t) {
  detail::require(t >= 1, ErrorKind::kParameter, "t must be >= 1");
  const int d = chain.d();
  std::vector<Complex> gamma(static_cast<std::size_t>(d + 1), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < chain.indices().size(); ++i) {
    const auto& l = chain.indices()[i];
    gamma[static_cast<std::size_t>(l.order())] += to_double(multinomial(l.values())) * std::pow(chain.kappa()[i], t);
  }
  std::vector<double> g(gamma.size());
  for (std::size_t L = 0; L < gamma.size(); ++L) {
    detail::require(std::abs(gamma[L].imag()) <= 1e-8 * std::max(1.0, std::abs(gamma[L].real())),
                    ErrorKind::kNumericalInconsistency, "Hamming coefficients are not real");
    g[L] = gamma[L].real();
  }
  return detail::hamming_from_gamma(g, d, chain.q());
}

namespace detail {

/// Per-vector probabilities of an enumerable law.
inline std::map<std::vector<int>, double> enumerable_pmf(const IncrementDist& incr) {
  std::map<std::vector<int>, double> pmf;
  if (const auto* ex = std::get_if<ExplicitLaw>(&incr.law())) {
    for (std::size_t i = 0; i < ex->points.size(); ++i) pmf[ex->points[i]] += ex->probs[i];
    return pmf;
  }
  try {
    const auto explicit_form = to_explicit(incr);
    const auto& ex2 = std::get<ExplicitLaw>(explicit_form.law());
    for (std::size_t i = 0; i < ex2.points.size(); ++i) pmf[ex2.points[i]] += ex2.probs[i];
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kSize) throw;
    fail(ErrorKind::kUnsupported, "increment support is too large to enumerate");
  }
  return pmf;
}

}  // namespace detail

/// True iff, given which coordinates change, the nonzero values are uniform.
inline bool is_hamming_markovian(const IncrementDist& incr) {
  const int q = incr.q();
  if (const auto* ex = std::get_if<ExchangeableLaw>(&incr.law())) {
    // a specific vector with counts c has probability p_c / multinomial(c)
    std::map<CountVector, double> p;
    for (std::size_t i = 0; i < ex->counts.size(); ++i) p[ex->counts[i]] += ex->probs[i];
    for (int h = 0; h <= ex->d; ++h) {
      std::vector<std::vector<int>> comps;
      append_compositions(h, q - 1, comps);
      double ref = -1.0;
      for (const auto& c : comps) {
        std::vector<int> full{ex->d - h};
        full.insert(full.end(), c.begin(), c.end());
        const CountVector cv(full);
        auto it = p.find(cv);
        const double per = it == p.end() ? 0.0 : it->second / to_double(multinomial_coeff(cv));
        if (ref < 0.0) ref = per;
        else if (std::abs(per - ref) > 1e-12) return false;
      }
    }
    return true;
  }
  // group support by zero pattern; each pattern must carry all (q-1)^h value
  // vectors with equal mass
  std::map<std::vector<bool>, std::pair<double, std::vector<double>>> patterns;
  for (const auto& [v, p] : detail::enumerable_pmf(incr)) {
    if (p == 0.0) continue;
    std::vector<bool> pat(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) pat[k] = v[k] != 0;
    patterns[pat].second.push_back(p);
  }
  for (const auto& [pat, entry] : patterns) {
    const int h = static_cast<int>(std::count(pat.begin(), pat.end(), true));
    const BigInt need = pow_int(q - 1, h);
    if (BigInt(entry.second.size()) != need) return false;
    for (double p : entry.second) {
      if (std::abs(p - entry.second.front()) > 1e-12) return false;
    }
  }
  return true;
}

/// Spread the mass of each zero pattern uniformly over its nonzero values.
inline IncrementDist uniformize_nonzero(const IncrementDist& incr) {
  const int q = incr.q();
  const int d = incr.d();
  if (const auto* ex = std::get_if<ExchangeableLaw>(&incr.law())) {
    std::vector<double> qh(static_cast<std::size_t>(d + 1), 0.0);
    for (std::size_t i = 0; i < ex->counts.size(); ++i) qh[static_cast<std::size_t>(d - ex->counts[i][0])] += ex->probs[i];
    const double s = std::accumulate(qh.begin(), qh.end(), 0.0);
    for (double& x : qh) x /= s;
    return HammingModel(q, qh).increment();
  }
  std::map<std::vector<bool>, double> mass;
  for (const auto& [v, p] : detail::enumerable_pmf(incr)) {
    if (p == 0.0) continue;
    std::vector<bool> pat(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) pat[k] = v[k] != 0;
    mass[pat] += p;
  }
  std::vector<std::vector<int>> pts;
  std::vector<double> probs;
  for (const auto& [pat, w] : mass) {
    std::vector<std::size_t> nz;
    for (std::size_t k = 0; k < pat.size(); ++k) {
      if (pat[k]) nz.push_back(k);
    }
    const double each = w / to_double(pow_int(q - 1, static_cast<int>(nz.size())));
    std::vector<int> v(static_cast<std::size_t>(d), 0);
    for (std::size_t k : nz) v[k] = 1;
    while (true) {
      pts.push_back(v);
      probs.push_back(each);
      // odometer over nonzero values
      std::size_t i = 0;
      for (; i < nz.size(); ++i) {
        if (++v[nz[i]] < q) break;
        v[nz[i]] = 1;
      }
      if (i == nz.size()) break;
    }
  }
  const double s = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (double& p : probs) p /= s;
  return IncrementDist::explicit_law(q, d, std::move(pts), std::move(probs));
}

}  // namespace zqwalk

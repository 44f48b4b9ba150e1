#pragma once

// The d-dimensional walk X_{t+1} = X_t + V_t (mod q) on Z_q^d.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "zqwalk/circulant.hpp"
#include "zqwalk/core.hpp"

namespace zqwalk {

/// Largest q^d for which full tables over Z_q^d are built.
inline constexpr std::uint64_t kMaxStates = 1u << 20;

/// q^d, or a size error when it exceeds `limit`.
inline std::size_t checked_state_count(int q, int d, std::uint64_t limit = kMaxStates) {
  check_modulus(q);
  detail::require(d >= 1, ErrorKind::kParameter, "dimension d must be >= 1");
  std::uint64_t n = 1;
  for (int k = 0; k < d; ++k) {
    n *= static_cast<std::uint64_t>(q);
    detail::require(n <= limit, ErrorKind::kSize,
                    "state space q^d = " + std::to_string(q) + "^" + std::to_string(d) +
                        " too large for full tables; use simulation or grouped mode");
  }
  return static_cast<std::size_t>(n);
}

class StatePoint {
 public:
  StatePoint() = default;

  StatePoint(std::vector<int> x, int q) : x_(std::move(x)), q_(q) {
    check_modulus(q);
    for (int v : x_) {
      if (v < 0 || v >= q) {
        detail::fail(ErrorKind::kValidation, "state entry " + std::to_string(v) + " outside [0," + std::to_string(q) + ")");
      }
    }
  }

  static StatePoint zero(int d, int q) { return StatePoint(std::vector<int>(static_cast<std::size_t>(d), 0), q); }

  /// Inverse of linear_index().
  static StatePoint from_index(std::size_t index, int q, int d) {
    std::vector<int> x(static_cast<std::size_t>(d));
    for (int k = d - 1; k >= 0; --k) {
      x[static_cast<std::size_t>(k)] = static_cast<int>(index % static_cast<std::size_t>(q));
      index /= static_cast<std::size_t>(q);
    }
    return StatePoint(std::move(x), q);
  }

  int q() const noexcept { return q_; }
  int d() const noexcept { return static_cast<int>(x_.size()); }
  int operator[](std::size_t k) const { return x_[k]; }
  const std::vector<int>& values() const noexcept { return x_; }

  /// Lexicographic rank, first coordinate most significant.
  std::size_t linear_index() const {
    std::size_t i = 0;
    for (int v : x_) i = i * static_cast<std::size_t>(q_) + static_cast<std::size_t>(v);
    return i;
  }

  friend bool operator==(const StatePoint&, const StatePoint&) = default;

 private:
  std::vector<int> x_;
  int q_ = 2;
};

inline void check_same_shape(const StatePoint& x, const StatePoint& y) {
  detail::require(x.q() == y.q() && x.d() == y.d(), ErrorKind::kShape, "states have different q or d");
}

/// (y - x) mod q componentwise.
inline StatePoint difference(const StatePoint& x, const StatePoint& y) {
  check_same_shape(x, y);
  std::vector<int> v(static_cast<std::size_t>(x.d()));
  for (int k = 0; k < x.d(); ++k) v[static_cast<std::size_t>(k)] = mod(y[k] - x[k], x.q());
  return StatePoint(std::move(v), x.q());
}

/// Counts of each value in a vector over Z_q.
inline CountVector counts_of(const std::vector<int>& v, int q) {
  std::vector<int> c(static_cast<std::size_t>(q), 0);
  for (int x : v) ++c[static_cast<std::size_t>(mod(x, q))];
  return CountVector(std::move(c));
}

/// n_{x-y}[k] = #{j : (y[j] - x[j]) mod q = k}.
inline CountVector counts_of_difference(const StatePoint& x, const StatePoint& y) {
  return counts_of(difference(x, y).values(), x.q());
}

inline int hamming_distance(const StatePoint& x, const StatePoint& y) {
  check_same_shape(x, y);
  int n = 0;
  for (int k = 0; k < x.d(); ++k) n += x[k] != y[k];
  return n;
}

// ---------------------------------------------------------------------------
// Increment distributions

class IncrementDist;

struct ExplicitLaw {
  int q = 2;
  int d = 1;
  std::vector<std::vector<int>> points;
  std::vector<double> probs;
};

struct IIDProductLaw {
  std::vector<IncrementLaw1D> marginals;
};

/// A law over count vectors; values are assigned to coordinates uniformly at random.
struct ExchangeableLaw {
  int q = 2;
  int d = 1;
  std::vector<CountVector> counts;
  std::vector<double> probs;
};

struct MixtureLaw {
  std::vector<double> weights;
  std::vector<IncrementDist> components;
};

namespace detail {

inline void check_probabilities(const std::vector<double>& p, const char* what) {
  double s = 0.0;
  for (double x : p) {
    require(std::isfinite(x) && x >= 0.0, ErrorKind::kValidation, std::string(what) + " must be >= 0");
    s += x;
  }
  require(std::abs(s - 1.0) <= 1e-12, ErrorKind::kValidation,
          std::string(what) + " sum to " + std::to_string(s) + ", not 1");
}

}  // namespace detail

class IncrementDist {
 public:
  using Variant = std::variant<ExplicitLaw, IIDProductLaw, ExchangeableLaw, MixtureLaw>;

  static IncrementDist explicit_law(int q, int d, std::vector<std::vector<int>> points, std::vector<double> probs) {
    check_modulus(q);
    detail::require(d >= 1, ErrorKind::kParameter, "dimension d must be >= 1");
    detail::require(points.size() == probs.size() && !points.empty(), ErrorKind::kShape,
                    "explicit law needs one probability per support point");
    detail::check_probabilities(probs, "explicit probabilities");
    std::set<std::vector<int>> seen;
    for (const auto& p : points) {
      detail::require(static_cast<int>(p.size()) == d, ErrorKind::kShape, "support point has wrong dimension");
      StatePoint check(p, q);
      detail::require(seen.insert(p).second, ErrorKind::kValidation, "duplicate support point");
    }
    return IncrementDist(ExplicitLaw{q, d, std::move(points), std::move(probs)});
  }

  static IncrementDist iid(std::vector<IncrementLaw1D> marginals) {
    detail::require(!marginals.empty(), ErrorKind::kParameter, "iid product needs d >= 1 marginals");
    for (const auto& m : marginals) {
      detail::require(m.q() == marginals.front().q(), ErrorKind::kShape, "marginals have different q");
    }
    return IncrementDist(IIDProductLaw{std::move(marginals)});
  }

  static IncrementDist iid(const IncrementLaw1D& marginal, int d) {
    detail::require(d >= 1, ErrorKind::kParameter, "dimension d must be >= 1");
    return iid(std::vector<IncrementLaw1D>(static_cast<std::size_t>(d), marginal));
  }

  static IncrementDist exchangeable(std::vector<CountVector> counts, std::vector<double> probs) {
    detail::require(counts.size() == probs.size() && !counts.empty(), ErrorKind::kShape,
                    "exchangeable law needs one probability per count vector");
    detail::check_probabilities(probs, "count-vector probabilities");
    const int q = counts.front().q();
    const int d = counts.front().d();
    detail::require(d >= 1, ErrorKind::kParameter, "dimension d must be >= 1");
    std::set<CountVector> seen;
    for (const auto& c : counts) {
      detail::require(c.q() == q && c.d() == d, ErrorKind::kShape, "count vectors have different q or d");
      detail::require(seen.insert(c).second, ErrorKind::kValidation, "duplicate count vector");
    }
    return IncrementDist(ExchangeableLaw{q, d, std::move(counts), std::move(probs)});
  }

  static IncrementDist mixture(std::vector<double> weights, std::vector<IncrementDist> components) {
    detail::require(weights.size() == components.size() && !weights.empty(), ErrorKind::kShape,
                    "mixture needs one weight per component");
    detail::check_probabilities(weights, "mixture weights");
    for (const auto& c : components) {
      detail::require(c.q() == components.front().q() && c.d() == components.front().d(), ErrorKind::kShape,
                      "mixture components have different q or d");
    }
    return IncrementDist(MixtureLaw{std::move(weights), std::move(components)});
  }

  int q() const {
    return std::visit(
        [](const auto& law) -> int {
          using T = std::decay_t<decltype(law)>;
          if constexpr (std::is_same_v<T, IIDProductLaw>) return law.marginals.front().q();
          else if constexpr (std::is_same_v<T, MixtureLaw>) return law.components.front().q();
          else return law.q;
        },
        law_);
  }

  int d() const {
    return std::visit(
        [](const auto& law) -> int {
          using T = std::decay_t<decltype(law)>;
          if constexpr (std::is_same_v<T, IIDProductLaw>) return static_cast<int>(law.marginals.size());
          else if constexpr (std::is_same_v<T, MixtureLaw>) return law.components.front().d();
          else return law.d;
        },
        law_);
  }

  const Variant& law() const noexcept { return law_; }

  /// True when the law is invariant under coordinate permutations.
  bool is_exchangeable() const {
    return std::visit(
        [](const auto& law) -> bool {
          using T = std::decay_t<decltype(law)>;
          if constexpr (std::is_same_v<T, ExchangeableLaw>) return true;
          else if constexpr (std::is_same_v<T, IIDProductLaw>) {
            for (const auto& m : law.marginals) {
              if (m.probs() != law.marginals.front().probs()) return false;
            }
            return true;
          } else if constexpr (std::is_same_v<T, MixtureLaw>) {
            for (const auto& c : law.components) {
              if (!c.is_exchangeable()) return false;
            }
            return true;
          } else {
            std::map<std::vector<int>, double> pmf;
            for (std::size_t i = 0; i < law.points.size(); ++i) pmf[law.points[i]] = law.probs[i];
            for (const auto& [p, w] : pmf) {
              std::vector<int> s = p;
              std::sort(s.begin(), s.end());
              do {
                auto it = pmf.find(s);
                const double other = it == pmf.end() ? 0.0 : it->second;
                if (std::abs(other - w) > 1e-12) return false;
              } while (std::next_permutation(s.begin(), s.end()));
            }
            return true;
          }
        },
        law_);
  }

 private:
  explicit IncrementDist(Variant law) : law_(std::move(law)) {}
  Variant law_;
};

// ---------------------------------------------------------------------------
// Eigenvalues rho_r = E[theta_1^{V.r}]

namespace detail {

/// E[theta_1^{V.r}] for one count vector c, where r has rcounts[a]
/// coordinates equal to a. Coordinates of r are grouped by value and each
/// group draws its V-values from the remaining pool without replacement.
inline Complex rho_fixed_counts(const CountVector& c, const std::vector<int>& rcounts, const RootTable& roots) {
  const int q = c.q();
  std::map<std::vector<int>, Complex> states{{c.counts(), Complex{1.0, 0.0}}};
  for (int a = 1; a < q; ++a) {
    const int R = rcounts[static_cast<std::size_t>(a)];
    if (R == 0) continue;
    std::map<std::vector<int>, Complex> next;
    std::vector<int> draw(static_cast<std::size_t>(q), 0);
    for (const auto& [rem, w] : states) {
      const int pool = std::accumulate(rem.begin(), rem.end(), 0);
      const double total = binomial_double(pool, R);
      auto rec = [&](auto&& self, int j, int left, double ways, long long phase) -> void {
        if (j == q - 1) {
          if (left > rem[static_cast<std::size_t>(j)]) return;
          draw[static_cast<std::size_t>(j)] = left;
          ways *= binomial_double(rem[static_cast<std::size_t>(j)], left);
          phase += static_cast<long long>(j) * left;
          std::vector<int> r2 = rem;
          for (int i = 0; i < q; ++i) r2[static_cast<std::size_t>(i)] -= draw[static_cast<std::size_t>(i)];
          next[r2] += w * (ways / total) * roots(static_cast<long long>(a) * phase);
          return;
        }
        const int top = std::min(left, rem[static_cast<std::size_t>(j)]);
        for (int n = 0; n <= top; ++n) {
          draw[static_cast<std::size_t>(j)] = n;
          self(self, j + 1, left - n, ways * binomial_double(rem[static_cast<std::size_t>(j)], n),
               phase + static_cast<long long>(j) * n);
        }
      };
      rec(rec, 0, R, 1.0, 0);
    }
    states = std::move(next);
  }
  Complex s{0.0, 0.0};
  for (const auto& [rem, w] : states) s += w;
  return s;
}

}  // namespace detail

/// rho for an exchangeable law, as a function of the value counts of r.
inline Complex rho_exchangeable(const ExchangeableLaw& law, const CountVector& rcounts) {
  detail::require(rcounts.q() == law.q && rcounts.d() == law.d, ErrorKind::kShape, "index counts have wrong shape");
  const RootTable roots(law.q);
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < law.counts.size(); ++i) {
    s += law.probs[i] * detail::rho_fixed_counts(law.counts[i], rcounts.counts(), roots);
  }
  return s;
}

inline Complex rho(const IncrementDist& incr, const std::vector<int>& r) {
  const int q = incr.q();
  detail::require(static_cast<int>(r.size()) == incr.d(), ErrorKind::kShape, "index r has wrong dimension");
  StatePoint check(r, q);
  const RootTable roots(q);
  return std::visit(
      [&](const auto& law) -> Complex {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, ExplicitLaw>) {
          Complex s{0.0, 0.0};
          for (std::size_t i = 0; i < law.points.size(); ++i) {
            long long dot = 0;
            for (std::size_t k = 0; k < r.size(); ++k) dot += static_cast<long long>(law.points[i][k]) * r[k];
            s += law.probs[i] * roots(dot);
          }
          return s;
        } else if constexpr (std::is_same_v<T, IIDProductLaw>) {
          Complex s{1.0, 0.0};
          for (std::size_t k = 0; k < r.size(); ++k) {
            Complex e{0.0, 0.0};
            for (int j = 0; j < q; ++j) e += law.marginals[k][static_cast<std::size_t>(j)] * roots.theta(r[k], j);
            s *= e;
          }
          return s;
        } else if constexpr (std::is_same_v<T, ExchangeableLaw>) {
          return rho_exchangeable(law, counts_of(r, q));
        } else {
          Complex s{0.0, 0.0};
          for (std::size_t i = 0; i < law.components.size(); ++i) s += law.weights[i] * rho(law.components[i], r);
          return s;
        }
      },
      incr.law());
}

/// Direct probability P(V = delta).
inline double increment_pmf(const IncrementDist& incr, const std::vector<int>& delta) {
  const int q = incr.q();
  detail::require(static_cast<int>(delta.size()) == incr.d(), ErrorKind::kShape, "increment has wrong dimension");
  return std::visit(
      [&](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, ExplicitLaw>) {
          for (std::size_t i = 0; i < law.points.size(); ++i) {
            if (law.points[i] == delta) return law.probs[i];
          }
          return 0.0;
        } else if constexpr (std::is_same_v<T, IIDProductLaw>) {
          double p = 1.0;
          for (std::size_t k = 0; k < delta.size(); ++k) p *= law.marginals[k][static_cast<std::size_t>(mod(delta[k], q))];
          return p;
        } else if constexpr (std::is_same_v<T, ExchangeableLaw>) {
          const CountVector c = counts_of(delta, q);
          for (std::size_t i = 0; i < law.counts.size(); ++i) {
            if (law.counts[i] == c) return law.probs[i] / to_double(multinomial_coeff(c));
          }
          return 0.0;
        } else {
          double p = 0.0;
          for (std::size_t i = 0; i < law.components.size(); ++i) {
            p += law.weights[i] * increment_pmf(law.components[i], delta);
          }
          return p;
        }
      },
      incr.law());
}

/// The same law as an Explicit support list (zero-probability points dropped).
inline IncrementDist to_explicit(const IncrementDist& incr) {
  const int q = incr.q();
  const int d = incr.d();
  const std::size_t n = checked_state_count(q, d);
  std::vector<std::vector<int>> pts;
  std::vector<double> probs;
  for (std::size_t i = 0; i < n; ++i) {
    auto x = StatePoint::from_index(i, q, d).values();
    const double p = increment_pmf(incr, x);
    if (p > 0.0) {
      pts.push_back(std::move(x));
      probs.push_back(p);
    }
  }
  const double s = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (double& p : probs) p /= s;
  return IncrementDist::explicit_law(q, d, std::move(pts), std::move(probs));
}

/// The law of the value counts of V, for exchangeable laws.
inline std::map<CountVector, double> count_law(const IncrementDist& incr) {
  const int q = incr.q();
  return std::visit(
      [&](const auto& law) -> std::map<CountVector, double> {
        using T = std::decay_t<decltype(law)>;
        std::map<CountVector, double> out;
        if constexpr (std::is_same_v<T, ExchangeableLaw>) {
          for (std::size_t i = 0; i < law.counts.size(); ++i) out[law.counts[i]] += law.probs[i];
        } else if constexpr (std::is_same_v<T, ExplicitLaw>) {
          for (std::size_t i = 0; i < law.points.size(); ++i) out[counts_of(law.points[i], q)] += law.probs[i];
        } else if constexpr (std::is_same_v<T, IIDProductLaw>) {
          for (const auto& c : enumerate_count_vectors(incr.d(), q)) {
            // any representative with these counts has the same probability
            std::vector<int> rep;
            for (int j = 0; j < q; ++j) rep.insert(rep.end(), static_cast<std::size_t>(c[j]), j);
            const double p = increment_pmf(incr, rep);
            if (p > 0.0) out[c] = p * to_double(multinomial_coeff(c));
          }
        } else {
          for (std::size_t i = 0; i < law.components.size(); ++i) {
            for (const auto& [c, p] : count_law(law.components[i])) out[c] += law.weights[i] * p;
          }
        }
        return out;
      },
      incr.law());
}

inline IncrementDist to_exchangeable_counts(const IncrementDist& incr) {
  detail::require(incr.is_exchangeable(), ErrorKind::kPrecondition, "increment law is not exchangeable");
  std::vector<CountVector> counts;
  std::vector<double> probs;
  for (const auto& [c, p] : count_law(incr)) {
    counts.push_back(c);
    probs.push_back(p);
  }
  const double s = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (double& p : probs) p /= s;
  return IncrementDist::exchangeable(std::move(counts), std::move(probs));
}

// ---------------------------------------------------------------------------
// Spectral tables

/// rho_r for every r in Z_q^d, indexed by StatePoint::linear_index.
class ProductSpectrum {
 public:
  explicit ProductSpectrum(const IncrementDist& incr) : q_(incr.q()), d_(incr.d()) {
    const std::size_t n = checked_state_count(q_, d_);
    rho_.resize(n);
    const auto* ex = std::get_if<ExchangeableLaw>(&incr.law());
    std::map<CountVector, Complex> cache;
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = StatePoint::from_index(i, q_, d_).values();
      if (ex) {
        const CountVector c = counts_of(r, q_);
        auto it = cache.find(c);
        if (it == cache.end()) it = cache.emplace(c, rho_exchangeable(*ex, c)).first;
        rho_[i] = it->second;
      } else {
        rho_[i] = rho(incr, r);
      }
    }
    rho_[0] = 1.0;
  }

  /// Wrap an arbitrary eigenvalue table (for example a perturbed one).
  static ProductSpectrum from_table(int q, int d, std::vector<Complex> table) {
    detail::require(table.size() == checked_state_count(q, d), ErrorKind::kShape, "eigenvalue table has wrong size");
    return ProductSpectrum(q, d, std::move(table));
  }

  int q() const noexcept { return q_; }
  int d() const noexcept { return d_; }
  std::size_t size() const noexcept { return rho_.size(); }
  const std::vector<Complex>& table() const noexcept { return rho_; }
  const Complex& operator[](std::size_t i) const { return rho_[i]; }

  /// K_t(delta) = q^{-d} sum_r rho_r^t theta_1^{-delta.r}, the probability of a
  /// t-step displacement delta. Unclamped; a table that is not a valid
  /// spectrum shows up as negative entries.
  std::vector<double> kernel(int t = 1) const {
    detail::require(t >= 0, ErrorKind::kParameter, "t must be >= 0");
    std::vector<Complex> a(rho_.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::pow(rho_[i], t);
    const RootTable roots(q_);
    // separable inverse DFT, one axis at a time
    std::size_t stride = 1;
    std::vector<Complex> line(static_cast<std::size_t>(q_));
    for (int axis = d_ - 1; axis >= 0; --axis) {
      const std::size_t block = stride * static_cast<std::size_t>(q_);
      for (std::size_t base = 0; base < a.size(); base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
          for (int dl = 0; dl < q_; ++dl) {
            Complex s{0.0, 0.0};
            for (int r = 0; r < q_; ++r) {
              s += a[base + off + static_cast<std::size_t>(r) * stride] * roots(-static_cast<long long>(dl) * r);
            }
            line[static_cast<std::size_t>(dl)] = s / static_cast<double>(q_);
          }
          for (int dl = 0; dl < q_; ++dl) a[base + off + static_cast<std::size_t>(dl) * stride] = line[static_cast<std::size_t>(dl)];
        }
      }
      stride = block;
    }
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      detail::require(std::abs(a[i].imag()) <= 1e-8, ErrorKind::kNumericalInconsistency,
                      "eigenvalue table is not conjugate-symmetric");
      out[i] = a[i].real();
    }
    return out;
  }

  /// t-step transition probability P^t(x, y).
  double transition(const StatePoint& x, const StatePoint& y, int t = 1) const {
    check_same_shape(x, y);
    detail::require(x.q() == q_ && x.d() == d_, ErrorKind::kShape, "state shape does not match spectrum");
    const RootTable roots(q_);
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < rho_.size(); ++i) {
      const auto r = StatePoint::from_index(i, q_, d_);
      long long dot = 0;
      for (int k = 0; k < d_; ++k) dot += static_cast<long long>(x[k] - y[k]) * r[k];
      s += std::pow(rho_[i], t) * roots(dot);
    }
    s /= static_cast<double>(rho_.size());
    detail::require(std::abs(s.imag()) <= 1e-8, ErrorKind::kNumericalInconsistency,
                    "eigenvalue table is not conjugate-symmetric");
    return s.real();
  }

 private:
  ProductSpectrum(int q, int d, std::vector<Complex> table) : q_(q), d_(d), rho_(std::move(table)) {}

  int q_;
  int d_;
  std::vector<Complex> rho_;
};

/// P°_xy = q^{-d} sum_r rho_r theta_1^{(x-y).r}.
inline double transition_prob(const IncrementDist& incr, const StatePoint& x, const StatePoint& y) {
  check_same_shape(x, y);
  detail::require(x.q() == incr.q() && x.d() == incr.d(), ErrorKind::kShape, "state shape does not match law");
  return ProductSpectrum(incr).transition(x, y, 1);
}

/// Dense matrix P[x][y] = kernel[y - x], for small state spaces.
inline Eigen::MatrixXd kernel_to_matrix(const std::vector<double>& kernel, int q, int d) {
  const std::size_t n = checked_state_count(q, d, 1u << 12);
  detail::require(kernel.size() == n, ErrorKind::kShape, "kernel has wrong size");
  Eigen::MatrixXd P(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = StatePoint::from_index(i, q, d);
    for (std::size_t j = 0; j < n; ++j) {
      P(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          kernel[difference(x, StatePoint::from_index(j, q, d)).linear_index()];
    }
  }
  return P;
}

// ---------------------------------------------------------------------------
// Sampling

class IncrementSampler {
 public:
  explicit IncrementSampler(const IncrementDist& incr) : q_(incr.q()), d_(incr.d()) {
    std::visit(
        [&](const auto& law) {
          using T = std::decay_t<decltype(law)>;
          if constexpr (std::is_same_v<T, ExplicitLaw>) {
            kind_ = Kind::kExplicit;
            points_ = law.points;
            pick_ = std::discrete_distribution<std::size_t>(law.probs.begin(), law.probs.end());
          } else if constexpr (std::is_same_v<T, IIDProductLaw>) {
            kind_ = Kind::kIID;
            for (const auto& m : law.marginals) coords_.emplace_back(m.probs().begin(), m.probs().end());
          } else if constexpr (std::is_same_v<T, ExchangeableLaw>) {
            kind_ = Kind::kExchangeable;
            for (const auto& c : law.counts) {
              std::vector<int> rep;
              for (int j = 0; j < q_; ++j) rep.insert(rep.end(), static_cast<std::size_t>(c[j]), j);
              points_.push_back(std::move(rep));
            }
            pick_ = std::discrete_distribution<std::size_t>(law.probs.begin(), law.probs.end());
          } else {
            kind_ = Kind::kMixture;
            for (const auto& c : law.components) parts_.push_back(std::make_shared<IncrementSampler>(c));
            pick_ = std::discrete_distribution<std::size_t>(law.weights.begin(), law.weights.end());
          }
        },
        incr.law());
  }

  int q() const noexcept { return q_; }
  int d() const noexcept { return d_; }

  std::vector<int> operator()(std::mt19937_64& rng) {
    switch (kind_) {
      case Kind::kExplicit:
        return points_[pick_(rng)];
      case Kind::kIID: {
        std::vector<int> v(static_cast<std::size_t>(d_));
        for (int k = 0; k < d_; ++k) v[static_cast<std::size_t>(k)] = static_cast<int>(coords_[static_cast<std::size_t>(k)](rng));
        return v;
      }
      case Kind::kExchangeable: {
        std::vector<int> v = points_[pick_(rng)];
        std::shuffle(v.begin(), v.end(), rng);
        return v;
      }
      case Kind::kMixture:
        return (*parts_[pick_(rng)])(rng);
    }
    return {};
  }

 private:
  enum class Kind { kExplicit, kIID, kExchangeable, kMixture };
  int q_;
  int d_;
  Kind kind_ = Kind::kExplicit;
  std::vector<std::vector<int>> points_;
  std::discrete_distribution<std::size_t> pick_;
  std::vector<std::discrete_distribution<int>> coords_;
  std::vector<std::shared_ptr<IncrementSampler>> parts_;
};

inline StatePoint add(const StatePoint& x, const std::vector<int>& v) {
  detail::require(static_cast<int>(v.size()) == x.d(), ErrorKind::kShape, "increment has wrong dimension");
  std::vector<int> y(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) y[k] = mod(x[k] + v[k], x.q());
  return StatePoint(std::move(y), x.q());
}

/// x + Z (mod q) with Z drawn from incr; deterministic given the seed.
inline StatePoint step_sample(const StatePoint& x, const IncrementDist& incr, std::uint64_t seed) {
  detail::require(x.q() == incr.q() && x.d() == incr.d(), ErrorKind::kShape, "state shape does not match law");
  std::mt19937_64 rng(seed);
  IncrementSampler sampler(incr);
  return add(x, sampler(rng));
}

}  // namespace zqwalk

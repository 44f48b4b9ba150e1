#pragma once

// One-dimensional circulant walks on Z_q.

#include <Eigen/Dense>

#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "zqwalk/core.hpp"

namespace zqwalk {

/// Law of a single increment V on Z_q; v[j] = P(V = j).
class IncrementLaw1D {
 public:
  IncrementLaw1D() = default;

  explicit IncrementLaw1D(std::vector<double> v) : v_(std::move(v)) {
    check_modulus(static_cast<int>(v_.size()));
    double s = 0.0;
    for (double p : v_) {
      detail::require(std::isfinite(p) && p >= 0.0, ErrorKind::kValidation, "increment probabilities must be >= 0");
      s += p;
    }
    detail::require(std::abs(s - 1.0) <= 1e-12, ErrorKind::kValidation,
                    "increment probabilities sum to " + std::to_string(s) + ", not 1");
  }

  int q() const noexcept { return static_cast<int>(v_.size()); }
  double operator[](std::size_t j) const { return v_[j]; }
  const std::vector<double>& probs() const noexcept { return v_; }

  static IncrementLaw1D point_mass(int q, int j) {
    check_modulus(q);
    std::vector<double> v(static_cast<std::size_t>(q), 0.0);
    v[static_cast<std::size_t>(mod(j, q))] = 1.0;
    return IncrementLaw1D(std::move(v));
  }

  static IncrementLaw1D uniform(int q) {
    check_modulus(q);
    return IncrementLaw1D(std::vector<double>(static_cast<std::size_t>(q), 1.0 / q));
  }

  /// Stay with probability 1-gamma, otherwise step +-1 with equal probability.
  static IncrementLaw1D lazy(int q, double gamma) {
    check_modulus(q);
    detail::require(gamma >= 0.0 && gamma <= 1.0, ErrorKind::kParameter, "lazy walk needs 0 <= gamma <= 1");
    std::vector<double> v(static_cast<std::size_t>(q), 0.0);
    v[0] = 1.0 - gamma;
    v[1] += gamma / 2;
    v[static_cast<std::size_t>(q - 1)] += gamma / 2;
    return IncrementLaw1D(std::move(v));
  }

  bool is_symmetric(double tol = 1e-12) const {
    const int q = this->q();
    for (int j = 1; j < q; ++j) {
      if (std::abs(v_[j] - v_[q - j]) > tol) return false;
    }
    return true;
  }

 private:
  std::vector<double> v_;
};

/// eta[r] = E[theta_r^V].
struct EigenTable1D {
  std::vector<Complex> eta;
  int q() const noexcept { return static_cast<int>(eta.size()); }
};

inline Eigen::MatrixXd build_circulant(const IncrementLaw1D& v) {
  const int q = v.q();
  Eigen::MatrixXd P(q, q);
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) P(a, b) = v[static_cast<std::size_t>(mod(b - a, q))];
  }
  return P;
}

inline EigenTable1D eigenvalues_1d(const IncrementLaw1D& v) {
  const int q = v.q();
  const RootTable roots(q);
  EigenTable1D out;
  out.eta.resize(static_cast<std::size_t>(q));
  for (int r = 0; r < q; ++r) {
    Complex s{0.0, 0.0};
    for (int l = 0; l < q; ++l) s += v[static_cast<std::size_t>(l)] * roots.theta(r, l);
    out.eta[static_cast<std::size_t>(r)] = s;
  }
  out.eta[0] = 1.0;
  return out;
}

/// P_ab from the eigenvalues, (1/q) sum_r eta_r theta_r^a conj(theta_r^b).
inline double spectral_transition_1d(const EigenTable1D& eta, int a, int b) {
  const int q = eta.q();
  check_modulus(q);
  const RootTable roots(q);
  Complex s{0.0, 0.0};
  for (int r = 0; r < q; ++r) s += eta.eta[static_cast<std::size_t>(r)] * roots(static_cast<long long>(r) * (a - b));
  s /= static_cast<double>(q);
  detail::require(std::abs(s.imag()) <= 1e-8, ErrorKind::kNumericalInconsistency,
                  "eigenvalue table is not conjugate-symmetric (imaginary residue " + std::to_string(s.imag()) + ")");
  return std::clamp(s.real(), 0.0, 1.0);
}

inline IncrementLaw1D recover_increment(const EigenTable1D& eta) {
  const int q = eta.q();
  check_modulus(q);
  detail::require(std::abs(eta.eta[0] - 1.0) <= 1e-8, ErrorKind::kInvalidEigenvalue, "eta_0 must equal 1");
  const RootTable roots(q);
  std::vector<double> v(static_cast<std::size_t>(q));
  double total = 0.0;
  for (int j = 0; j < q; ++j) {
    Complex s{0.0, 0.0};
    for (int r = 0; r < q; ++r) s += eta.eta[static_cast<std::size_t>(r)] * std::conj(roots.theta(r, j));
    s /= static_cast<double>(q);
    detail::require(s.real() >= -1e-8 && std::abs(s.imag()) <= 1e-8, ErrorKind::kInvalidEigenvalue,
                    "not the eigenvalue sequence of a circulant walk: recovered v_" + std::to_string(j) + " = " +
                        std::to_string(s.real()));
    v[static_cast<std::size_t>(j)] = std::max(0.0, s.real());
    total += v[static_cast<std::size_t>(j)];
  }
  detail::require(std::abs(total - 1.0) <= 1e-8, ErrorKind::kInvalidEigenvalue, "recovered law does not sum to 1");
  for (double& p : v) p /= total;
  return IncrementLaw1D(std::move(v));
}

/// Sufficient condition for a reversible walk: q an odd prime, or q = 2 with
/// positive holding probability. The trivial walk V = 0 is excluded.
inline bool is_ergodic_sufficient(const IncrementLaw1D& v) {
  detail::require(v.is_symmetric(), ErrorKind::kPrecondition, "sufficient ergodicity check needs a symmetric law");
  if (v[0] >= 1.0) return false;
  const int q = v.q();
  if (q == 2) return v[0] > 0.0;
  return q > 2 && is_prime(q);
}

namespace detail {

inline bool support_is_ergodic(const IncrementLaw1D& v) {
  // P is irreducible and aperiodic iff the differences s - s0 over the
  // support generate Z_q, i.e. gcd(q, s - s0) = 1.
  const int q = v.q();
  int s0 = -1;
  int g = q;
  for (int s = 0; s < q; ++s) {
    if (v[static_cast<std::size_t>(s)] <= 0.0) continue;
    if (s0 < 0) {
      s0 = s;
      continue;
    }
    g = std::gcd(g, s - s0);
  }
  return g == 1;
}

inline bool powers_converge(const IncrementLaw1D& v) {
  const int q = v.q();
  Eigen::MatrixXd P = build_circulant(v);
  const long long cap = 10LL * q * q;
  for (long long steps = 1; steps <= cap; steps *= 2) {
    if ((P.array() - 1.0 / q).abs().maxCoeff() < 1e-8) return true;
    P = P * P;
  }
  return (P.array() - 1.0 / q).abs().maxCoeff() < 1e-8;
}

}  // namespace detail

/// Exact support analysis, cross-checked against convergence of P^t.
inline bool is_ergodic_direct(const IncrementLaw1D& v) {
  const bool exact = detail::support_is_ergodic(v);
  const bool numeric = detail::powers_converge(v);
  // Slow mixing can stop the power check short of the threshold; the
  // converse (convergence of a periodic or reducible walk) is impossible.
  detail::require(exact || !numeric, ErrorKind::kNumericalInconsistency,
                  "matrix powers converge although the support is periodic or reducible");
  return exact;
}

/// Law of (V - V') mod q for independent copies.
inline IncrementLaw1D symmetrize(const IncrementLaw1D& v) {
  const int q = v.q();
  std::vector<double> out(static_cast<std::size_t>(q), 0.0);
  for (int j = 0; j < q; ++j) {
    for (int k = 0; k < q; ++k) out[static_cast<std::size_t>(mod(j - k, q))] += v[j] * v[k];
  }
  const double s = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& p : out) p /= s;
  return IncrementLaw1D(std::move(out));
}

inline std::string law_to_json(const IncrementLaw1D& v) {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (int j = 0; j < v.q(); ++j) os << (j ? "," : "") << v[static_cast<std::size_t>(j)];
  os << ']';
  return os.str();
}

inline void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& P) {
  const auto prec = os.precision(17);
  for (Eigen::Index a = 0; a < P.rows(); ++a) {
    for (Eigen::Index b = 0; b < P.cols(); ++b) os << (b ? "," : "") << P(a, b);
    os << '\n';
  }
  os.precision(prec);
}

}  // namespace zqwalk

#pragma once

// The q -> infinity limit: additive walks B_{t+1} = B_t + V (mod 1) on [0,1).

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "zqwalk/core.hpp"

namespace zqwalk {

struct TorusLaw {
  /// ghat(r) = E[e^{2 pi i r V}].
  std::function<Complex(long long)> ghat;
  /// C with |ghat(r)| <= C / (2 pi r)^2 for r != 0.
  std::optional<double> tail_constant;
  /// Optional sharper certified bound on |ghat(r)| for r >= 1.
  std::function<double(long long)> tail_bound;
  std::function<double(std::mt19937_64&)> sampler;
  std::function<double(double)> cdf;
  /// Density of V on [0,1), when it has one.
  std::function<double(double)> density;

  static TorusLaw uniform();
  static TorusLaw point_mass(double v);
  static TorusLaw von_mises(double k);
};

/// I_r(k) / I_0(k) from the ascending power series.
inline double von_mises_ghat(double k, long long r) {
  detail::require(k >= 0.0, ErrorKind::kParameter, "von Mises concentration must be >= 0");
  detail::require(k <= 50.0, ErrorKind::kRange, "von Mises concentration above 50 is outside the series range");
  r = r < 0 ? -r : r;
  if (k == 0.0) return r == 0 ? 1.0 : 0.0;
  const double half = k / 2.0;
  auto bessel = [&](long long n) {
    double term = std::exp(static_cast<double>(n) * std::log(half) - std::lgamma(static_cast<double>(n) + 1.0));
    double sum = term;
    for (long long s = 0; term >= 1e-17 * sum; ++s) {
      term *= half * half / (static_cast<double>(s + 1) * static_cast<double>(s + 1 + n));
      sum += term;
    }
    return sum;
  };
  return bessel(r) / bessel(0);
}

inline TorusLaw TorusLaw::uniform() {
  TorusLaw law;
  law.ghat = [](long long r) { return Complex{r == 0 ? 1.0 : 0.0, 0.0}; };
  law.tail_constant = 0.0;
  law.sampler = [](std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); };
  law.cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
  law.density = [](double) { return 1.0; };
  return law;
}

inline TorusLaw TorusLaw::point_mass(double v) {
  detail::require(v >= 0.0 && v < 1.0, ErrorKind::kParameter, "point mass must lie in [0,1)");
  TorusLaw law;
  law.ghat = [v](long long r) { return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) * v); };
  law.sampler = [v](std::mt19937_64&) { return v; };
  law.cdf = [v](double x) { return x >= v ? 1.0 : 0.0; };
  return law;
}

/// Density e^{k cos(2 pi x)} / I_0(k) on [0,1).
inline TorusLaw TorusLaw::von_mises(double k) {
  von_mises_ghat(k, 0);  // validates k
  TorusLaw law;
  law.ghat = [k](long long r) { return Complex{von_mises_ghat(k, r), 0.0}; };
  double i0 = 1.0;
  {
    double term = 1.0;
    for (int s = 0; term >= 1e-17 * i0; ++s) {
      term *= (k / 2) * (k / 2) / ((s + 1.0) * (s + 1.0));
      i0 += term;
    }
  }
  // |g''| <= (2 pi)^2 (k^2 + k) e^k / I_0(k); two integrations by parts.
  law.tail_constant = 4.0 * std::numbers::pi * std::numbers::pi * (k * k + k) * std::exp(k) / i0;
  // I_r(k) <= (k/2)^r e^{k^2/4} / r!
  law.tail_bound = [k, i0](long long r) {
    return std::exp(static_cast<double>(r) * std::log(k / 2) + k * k / 4 - std::lgamma(static_cast<double>(r) + 1.0)) / i0;
  };
  if (k == 0.0) law.tail_bound = [](long long) { return 0.0; };
  law.density = [k, i0](double x) { return std::exp(k * std::cos(2.0 * std::numbers::pi * x)) / i0; };
  law.sampler = [k](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (k < 1e-8) return u(rng);
    // Best and Fisher rejection sampler for the angle
    const double tau = 1.0 + std::sqrt(1.0 + 4.0 * k * k);
    const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * k);
    const double rr = (1.0 + rho * rho) / (2.0 * rho);
    double f = 0.0;
    while (true) {
      const double u1 = u(rng);
      const double z = std::cos(std::numbers::pi * u1);
      f = (1.0 + rr * z) / (rr + z);
      const double c = k * (rr - f);
      const double u2 = u(rng);
      if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0) break;
    }
    const double angle = (u(rng) < 0.5 ? -1.0 : 1.0) * std::acos(std::clamp(f, -1.0, 1.0));
    double x = angle / (2.0 * std::numbers::pi);
    x -= std::floor(x);
    return x >= 1.0 ? 0.0 : x;
  };
  return law;
}

/// (a + V) mod 1 with V drawn from the law.
inline double torus_step(double a, const TorusLaw& law, std::uint64_t seed) {
  detail::require(static_cast<bool>(law.sampler), ErrorKind::kUnsupported, "torus law has no sampler");
  std::mt19937_64 rng(seed);
  double b = a + law.sampler(rng);
  b -= std::floor(b);
  return b >= 1.0 ? 0.0 : b;
}

/// P(B_{t+1} <= b | B_t = a) = P(V <= b-a) + P(1-a < V <= b+1-a).
inline double transition_cdf(double a, double b, const std::function<double(double)>& vcdf) {
  auto F = [&](double x) {
    if (x < 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return vcdf(x);
  };
  return F(b - a) + F(b + 1.0 - a) - F(1.0 - a);
}

/// Smallest R with 2 sum_{r>R} |ghat(r)|^t < eps, from the available bounds.
inline long long truncation_radius(const TorusLaw& law, int t, double eps) {
  detail::require(t >= 1, ErrorKind::kParameter, "t must be >= 1");
  detail::require(eps > 0.0, ErrorKind::kParameter, "eps must be > 0");
  detail::require(law.tail_constant.has_value(), ErrorKind::kCannotTruncate,
                  "torus law has no tail constant; the density series cannot be truncated");
  const double C = *law.tail_constant;
  long long radius = 0;
  if (C > 0.0) {
    // sum_{r>R} (C/(2 pi r)^2)^t <= (C/4pi^2)^t R^{1-2t} / (2t-1)
    const double a = std::pow(C / (4.0 * std::numbers::pi * std::numbers::pi), t);
    const double R = std::pow(2.0 * a / ((2.0 * t - 1.0) * eps), 1.0 / (2.0 * t - 1.0));
    detail::require(R < 1e12 || law.tail_bound, ErrorKind::kCannotTruncate, "truncation radius is too large");
    radius = static_cast<long long>(std::min(std::ceil(R), 1e12));
  }
  if (law.tail_bound && radius > 0) {
    // Tabulate the sharper bound until it is negligible and decays with
    // ratio below 1/2; everything past the last term then sums to at most
    // that term.
    std::vector<double> b{0.0};
    for (long long r = 1; r <= radius; ++r) {
      b.push_back(std::pow(law.tail_bound(r), t));
      const double prev = b[b.size() - 2];
      if (b.back() == 0.0 || (r > 8 && b.back() < 1e-6 * eps && b.back() < 0.5 * prev)) break;
    }
    auto R = static_cast<long long>(b.size()) - 1;
    double tail = b.back();
    while (R > 0 && 2.0 * (tail + b[static_cast<std::size_t>(R)]) < eps) {
      tail += b[static_cast<std::size_t>(R)];
      --R;
    }
    radius = std::min(radius, R);
  }
  return radius;
}

/// Fourier coefficients ghat(r)^t for r = 0..R.
inline std::vector<Complex> density_coefficients(const TorusLaw& law, int t, double eps) {
  const long long R = truncation_radius(law, t, eps);
  std::vector<Complex> c(static_cast<std::size_t>(R + 1));
  for (long long r = 0; r <= R; ++r) c[static_cast<std::size_t>(r)] = std::pow(law.ghat(r), t);
  return c;
}

namespace detail {

/// sum_{|r|<=R} c_r e^{2 pi i r x}, using ghat(-r) = conj(ghat(r)) for real V.
inline double fourier_sum(const std::vector<Complex>& c, double x) {
  double s = c[0].real();
  const Complex step = std::polar(1.0, 2.0 * std::numbers::pi * x);
  Complex e = step;
  for (std::size_t r = 1; r < c.size(); ++r) {
    s += 2.0 * (c[r] * e).real();
    e *= step;
    if (r % 64 == 0) e = std::polar(1.0, 2.0 * std::numbers::pi * x * static_cast<double>(r + 1));
  }
  return s;
}

}  // namespace detail

/// f_t(b | a) = sum_r ghat(r)^t e^{2 pi i r (a - b)}, truncated with error < eps.
inline double density_series(const TorusLaw& law, int t, double a, double b, double eps) {
  return detail::fourier_sum(density_coefficients(law, t, eps), a - b);
}

/// f_t(b_i | a) on b_i = i / n, i = 0..n-1.
inline std::vector<double> density_grid(const TorusLaw& law, int t, double a, int n, double eps) {
  detail::require(n >= 1, ErrorKind::kParameter, "grid needs n >= 1 points");
  const auto c = density_coefficients(law, t, eps);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = detail::fourier_sum(c, a - static_cast<double>(i) / n);
  return out;
}

/// Eigenvalue after Poisson(lambda) many steps in time tau.
inline Complex poisson_eigenvalue(double lambda, double tau, long long r, const TorusLaw& law) {
  detail::require(lambda >= 0.0 && tau >= 0.0, ErrorKind::kParameter, "need lambda, tau >= 0");
  return std::exp(lambda * tau * (law.ghat(r) - 1.0));
}

namespace detail {

// Power series for 1F1 in the real type T. Returns nullopt when more than
// `budget` decimal digits cancel.
template <class T>
std::optional<Complex> f11_series(double a, double b, Complex z, double budget) {
  const T zr = z.real();
  const T zi = z.imag();
  T tr = 1, ti = 0, sr = 1, si = 0;
  double largest = 1.0;
  for (int k = 0; k < 10'000; ++k) {
    const T c = (T(a) + k) / (T(b) + k) / (k + 1);
    const T nr = c * (tr * zr - ti * zi);
    ti = c * (tr * zi + ti * zr);
    tr = nr;
    sr += tr;
    si += ti;
    const double mag = std::hypot(static_cast<double>(tr), static_cast<double>(ti));
    const double sum = std::hypot(static_cast<double>(sr), static_cast<double>(si));
    largest = std::max(largest, mag);
    if (mag <= 1e-14 * sum && mag <= 1e-14 * largest) {
      if (std::log10(largest / std::max(sum, 1e-300)) > budget) return std::nullopt;
      return Complex(static_cast<double>(sr), static_cast<double>(si));
    }
  }
  fail(ErrorKind::kRange, "1F1 series did not converge within 10^4 terms");
}

}  // namespace detail

/// 1F1(a; b; z) by its power series. Large |z| cancels badly, so the sum
/// moves to 100-digit arithmetic when double precision would lose more
/// than 6 digits.
inline Complex hypergeometric_1f1(double a, double b, Complex z) {
  if (auto v = detail::f11_series<double>(a, b, z, 6.0)) return *v;
  if (auto v = detail::f11_series<boost::multiprecision::cpp_bin_float_100>(a, b, z, 80.0)) return *v;
  detail::fail(ErrorKind::kRange, "1F1 series lost too many digits to cancellation");
}

/// exp{tau/(1-gamma) (1F1(1-gamma; 1; 2 pi i r) - 1)}.
inline Complex beta_subordinator_eigenvalue(double gamma, double tau, long long r) {
  detail::require(gamma > 0.0 && gamma < 1.0, ErrorKind::kParameter, "need 0 < gamma < 1");
  detail::require(tau >= 0.0, ErrorKind::kParameter, "need tau >= 0");
  if (r == 0 || tau == 0.0) return {1.0, 0.0};
  const Complex f = hypergeometric_1f1(1.0 - gamma, 1.0, Complex{0.0, 2.0 * std::numbers::pi * static_cast<double>(r)});
  return std::exp(tau / (1.0 - gamma) * (f - 1.0));
}

}  // namespace zqwalk

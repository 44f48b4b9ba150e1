#pragma once

// Cyclic-group arithmetic, roots of unity, count vectors, multi-indices and
// exact multinomial coefficients shared by every other module.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "zqwalk/error.hpp"

namespace zqwalk {

using Complex = std::complex<double>;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Largest table the enumerators will materialize.
inline constexpr std::size_t kMaxEnumeration = 100'000'000;

inline void check_modulus(int q) {
  if (q < 2) detail::fail(ErrorKind::kInvalidModulus, "modulus q must be >= 2, got " + std::to_string(q));
}

/// Nonnegative residue of a modulo q.
inline int mod(long long a, int q) {
  long long r = a % q;
  return static_cast<int>(r < 0 ? r + q : r);
}

/// Exponent k(j) with theta_k^j = theta_1^{k(j)}, i.e. kj mod q.
inline int character_exponent(int k, int j, int q) {
  check_modulus(q);
  return mod(static_cast<long long>(k) * j, q);
}

/// e^{2 pi i (k mod q)/q}.
inline Complex root_of_unity(int q, long long k) {
  check_modulus(q);
  const int r = mod(k, q);
  // Reduce to the first octant so quarter and half turns come out exact.
  const long long n8 = 8LL * r;
  if (n8 % q == 0) {
    switch (n8 / q) {
      case 0: return {1.0, 0.0};
      case 2: return {0.0, 1.0};
      case 4: return {-1.0, 0.0};
      case 6: return {0.0, -1.0};
      default: break;
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q);
  return {std::cos(angle), std::sin(angle)};
}

/// Table of the q-th roots of unity, computed once so every eigenvalue table
/// built from it is bit-reproducible.
class RootTable {
 public:
  explicit RootTable(int q) : q_(q) {
    check_modulus(q);
    roots_.reserve(static_cast<std::size_t>(q));
    for (int k = 0; k < q; ++k) roots_.push_back(root_of_unity(q, k));
  }

  int q() const noexcept { return q_; }

  /// theta_1^k = e^{2 pi i k/q} for any integer k.
  const Complex& operator()(long long k) const { return roots_[static_cast<std::size_t>(mod(k, q_))]; }

  /// theta_k^j = theta_1^{kj}.
  const Complex& theta(long long k, long long j) const { return (*this)(mod(k, q_) * mod(j, q_)); }

  const std::vector<Complex>& values() const noexcept { return roots_; }

 private:
  int q_;
  std::vector<Complex> roots_;
};

class CyclicElement {
 public:
  CyclicElement(int value, int q) : value_(value), q_(q) {
    check_modulus(q);
    if (value < 0 || value >= q) {
      detail::fail(ErrorKind::kValidation,
                   "cyclic element " + std::to_string(value) + " outside [0," + std::to_string(q) + ")");
    }
  }

  int value() const noexcept { return value_; }
  int q() const noexcept { return q_; }

  friend CyclicElement operator+(const CyclicElement& a, const CyclicElement& b) {
    detail::require(a.q_ == b.q_, ErrorKind::kShape, "mismatched moduli");
    return {mod(a.value_ + b.value_, a.q_), a.q_};
  }
  friend CyclicElement operator-(const CyclicElement& a, const CyclicElement& b) {
    detail::require(a.q_ == b.q_, ErrorKind::kShape, "mismatched moduli");
    return {mod(a.value_ - b.value_, a.q_), a.q_};
  }
  friend bool operator==(const CyclicElement&, const CyclicElement&) = default;

 private:
  int value_;
  int q_;
};

class MultiIndex;

/// Occupancy counts over the q symbols; sums to d.
class CountVector {
 public:
  CountVector() = default;

  explicit CountVector(std::vector<int> counts) : counts_(std::move(counts)) {
    detail::require(counts_.size() >= 2, ErrorKind::kInvalidModulus, "count vector needs q >= 2 entries");
    for (int c : counts_) detail::require(c >= 0, ErrorKind::kValidation, "negative count");
    total_ = std::accumulate(counts_.begin(), counts_.end(), 0);
  }

  int q() const noexcept { return static_cast<int>(counts_.size()); }
  int d() const noexcept { return total_; }
  int operator[](std::size_t j) const { return counts_[j]; }
  const std::vector<int>& counts() const noexcept { return counts_; }

  /// The all-zero-state counts (d, 0, ..., 0).
  static CountVector origin(int d, int q) {
    check_modulus(q);
    std::vector<int> c(static_cast<std::size_t>(q), 0);
    c[0] = d;
    return CountVector(std::move(c));
  }

  /// m^- = (m[1], ..., m[q-1]) viewed as a multi-index of order d.
  MultiIndex minus() const;

  friend bool operator==(const CountVector&, const CountVector&) = default;
  friend auto operator<=>(const CountVector& a, const CountVector& b) { return a.counts_ <=> b.counts_; }

 private:
  std::vector<int> counts_;
  int total_ = 0;
};

/// Krawtchouk index l = (l_1, ..., l_{q-1}) with |l| <= d.
class MultiIndex {
 public:
  MultiIndex() = default;

  MultiIndex(std::vector<int> l, int d) : l_(std::move(l)), d_(d) {
    detail::require(!l_.empty(), ErrorKind::kInvalidModulus, "multi-index needs q-1 >= 1 entries");
    for (int x : l_) detail::require(x >= 0, ErrorKind::kValidation, "negative multi-index entry");
    order_ = std::accumulate(l_.begin(), l_.end(), 0);
    if (order_ > d_) {
      detail::fail(ErrorKind::kIndex, "multi-index order " + std::to_string(order_) + " exceeds d=" + std::to_string(d_));
    }
  }

  int q() const noexcept { return static_cast<int>(l_.size()) + 1; }
  int d() const noexcept { return d_; }
  /// |l|
  int order() const noexcept { return order_; }
  int operator[](std::size_t k) const { return l_[k]; }
  const std::vector<int>& values() const noexcept { return l_; }

  /// l^+ = (d - |l|, l_1, ..., l_{q-1}).
  CountVector plus() const {
    std::vector<int> c;
    c.reserve(l_.size() + 1);
    c.push_back(d_ - order_);
    c.insert(c.end(), l_.begin(), l_.end());
    return CountVector(std::move(c));
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> l_;
  int d_ = 0;
  int order_ = 0;
};

inline MultiIndex CountVector::minus() const {
  return MultiIndex(std::vector<int>(counts_.begin() + 1, counts_.end()), total_);
}

// ---------------------------------------------------------------------------
// Exact combinatorics

inline BigInt factorial(int n) {
  detail::require(n >= 0, ErrorKind::kParameter, "factorial of negative number");
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

/// Floating-point binomial; exact for the small arguments used in weights.
inline double binomial_double(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (long long i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

/// |c|! / prod c_j!
inline BigInt multinomial(const std::vector<int>& c) {
  BigInt r = 1;
  long long running = 0;
  for (int x : c) {
    running += x;
    r *= binomial(running, x);
  }
  return r;
}

inline BigInt multinomial_coeff(const CountVector& m) { return multinomial(m.counts()); }

inline BigInt pow_int(long long base, int exponent) {
  BigInt r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

inline double to_double(const BigInt& x) { return x.convert_to<double>(); }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// Uniform multinomial probability p(m) = multinomial(m) q^{-d}.
inline double stationary_pmf(const CountVector& m) {
  return to_double(Rational(multinomial_coeff(m), pow_int(m.q(), m.d())));
}

/// Same as stationary_pmf for a raw vector; 0 if any entry is negative.
inline double multinomial_pmf(const std::vector<int>& c, int q) {
  for (int x : c) {
    if (x < 0) return 0.0;
  }
  const int n = std::accumulate(c.begin(), c.end(), 0);
  return to_double(Rational(multinomial(c), pow_int(q, n)));
}

// ---------------------------------------------------------------------------
// Enumeration

inline std::size_t checked_cardinality(int d, int q) {
  check_modulus(q);
  detail::require(d >= 0, ErrorKind::kParameter, "d must be >= 0");
  const BigInt n = binomial(static_cast<long long>(d) + q - 1, q - 1);
  detail::require(n <= kMaxEnumeration, ErrorKind::kSize,
                  "enumeration of C(d+q-1,q-1) = " + n.str() + " elements exceeds the supported table size");
  return n.convert_to<std::size_t>();
}

/// All length-q nonnegative vectors summing to d, ascending lexicographic.
inline std::vector<CountVector> enumerate_count_vectors(int d, int q) {
  std::vector<CountVector> out;
  out.reserve(checked_cardinality(d, q));
  std::vector<int> cur(static_cast<std::size_t>(q), 0);
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == q - 1) {
      cur[static_cast<std::size_t>(pos)] = remaining;
      out.emplace_back(cur);
      return;
    }
    for (int a = 0; a <= remaining; ++a) {
      cur[static_cast<std::size_t>(pos)] = a;
      self(self, pos + 1, remaining - a);
    }
  };
  rec(rec, 0, d);
  return out;
}

/// Length-`nvars` nonnegative vectors with total exactly n, descending lexicographic.
inline void append_compositions(int n, int nvars, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(static_cast<std::size_t>(nvars), 0);
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == nvars - 1) {
      cur[static_cast<std::size_t>(pos)] = remaining;
      out.push_back(cur);
      return;
    }
    for (int a = remaining; a >= 0; --a) {
      cur[static_cast<std::size_t>(pos)] = a;
      self(self, pos + 1, remaining - a);
    }
  };
  rec(rec, 0, n);
}

/// All l of length q-1 with |l| <= d. Ordered by |l|, then descending
/// lexicographic within each order, so (d=1,q=3) gives (0,0),(1,0),(0,1).
inline std::vector<MultiIndex> enumerate_multi_indices(int d, int q) {
  checked_cardinality(d, q);
  std::vector<std::vector<int>> raw;
  for (int n = 0; n <= d; ++n) append_compositions(n, q - 1, raw);
  std::vector<MultiIndex> out;
  out.reserve(raw.size());
  for (auto& l : raw) out.emplace_back(std::move(l), d);
  return out;
}

/// Position lookup for an enumerated list of integer vectors.
class IndexLookup {
 public:
  IndexLookup() = default;

  template <class Range, class Proj>
  IndexLookup(const Range& items, Proj proj) {
    std::size_t i = 0;
    for (const auto& item : items) pos_.emplace(proj(item), i++);
  }

  std::size_t at(const std::vector<int>& key) const {
    auto it = pos_.find(key);
    detail::require(it != pos_.end(), ErrorKind::kIndex, "key not present in enumeration");
    return it->second;
  }

  bool contains(const std::vector<int>& key) const { return pos_.count(key) != 0; }

 private:
  std::map<std::vector<int>, std::size_t> pos_;
};

inline std::string format_vector(const std::vector<int>& v, char sep = ' ') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

}  // namespace zqwalk

#pragma once

// Truncated multivariate power series over a downward-closed set of exponents.
// Used for generating-function coefficient extraction.

#include <cstddef>
#include <limits>
#include <vector>

#include "zqwalk/core.hpp"

namespace zqwalk {

class MonomialLayout {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  /// All exponents in `nvars` variables with total degree <= degree, in the
  /// multi-index order of enumerate_multi_indices.
  static MonomialLayout total_degree(int nvars, int degree) {
    std::vector<std::vector<int>> e;
    for (int n = 0; n <= degree; ++n) append_compositions(n, nvars, e);
    return MonomialLayout(nvars, std::move(e));
  }

  /// All exponents bounded componentwise by `top`, ordered by total degree.
  static MonomialLayout box(const std::vector<int>& top) {
    const int nvars = static_cast<int>(top.size());
    std::vector<std::vector<int>> e;
    std::vector<int> cur(top.size(), 0);
    auto rec = [&](auto&& self, std::size_t pos) -> void {
      if (pos == top.size()) {
        e.push_back(cur);
        return;
      }
      for (int a = 0; a <= top[pos]; ++a) {
        cur[pos] = a;
        self(self, pos + 1);
      }
    };
    rec(rec, 0);
    std::stable_sort(e.begin(), e.end(), [](const auto& a, const auto& b) {
      return std::accumulate(a.begin(), a.end(), 0) < std::accumulate(b.begin(), b.end(), 0);
    });
    return MonomialLayout(nvars, std::move(e));
  }

  int nvars() const noexcept { return nvars_; }
  std::size_t size() const noexcept { return exps_.size(); }
  const std::vector<int>& exponent(std::size_t pos) const { return exps_[pos]; }
  int degree(std::size_t pos) const { return degs_[pos]; }
  std::size_t find(const std::vector<int>& e) const { return lookup_.at(e); }
  bool contains(const std::vector<int>& e) const { return lookup_.contains(e); }

  /// Position of exponent(pos) - e_k, or npos.
  std::size_t dec(std::size_t pos, int k) const { return dec_[pos * static_cast<std::size_t>(nvars_) + k]; }

  /// a <- (c0 + sum_k c[k] w_k) * a, truncated to the layout.
  void mul_linear(std::vector<Complex>& a, Complex c0, const std::vector<Complex>& c) const {
    for (std::size_t pos = size(); pos-- > 0;) {
      Complex acc = c0 * a[pos];
      for (int k = 0; k < nvars_; ++k) {
        const std::size_t p = dec(pos, k);
        if (p != npos) acc += c[static_cast<std::size_t>(k)] * a[p];
      }
      a[pos] = acc;
    }
  }

  /// Truncated product a * b.
  std::vector<Complex> multiply(const std::vector<Complex>& a, const std::vector<Complex>& b) const {
    std::vector<Complex> out(size(), Complex{0.0, 0.0});
    std::vector<int> sum(static_cast<std::size_t>(nvars_));
    for (std::size_t i = 0; i < size(); ++i) {
      if (a[i] == Complex{}) continue;
      for (std::size_t j = 0; j < size(); ++j) {
        if (b[j] == Complex{}) continue;
        for (int k = 0; k < nvars_; ++k) sum[k] = exps_[i][k] + exps_[j][k];
        if (!lookup_.contains(sum)) continue;
        out[lookup_.at(sum)] += a[i] * b[j];
      }
    }
    return out;
  }

  /// exp(a) for a series with zero constant term.
  std::vector<Complex> exp(const std::vector<Complex>& a) const {
    detail::require(std::abs(a[0]) == 0.0, ErrorKind::kPrecondition, "exp needs a zero constant term");
    std::vector<Complex> out(size(), Complex{0.0, 0.0});
    std::vector<Complex> term(size(), Complex{0.0, 0.0});
    out[0] = term[0] = 1.0;
    int maxdeg = 0;
    for (int d : degs_) maxdeg = std::max(maxdeg, d);
    for (int n = 1; n <= maxdeg; ++n) {
      term = multiply(term, a);
      bool nonzero = false;
      for (std::size_t i = 0; i < size(); ++i) {
        term[i] /= static_cast<double>(n);
        out[i] += term[i];
        nonzero = nonzero || term[i] != Complex{};
      }
      if (!nonzero) break;
    }
    return out;
  }

 private:
  MonomialLayout(int nvars, std::vector<std::vector<int>> exps)
      : nvars_(nvars), exps_(std::move(exps)), lookup_(exps_, [](const auto& e) { return e; }) {
    degs_.reserve(exps_.size());
    dec_.assign(exps_.size() * static_cast<std::size_t>(nvars_), npos);
    for (std::size_t pos = 0; pos < exps_.size(); ++pos) {
      degs_.push_back(std::accumulate(exps_[pos].begin(), exps_[pos].end(), 0));
      std::vector<int> e = exps_[pos];
      for (int k = 0; k < nvars_; ++k) {
        if (e[k] == 0) continue;
        --e[k];
        dec_[pos * nvars_ + k] = lookup_.at(e);
        ++e[k];
      }
    }
  }

  int nvars_;
  std::vector<std::vector<int>> exps_;
  IndexLookup lookup_;
  std::vector<int> degs_;
  std::vector<std::size_t> dec_;
};

}  // namespace zqwalk

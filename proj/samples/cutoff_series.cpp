// Chi-squared distance of the subset-toggle walk against the cutoff window.
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "zqwalk/grouped.hpp"

int main(int argc, char** argv) {
  const int d = argc > 1 ? std::atoi(argv[1]) : 40;
  const int q = argc > 2 ? std::atoi(argv[2]) : 3;
  const int A = argc > 3 ? std::atoi(argv[3]) : 10;
  const double frac = static_cast<double>(A) / d;
  const auto chain = zqwalk::subset_toggle_chain(d, q, A);
  std::vector<int> m0(static_cast<std::size_t>(q), 0);
  m0[0] = d;
  const zqwalk::CountVector start(m0);
  std::printf("t_cutoff = %.3f\n", zqwalk::cutoff_time(d, q, frac));
  std::printf("%4s %14s %14s %14s\n", "t", "lower", "chi2", "upper");
  for (int t = 1; t <= 12; ++t) {
    std::printf("%4d %14.6g %14.6g %14.6g\n", t, zqwalk::cutoff_lower_bound(d, q, frac, t),
                zqwalk::chi_squared(chain, start, t), zqwalk::cutoff_upper_bound(d, q, frac, t));
  }
}

#pragma once

#include <cstdint>
#include <random>

#include "hylab/core.hpp"

namespace hylab::test {

inline Vec random_vec(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> N(0.0, scale);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = N(rng);
  return v;
}

inline Mat random_mat(std::mt19937_64& rng, int r, int c, double scale = 1.0) {
  std::normal_distribution<double> N(0.0, scale);
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < c; ++k) m(i, k) = N(rng);
  return m;
}

inline HPoint random_point(std::mt19937_64& rng, int d, double scale = 1.0) {
  std::normal_distribution<double> N(0.0, scale);
  return HPoint(random_vec(rng, 2 * d, scale), N(rng));
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace hylab::test

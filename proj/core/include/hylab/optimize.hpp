#pragma once

#include <functional>

#include "hylab/types.hpp"

namespace hylab {

struct NelderMeadOptions {
  int max_evaluations = 4000;
  /// Stop when the simplex value spread falls below ftol_abs + ftol_rel * |f_best|.
  double ftol_abs = 1e-14;
  double ftol_rel = 1e-10;
  /// Stop when every vertex is within xtol of the best vertex (infinity norm).
  double xtol = 1e-9;
};

struct NelderMeadResult {
  Vec x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Nelder-Mead with dimension-adaptive coefficients. `step` holds the
/// initial simplex edge per coordinate.
NelderMeadResult nelder_mead(const std::function<double(const Vec&)>& f, const Vec& x0, const Vec& step,
                             const NelderMeadOptions& opt = {});

}  // namespace hylab

#pragma once

#include <vector>

namespace hylab {

/// Gauss-Hermite rule for the weight exp(-u^2).
struct GaussHermiteRule {
  std::vector<double> nodes;
  /// Weights w_k.
  std::vector<double> weights;
  /// w_k exp(u_k^2), so that the integral of F is about sum scaled_k F(u_k).
  std::vector<double> scaled_weights;
  /// log(max w) - log(w_k); the pruning cost of a node.
  std::vector<double> cost;
};

/// Cached and thread-safe; nodes sorted ascending.
const GaussHermiteRule& gauss_hermite_rule(int n);

}  // namespace hylab

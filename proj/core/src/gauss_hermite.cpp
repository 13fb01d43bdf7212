#include "hylab/gauss_hermite.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include <Eigen/Dense>

namespace hylab {

namespace {

/// Normalized Hermite functions psi_{n-1}(x), psi_n(x).
std::pair<double, double> hermite_functions(int n, double x) {
  double prev = 0.0;
  double cur = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  for (int k = 0; k < n; ++k) {
    const double next = x * std::sqrt(2.0 / (k + 1)) * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return {prev, cur};
}

std::unique_ptr<GaussHermiteRule> build_rule(int n) {
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) T(k, k - 1) = T(k - 1, k) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
  auto rule = std::make_unique<GaussHermiteRule>();
  for (int k = 0; k < n; ++k) {
    double x = es.eigenvalues()(k);
    for (int it = 0; it < 3; ++it) {
      auto [pm1, pn] = hermite_functions(n, x);
      const double dpn = std::sqrt(2.0 * n) * pm1 - x * pn;
      if (dpn == 0.0) break;
      x -= pn / dpn;
    }
    const double pm1 = hermite_functions(n, x).first;
    const double scaled = 1.0 / (n * pm1 * pm1);
    rule->nodes.push_back(x);
    rule->scaled_weights.push_back(scaled);
    rule->weights.push_back(scaled * std::exp(-x * x));
  }
  double wmax = 0.0;
  for (double w : rule->weights) wmax = std::max(wmax, std::log(w));
  for (int k = 0; k < n; ++k) {
    const double lw = std::log(rule->scaled_weights[k]) - rule->nodes[k] * rule->nodes[k];
    rule->cost.push_back(wmax - lw);
  }
  return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite_rule(int n) {
  if (n < 1 || n > 400) throw std::invalid_argument("gauss_hermite_rule: node count out of range");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussHermiteRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = build_rule(n);
  return *slot;
}

}  // namespace hylab

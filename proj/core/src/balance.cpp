#include <cmath>

#include "hylab/expansion.hpp"

namespace hylab {

int balance_parameter_count(int d) {
  const int dx = 2 * d;
  return 6 + dx + 1 + 3 * dx + 3 + dx * (dx + 1) / 2 + 1 + dx;
}

OrbitParams balance_orbit_params(const Vec& theta, int d) {
  const int dx = 2 * d;
  if (theta.size() != balance_parameter_count(d)) throw std::invalid_argument("balance: parameter size mismatch");
  OrbitParams q = OrbitParams::identity(d);
  int k = 0;
  for (int j = 0; j < 3; ++j) {
    q.a[j] = cplx(1.0 + theta(k), theta(k + 1));
    k += 2;
  }
  for (int i = 0; i < dx; ++i) q.zeta(i) = theta(k++);
  q.beta = theta(k++);
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < dx; ++i) q.V[j](i) = theta(k++);
  }
  for (int j = 0; j < 3; ++j) q.Up[j] = theta(k++);
  for (int i = 0; i < dx; ++i) {
    for (int m = i; m < dx; ++m) {
      q.K(i, m) += theta(k);
      if (m != i) q.K(m, i) += theta(k);
      ++k;
    }
  }
  const double s = theta(k++);
  q.log_r = std::log1p(s);
  for (int i = 0; i < dx; ++i) q.psi(i) = theta(k++);
  return q;
}

double max_distance_to_gaussians(const GaussTriple& f, const ExponentTriple& p, int nodes) {
  const auto g = standard_gaussians(p, f[0].dim());
  double m = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double I = lp_power_gh(EvaluableFunction::from(f[j] - g[j]), p.p(j), nodes);
    m = std::max(m, std::pow(std::max(I, 0.0), 1.0 / p.p(j)));
  }
  return m;
}

BalanceResult balance(const GaussTriple& f, const AttachedParams& params, const ExponentTriple& p,
                      const BalanceConfig& config) {
  const int n = f[0].dim();
  const int d = (n - 1) / 2;
  const bool normalized = params.b == 0.0 && params.A.rows() == 2 * d && params.A.isIdentity(0.0);
  const GaussTriple F = normalized ? f : normalize_entry(f, params).f;
  const AttachedParams chart = AttachedParams::identity(d);
  const auto g = standard_gaussians(p, n);

  BalanceResult out;
  out.input_distance = max_distance_to_gaussians(F, p);
  out.in_regime = out.input_distance <= config.regime_radius;

  auto residual = [&](const Vec& theta) {
    const OrbitElement e = orbit_element(F, chart, balance_orbit_params(theta, d));
    const GaussTriple diff{e.h[0] - g[0], e.h[1] - g[1], e.h[2] - g[2]};
    return orthogonality_residuals(diff, p).values();
  };

  const int m = balance_parameter_count(d);
  Vec theta = Vec::Zero(m);
  Vec r = residual(theta);
  out.initial_residual = r.lpNorm<Eigen::Infinity>();
  bool first = true;
  while (out.iterations < config.max_iterations) {
    if (r.lpNorm<Eigen::Infinity>() <= config.tol) {
      out.converged = true;
      break;
    }
    ++out.iterations;
    Mat Jac(r.size(), m);
    for (int k = 0; k < m; ++k) {
      Vec tp = theta;
      tp(k) += config.fd_step;
      Jac.col(k) = (residual(tp) - r) / config.fd_step;
    }
    if (first) {
      Eigen::JacobiSVD<Mat> svd(Jac);
      out.singular_values = svd.singularValues();
      const double smax = out.singular_values.size() ? out.singular_values(0) : 0.0;
      out.jacobian_rank = static_cast<int>((out.singular_values.array() > 1e-8 * smax).count());
      first = false;
    }
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(Jac);
    cod.setThreshold(1e-10);
    const Vec delta = -cod.solve(r);
    double step = 1.0;
    bool accepted = false;
    for (int tries = 0; tries < 30; ++tries) {
      const Vec cand = theta + step * delta;
      const Vec rc = residual(cand);
      if (rc.norm() < r.norm()) {
        theta = cand;
        r = rc;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  if (!out.converged && r.lpNorm<Eigen::Infinity>() <= config.tol) out.converged = true;
  out.residual = r.lpNorm<Eigen::Infinity>();
  out.theta = theta;
  out.orbit = balance_orbit_params(theta, d);
  const OrbitElement e = orbit_element(F, chart, out.orbit);
  out.h = e.h;
  out.word = orbit_word(out.orbit);
  const double rr = std::exp(out.orbit.log_r);
  out.params = {out.orbit.K / rr, out.orbit.beta};
  out.output_distance = max_distance_to_gaussians(out.h, p);
  return out;
}

}  // namespace hylab

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "hylab/optimize.hpp"
#include "hylab/symmetry.hpp"

namespace hylab {

OrbitParams OrbitParams::identity(int d) {
  const int dx = 2 * d;
  OrbitParams q;
  q.K = Mat::Identity(dx, dx);
  q.zeta = Vec::Zero(dx);
  q.psi = Vec::Zero(dx);
  for (auto& v : q.V) v = Vec::Zero(dx);
  return q;
}

OrbitParams OrbitParams::start(int d, double b) {
  OrbitParams q = identity(d);
  q.beta = b;
  return q;
}

int OrbitParams::size(int d) {
  const int dx = 2 * d;
  return dx * dx + 5 * dx + 11;
}

Vec OrbitParams::pack() const {
  const int dx = static_cast<int>(K.rows());
  Vec v(size(dx / 2));
  int k = 0;
  for (int i = 0; i < dx; ++i) {
    for (int j = 0; j < dx; ++j) v(k++) = K(i, j);
  }
  v(k++) = log_r;
  v(k++) = beta;
  for (int i = 0; i < dx; ++i) v(k++) = zeta(i);
  for (int i = 0; i < dx; ++i) v(k++) = psi(i);
  for (const auto& Vj : V) {
    for (int i = 0; i < dx; ++i) v(k++) = Vj(i);
  }
  for (double u : Up) v(k++) = u;
  for (const cplx& c : a) {
    v(k++) = c.real();
    v(k++) = c.imag();
  }
  return v;
}

OrbitParams OrbitParams::unpack(const Vec& v, int d) {
  const int dx = 2 * d;
  if (v.size() != size(d)) throw std::invalid_argument("OrbitParams::unpack: size mismatch");
  OrbitParams q = identity(d);
  int k = 0;
  for (int i = 0; i < dx; ++i) {
    for (int j = 0; j < dx; ++j) q.K(i, j) = v(k++);
  }
  q.log_r = v(k++);
  q.beta = v(k++);
  for (int i = 0; i < dx; ++i) q.zeta(i) = v(k++);
  for (int i = 0; i < dx; ++i) q.psi(i) = v(k++);
  for (auto& Vj : q.V) {
    for (int i = 0; i < dx; ++i) Vj(i) = v(k++);
  }
  for (double& u : q.Up) u = v(k++);
  for (cplx& c : q.a) {
    const double re = v(k++);
    c = cplx(re, v(k++));
  }
  return q;
}

OrbitElement orbit_element(const GaussTriple& f, const AttachedParams& params, const OrbitParams& q) {
  const int n = f[0].dim();
  const int dx = n - 1;
  if (q.K.rows() != dx || params.A.rows() != dx) throw std::invalid_argument("orbit_element: dimension mismatch");
  const Mat B = params.A.transpose() * symplectic_matrix(dx / 2) * params.A;
  const double r2 = std::exp(2.0 * q.log_r);
  const double b = params.b;
  OrbitElement out;
  for (int j = 0; j < 3; ++j) {
    const Vec& Vj = q.V[j];
    const Vec& Vn = q.V[(j + 1) % 3];
    const Vec cx = q.psi + q.K.transpose() * (B.transpose() * Vj - B * Vn);
    Mat M = Mat::Zero(n, n);
    M.topLeftCorner(dx, dx) = q.K;
    M.block(dx, 0, 1, dx) = cx.transpose();
    M(dx, dx) = r2;
    Vec v(n);
    v << Vj - Vn, q.Up[j] - q.Up[(j + 1) % 3] - Vj.dot(B * Vn);
    GaussianPolynomial h = pullback(f[j], M, v);
    Vec xi(n);
    xi << q.zeta - b * cx, q.beta - b * r2;
    h = h.modulated(xi) * (q.a[j] * std::exp(cplx(0.0, -b * v(dx))));
    out.h[j] = std::move(h);
  }
  out.MtJM = q.K.transpose() * B * q.K / r2;
  out.twist = q.beta;
  return out;
}

SymmetryWord orbit_word(const OrbitParams& q) {
  const int dx = static_cast<int>(q.K.rows());
  const double r = std::exp(q.log_r);
  const Mat L = q.K / r;
  if (!(std::abs(L.determinant()) > 1e-12)) throw std::invalid_argument("orbit_word: K must be invertible");
  const Mat LinvT = L.inverse().transpose();
  TranslateMod tm;
  for (int j = 0; j < 3; ++j) tm.u[j] = HPoint(q.V[j], q.Up[j]);
  Vec full = Vec::Zero(dx + 1);
  full(dx) = q.beta;
  return SymmetryWord{tm,
                      Shear{LinvT * q.psi / r},
                      Dilate{r},
                      ModulateX{LinvT * q.zeta},
                      Scale{q.a},
                      GlAction{L},
                      ModulateFull{full}};
}

namespace {

double soft_max(const std::array<double, 3>& x, double sharpness) {
  const double m = std::max({x[0], x[1], x[2]});
  if (!(m > 0.0)) return 0.0;
  double s = 0.0;
  for (double v : x) s += std::pow(v / m, sharpness);
  return m * std::pow(s, 1.0 / sharpness);
}

struct ObjectiveParts {
  std::array<double, 3> norm_sq{};
  double mjm_sq = 0.0;
  double twist_mjm_sq = 0.0;
};

ObjectiveParts objective_parts(const GaussTriple& f, const AttachedParams& params, const ExponentTriple& p,
                               const OrbitParams& q, int nodes) {
  const int n = f[0].dim();
  const auto g = standard_gaussians(p, n);
  const OrbitElement e = orbit_element(f, params, q);
  ObjectiveParts out;
  for (int j = 0; j < 3; ++j) {
    const EvaluableFunction diff = EvaluableFunction::from(e.h[j] - g[j]);
    const double I = lp_power_gh(diff, p.p(j), nodes);
    out.norm_sq[j] = std::pow(std::max(I, 0.0), 2.0 / p.p(j));
  }
  const double m = spectral_norm(e.MtJM);
  out.mjm_sq = m * m;
  out.twist_mjm_sq = e.twist * e.twist * m * m;
  return out;
}

}  // namespace

DistanceBreakdown distance_objective(const GaussTriple& f, const AttachedParams& params, const ExponentTriple& p,
                                     const OrbitParams& q, int nodes, double* gap) {
  const ObjectiveParts fine = objective_parts(f, params, p, q, nodes);
  DistanceBreakdown b;
  b.norm_sq = fine.norm_sq;
  b.max_norm_sq = std::max({fine.norm_sq[0], fine.norm_sq[1], fine.norm_sq[2]});
  b.mjm_sq = fine.mjm_sq;
  b.twist_mjm_sq = fine.twist_mjm_sq;
  if (gap) {
    const ObjectiveParts coarse = objective_parts(f, params, p, q, std::max(nodes / 2, 2));
    const double cm = std::max({coarse.norm_sq[0], coarse.norm_sq[1], coarse.norm_sq[2]});
    *gap = std::abs(cm - b.max_norm_sq);
  }
  return b;
}

DistanceReport orbit_distance_upper(const GaussTriple& f, const AttachedParams& params, const ExponentTriple& p,
                                    const DistanceConfig& config) {
  const int n = f[0].dim();
  const int d = (n - 1) / 2;
  if (params.A.rows() != n - 1 || params.A.cols() != n - 1) {
    throw std::invalid_argument("orbit_distance_upper: A must be 2d x 2d");
  }
  if (config.restarts < 1) throw std::invalid_argument("orbit_distance_upper: restarts must be positive");
  auto objective = [&](const Vec& x) {
    const OrbitParams q = OrbitParams::unpack(x, d);
    if (!std::isfinite(q.log_r) || std::abs(q.log_r) > 20.0) return std::numeric_limits<double>::infinity();
    try {
      const ObjectiveParts parts = objective_parts(f, params, p, q, config.gh_nodes);
      return soft_max(parts.norm_sq, config.sharpness) + parts.mjm_sq + parts.twist_mjm_sq;
    } catch (const std::exception&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  DistanceReport rep;
  Vec best = OrbitParams::start(d, params.b).pack();
  double best_val = objective(best);
  rep.evaluations = 1;
  for (const auto& h : config.hints) {
    const Vec x = h.pack();
    const double v = objective(x);
    ++rep.evaluations;
    if (v < best_val) {
      best_val = v;
      best = x;
    }
  }

  NelderMeadOptions opt;
  opt.max_evaluations = config.max_evaluations;
  opt.ftol_abs = config.ftol * 1e-3;
  opt.ftol_rel = config.ftol;
  for (int k = 0; k < config.restarts; ++k) {
    const double scale = std::clamp(0.5 * std::sqrt(std::max(best_val, 0.0)), 1e-3, 0.1);
    Vec x0 = best;
    if (k > 0) {
      std::mt19937_64 rng(config.seed * 1000003ULL + static_cast<std::uint64_t>(k));
      std::normal_distribution<double> normal;
      for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) += 0.5 * scale * normal(rng);
    }
    const Vec step = Vec::Constant(best.size(), scale);
    const NelderMeadResult res = nelder_mead(objective, x0, step, opt);
    rep.evaluations += res.evaluations;
    rep.iterations += res.iterations;
    ++rep.restarts;
    if (res.value <= best_val) {
      best_val = res.value;
      best = res.x;
      rep.converged = res.converged;
    } else if (k == 0) {
      rep.converged = res.converged;
    }
  }

  rep.argmin = OrbitParams::unpack(best, d);
  rep.breakdown = distance_objective(f, params, p, rep.argmin, config.gh_nodes_final, &rep.quadrature_gap);
  rep.upper_bound = std::sqrt(rep.breakdown.max_norm_sq + rep.breakdown.mjm_sq + rep.breakdown.twist_mjm_sq);
  const auto g = standard_gaussians(p, n);
  double limit = 0.0;
  for (int j = 0; j < 3; ++j) limit = std::max(limit, lp_norm_closed(g[j], p.p(j)));
  if (limit < rep.upper_bound) {
    rep.upper_bound = limit;
    rep.vanishing_limit = true;
  }
  return rep;
}

Mat symplectic_from_hamiltonian(const Vec& q_upper, int d) {
  const int dx = 2 * d;
  if (q_upper.size() != dx * (dx + 1) / 2) throw std::invalid_argument("symplectic_from_hamiltonian: size mismatch");
  Mat Q(dx, dx);
  int k = 0;
  for (int i = 0; i < dx; ++i) {
    for (int j = i; j < dx; ++j) {
      Q(i, j) = Q(j, i) = q_upper(k++);
    }
  }
  const Mat H = symplectic_matrix(d) * Q;
  return H.exp();
}

SymplecticNormResult min_symplectic_norm(const Mat& A, int restarts, std::uint64_t seed) {
  if (A.rows() != A.cols() || A.rows() % 2 != 0) throw std::invalid_argument("min_symplectic_norm: A must be 2d x 2d");
  const int d = static_cast<int>(A.rows() / 2);
  const int m = d * (2 * d + 1);
  auto f = [&](const Vec& q) {
    const Mat Sinv = symplectic_from_hamiltonian(-q, d);
    const double s = spectral_norm(Sinv * A);
    return s * s;
  };
  NelderMeadOptions opt;
  opt.max_evaluations = 4000;
  opt.ftol_abs = 1e-16;
  opt.ftol_rel = 1e-13;
  opt.xtol = 1e-10;
  SymplecticNormResult out;
  out.value = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int k = 0; k < std::max(restarts, 1); ++k) {
    Vec x0 = Vec::Zero(m);
    if (k > 0) {
      for (int i = 0; i < m; ++i) x0(i) = 0.5 * normal(rng);
    }
    NelderMeadResult r = nelder_mead(f, x0, Vec::Constant(m, 0.3), opt);
    // polish from the best vertex with a fresh simplex
    r = nelder_mead(f, r.x, Vec::Constant(m, 1e-3), opt);
    if (r.value < out.value) {
      out.value = r.value;
      out.S = symplectic_from_hamiltonian(r.x, d);
      out.converged = r.converged;
    }
  }
  return out;
}

}  // namespace hylab

#include "hylab/lab.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace hylab {

void ExperimentConfig::validate() const {
  if (!p.admissible()) throw std::invalid_argument("config: exponents not admissible");
  if (d < 1) throw std::invalid_argument("config: d must be positive");
  auto check_grid = [](const std::vector<double>& g, const char* name) {
    if (g.empty()) throw std::invalid_argument(std::string("config: empty ") + name);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!(g[i] > 0.0) || !std::isfinite(g[i])) {
        throw std::invalid_argument(std::string("config: ") + name + " must be positive");
      }
      if (i > 0 && !(g[i] > g[i - 1])) {
        throw std::invalid_argument(std::string("config: ") + name + " must be strictly ascending");
      }
    }
  };
  check_grid(lambda_grid, "lambda grid");
  check_grid(eps_grid, "eps grid");
  if (static_cast<int>(mode_alpha.size()) != 2 * d + 1) {
    throw std::invalid_argument("config: mode alpha must have 2d+1 entries");
  }
  for (int a : mode_alpha) {
    if (a < 0) throw std::invalid_argument("config: mode alpha entries must be non-negative");
  }
  QuadratureScheme::gauss_hermite(gh_nodes).validate();
  QuadratureScheme::monte_carlo(mc_samples, seed).validate();
  if (threads < 1) throw std::invalid_argument("config: threads must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
}

GaussTriple lambda_family(const ExponentTriple& p, double lambda, int d) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda_family: lambda must be positive");
  const int n = 2 * d + 1;
  GaussTriple f;
  for (int j = 0; j < 3; ++j) {
    const double g = p.gamma(j);
    CMat Q = CMat::Zero(n, n);
    for (int k = 0; k < n - 1; ++k) Q(k, k) = g * lambda;
    Q(n - 1, n - 1) = g / lambda;
    CVec l = CVec::Zero(n);
    l(n - 1) = cplx(0.0, -g / lambda);
    f[j] = GaussianPolynomial(n, {GaussTerm::pure(Q, l)});
  }
  return f;
}

OrbitParams lambda_family_hint(const ExponentTriple& p, double lambda, int d) {
  OrbitParams q = OrbitParams::identity(d);
  q.K *= 1.0 / std::sqrt(lambda);
  q.log_r = 0.25 * std::log(lambda);
  q.beta = p.gamma(0) / std::sqrt(lambda);
  return q;
}

PhiResult phi_hybrid(const GaussTriple& f, const ExponentTriple& p, const AttachedParams& params,
                     const QuadratureScheme& trilinear_scheme, int norm_nodes) {
  PhiResult r;
  if (params.A.size() == 0 || params.A.isZero(0.0)) {
    r.trilinear.value = trilinear_closed(f[0], f[1], f[2], params.A);
    r.trilinear.method = Method::ClosedForm;
  } else {
    r.trilinear = eval_trilinear(to_evaluable(f), params.A, params.b, trilinear_scheme);
  }
  double prod = 1.0, rel = 0.0;
  for (int j = 0; j < 3; ++j) {
    if (f[j].is_pure_gaussian()) {
      r.norms[j].value = lp_norm_closed(f[j], p.p(j));
      r.norms[j].method = Method::ClosedForm;
    } else {
      r.norms[j] = lp_norm(EvaluableFunction::from(f[j]), p.p(j), QuadratureScheme::gauss_hermite(norm_nodes));
    }
    if (!(r.norms[j].value > 0.0)) throw std::invalid_argument("phi: zero norm");
    prod *= r.norms[j].value;
    rel += r.norms[j].error / r.norms[j].value;
  }
  r.value = std::abs(r.trilinear.value) / prod;
  r.error = r.trilinear.error / prod + r.value * rel;
  return r;
}

namespace {

DistanceConfig distance_config(const ExperimentConfig& c) {
  DistanceConfig dc;
  dc.restarts = c.distance_restarts;
  dc.max_evaluations = c.distance_evaluations;
  dc.seed = c.seed;
  dc.ftol = c.tol;
  return dc;
}

}  // namespace

ExperimentTable lambda_family_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.lambda_grid.front() < 1.0 || config.lambda_grid.back() > 100.0) {
    throw std::invalid_argument("lambda_family_experiment: grid must lie in [1, 100]");
  }
  const int n = 2 * config.d + 1;
  ExperimentTable t;
  t.name = "lambda";
  t.grid_name = "lambda";
  QuadratureScheme mc = QuadratureScheme::monte_carlo(config.mc_samples, config.seed);
  mc.threads = config.threads;
  for (double lambda : config.lambda_grid) {
    const GaussTriple f = lambda_family(config.p, lambda, config.d);
    const AttachedParams params = AttachedParams::identity(config.d);
    const PhiResult ph = phi_hybrid(f, config.p, params, mc, config.gh_nodes);
    const DeficitResult def = deficit_from_phi(ph.value, ph.error, config.p, n);
    DistanceConfig dc = distance_config(config);
    dc.hints.push_back(lambda_family_hint(config.p, lambda, config.d));
    const DistanceReport dist = orbit_distance_upper(f, params, config.p, dc);
    ExperimentRow row;
    row.grid_value = lambda;
    row.phi = ph.value;
    row.phi_err = ph.error;
    row.deficit = def.deficit;
    row.deficit_err = def.error;
    row.dist_upper = dist.upper_bound;
    row.converged = dist.converged;
    row.quadrature_gap = dist.quadrature_gap;
    row.evaluations = ph.trilinear.evaluations + dist.evaluations;
    t.rows.push_back(row);
  }
  return t;
}

GaussTriple mode_perturbation(const ExponentTriple& p, const MultiIndex& alpha, double eps) {
  const int n = static_cast<int>(alpha.size());
  const auto g = standard_gaussians(p, n);
  GaussTriple f;
  for (int j = 0; j < 3; ++j) f[j] = (g[j] + hermite_mode(p, j, alpha, n) * cplx(eps)).canonical();
  return f;
}

ExponentFit fit_exponent(const std::vector<double>& dist, const std::vector<double>& deficit) {
  if (dist.size() != deficit.size()) throw std::invalid_argument("fit_exponent: size mismatch");
  ExponentFit fit;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] > 0.0 && deficit[i] > 0.0) {
      fit.log_dist.push_back(std::log(dist[i]));
      fit.log_deficit.push_back(std::log(deficit[i]));
    }
  }
  const std::size_t m = fit.log_dist.size();
  fit.degenerate = m < 5 || m < dist.size();
  if (m < 2) {
    fit.degenerate = true;
    return fit;
  }
  Eigen::MatrixXd X(m, 2);
  Vec y(m);
  for (std::size_t i = 0; i < m; ++i) {
    X(i, 0) = fit.log_dist[i];
    X(i, 1) = 1.0;
    y(i) = fit.log_deficit[i];
  }
  const Vec c = X.colPivHouseholderQr().solve(y);
  fit.slope = c(0);
  fit.intercept = c(1);
  const Vec res = y - X * c;
  const double mean = y.mean();
  const double ss_tot = (y.array() - mean).square().sum();
  fit.r_squared = ss_tot > 0.0 ? 1.0 - res.squaredNorm() / ss_tot : 0.0;
  if (!(ss_tot > 0.0) || (X.col(0).array() - X.col(0).mean()).square().sum() == 0.0) fit.degenerate = true;
  return fit;
}

ExponentFit exponent_fit_experiment(const ExperimentConfig& config) {
  config.validate();
  if (total_degree(config.mode_alpha) != 3) {
    throw std::invalid_argument("exponent_fit_experiment: mode alpha must have total degree 3");
  }
  if (config.eps_grid.front() < 0.005 - 1e-15 || config.eps_grid.back() > 0.05 + 1e-15) {
    throw std::invalid_argument("exponent_fit_experiment: eps grid must lie in [0.005, 0.05]");
  }
  const int n = 2 * config.d + 1;
  const AttachedParams params = AttachedParams::euclidean(config.d);
  ExperimentTable t;
  t.name = "exponent-fit";
  t.grid_name = "eps";
  std::vector<double> dist, def;
  for (double eps : config.eps_grid) {
    const GaussTriple f = mode_perturbation(config.p, config.mode_alpha, eps * config.mode_amplitude);
    const PhiResult ph = phi_hybrid(f, config.p, params, QuadratureScheme::gauss_hermite(config.gh_nodes),
                                    config.gh_nodes);
    const DeficitResult dr = deficit_from_phi(ph.value, ph.error, config.p, n);
    const DistanceReport rep = orbit_distance_upper(f, params, config.p, distance_config(config));
    ExperimentRow row;
    row.grid_value = eps;
    row.phi = ph.value;
    row.phi_err = ph.error;
    row.deficit = dr.deficit;
    row.deficit_err = dr.error;
    row.dist_upper = rep.upper_bound;
    row.converged = rep.converged;
    row.quadrature_gap = rep.quadrature_gap;
    row.evaluations = rep.evaluations;
    t.rows.push_back(row);
    dist.push_back(rep.upper_bound);
    def.push_back(dr.deficit);
  }
  ExponentFit fit = fit_exponent(dist, def);
  fit.table = std::move(t);
  return fit;
}

int VerifyReport::failures() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

GaussianPolynomial random_gaussian_polynomial(int n, std::uint64_t seed, int max_degree) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N;
  Mat M(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) M(i, j) = 0.5 * N(rng);
  }
  Mat S(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) S(i, j) = S(j, i) = 0.3 * N(rng);
  }
  CMat Q = (M * M.transpose() + 0.5 * Mat::Identity(n, n)).cast<cplx>() + cplx(0.0, 1.0) * S.cast<cplx>();
  CVec l(n);
  for (int i = 0; i < n; ++i) l(i) = cplx(0.3 * N(rng), 0.3 * N(rng));
  Polynomial P = Polynomial::constant(n, 1.0);
  for (int deg = 1; deg <= max_degree; ++deg) {
    for (int i = 0; i < n; ++i) {
      MultiIndex a(n, 0);
      a[i] = deg;
      P.add(a, cplx(0.3 * N(rng), 0.3 * N(rng)));
      if (deg == 2 && i + 1 < n) {
        MultiIndex b(n, 0);
        b[i] = 1;
        b[i + 1] = 1;
        P.add(b, cplx(0.3 * N(rng), 0.3 * N(rng)));
      }
    }
  }
  return GaussianPolynomial::from_groups(n, {GaussGroup{Q, l, P}});
}

namespace {

Mat random_matrix(int n, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> N;
  Mat A(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) A(i, j) = scale * N(rng);
  }
  return A;
}

ExponentTriple random_admissible(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> U(lo, hi);
  for (;;) {
    const double p1 = U(rng), p2 = U(rng);
    const double inv3 = 2.0 - 1.0 / p1 - 1.0 / p2;
    if (!(inv3 > 0.0)) continue;
    const double p3 = 1.0 / inv3;
    if (p3 > lo && p3 < hi) return ExponentTriple(p1, p2, p3);
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Check sigma_first_moment(const ExperimentConfig& c) {
  const int n = 2 * c.d + 1;
  const auto g = standard_gaussians(c.p, n);
  std::mt19937_64 rng(c.seed + 1);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const GaussianPolynomial f1 = random_gaussian_polynomial(n, c.seed + 100 + k);
    const Mat A = random_matrix(n - 1, rng, 1.0);
    const cplx t00 = trilinear_closed(f1, g[1], g[2], A, 0, 0);
    const cplx t01 = trilinear_closed(f1, g[1], g[2], A, 0, 1);
    worst = std::max(worst, std::abs(t01) / std::abs(t00));
  }
  return {"sigma-first-moment", worst <= 1e-10, worst, 1e-10, "max |TC(0,1)|/|TC(0,0)| over 20 random (f1, A)"};
}

Check sigma_second_moment(const ExperimentConfig& c) {
  const int n = 2 * c.d + 1;
  const auto g = standard_gaussians(c.p, n);
  std::mt19937_64 rng(c.seed + 2);
  std::vector<double> C;
  for (int k = 0; k < 20; ++k) {
    const Mat A = random_matrix(n - 1, rng, 1.0);
    const double dn = symplectic_defect_norm(A);
    C.push_back(trilinear_closed(g[0], g[1], g[2], A, 0, 2).real() / (dn * dn));
  }
  const auto [lo, hi] = std::minmax_element(C.begin(), C.end());
  double mean = 0.0;
  for (double v : C) mean += v / C.size();
  const double spread = (*hi - *lo) / std::abs(mean);
  return {"sigma-second-moment", spread <= 1e-8 && *lo > 0.0, spread, 1e-8,
          "relative spread of TC(0,2)/||A^T J A||^2 over 20 random A; constant " + fmt(mean)};
}

Check shift_t_factor(const ExperimentConfig& c) {
  const ExponentTriple sym = ExponentTriple::symmetric();
  const Mat Id = Mat::Identity(2 * c.d, 2 * c.d);
  const double tf = tprime_gaussian_expansion(sym, Id, c.d).t_factor;
  const double err = std::abs(tf + 1.0 / 3.0);
  std::mt19937_64 rng(c.seed + 3);
  int negative = 0;
  for (int k = 0; k < 50; ++k) {
    if (tprime_gaussian_expansion(random_admissible(rng, 1.1, 1.9), Id, c.d).t_factor < 0.0) ++negative;
  }
  const double eps = 0.05;
  const Mat A = eps * Id;
  const ShiftExpansion e = tprime_gaussian_expansion(c.p, A, c.d);
  QuadratureScheme s = QuadratureScheme::gauss_hermite(20);
  s.threads = c.threads;
  const auto g = standard_gaussians(c.p, 2 * c.d + 1);
  const TrilinearResult tp = tprime(to_evaluable(g), A, s);
  const double dn = symplectic_defect_norm(A);
  const double rel = std::abs(tp.value.real() / (dn * dn) / e.c2 - 1.0);
  const bool pass = err <= 1e-12 && negative == 50 && rel <= 0.03;
  return {"shift-t-factor", pass, tf, 1e-12,
          "t_factor + 1/3 = " + fmt(tf + 1.0 / 3.0) + "; negative for " + std::to_string(negative) +
              "/50 random p; quadrature vs c2 at A = 0.05 Id relative gap " + fmt(rel) + " (tol 0.03)"};
}

Check twist_quadratic(const ExperimentConfig& c) {
  const Mat A = 0.1 * Mat::Identity(2 * c.d, 2 * c.d);
  const auto g = standard_gaussians(c.p, 2 * c.d + 1);
  QuadratureScheme s = QuadratureScheme::gauss_hermite(20);
  s.threads = c.threads;
  const std::array<double, 3> bs{0.5, 1.0, 2.0};
  std::array<double, 3> k{};
  for (int i = 0; i < 3; ++i) k[i] = tdoubleprime(to_evaluable(g), A, bs[i], s).value.real() / (bs[i] * bs[i]);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(k[i] / k[1] - 1.0));
  const bool negative = k[0] < 0.0 && k[1] < 0.0 && k[2] < 0.0;
  return {"twist-quadratic", negative && worst <= 0.02, worst, 0.02,
          "Re T''/b^2 at b = 0.5, 1, 2: " + fmt(k[0]) + ", " + fmt(k[1]) + ", " + fmt(k[2])};
}

Check young_bound(const ExperimentConfig& c) {
  const int n = 2 * c.d + 1;
  const double Ap = optimal_constant(c.p, n);
  std::mt19937_64 rng(c.seed + 5);
  std::normal_distribution<double> N;
  double worst = -std::numeric_limits<double>::infinity();
  int violations = 0;
  for (int k = 0; k < c.young_corpus; ++k) {
    GaussTriple f;
    for (int j = 0; j < 3; ++j) f[j] = random_gaussian_polynomial(n, c.seed + 1000 + 3 * k + j, k % 3);
    AttachedParams params{k % 4 == 0 ? Mat::Zero(n - 1, n - 1) : random_matrix(n - 1, rng, 0.7), N(rng)};
    QuadratureScheme mc = QuadratureScheme::monte_carlo(c.young_samples, c.seed + 7 * k);
    mc.threads = c.threads;
    const PhiResult ph = phi_hybrid(f, c.p, params, mc, 30);
    const double excess = ph.value - Ap;
    worst = std::max(worst, excess);
    if (excess > 3.0 * ph.error) ++violations;
  }
  return {"young-bound", violations == 0, worst, 0.0,
          "max Phi - A_p over " + std::to_string(c.young_corpus) + " random triples; " +
              std::to_string(violations) + " exceed 3 error estimates"};
}

SymmetryGen random_generator(int kind, int d, const Mat& A, std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  const int dx = 2 * d;
  auto rv = [&](int m, double s) {
    Vec v(m);
    for (int i = 0; i < m; ++i) v(i) = s * N(rng);
    return v;
  };
  switch (kind) {
    case 0:
      return Scale{{cplx(1.0 + 0.3 * N(rng), 0.3 * N(rng)), cplx(1.0 + 0.3 * N(rng), 0.3 * N(rng)),
                    cplx(1.0 + 0.3 * N(rng), 0.3 * N(rng))}};
    case 1:
      return Dilate{std::exp(0.2 * N(rng))};
    case 2:
      return TranslateMod{{HPoint(rv(dx, 0.3), 0.3 * N(rng)), HPoint(rv(dx, 0.3), 0.3 * N(rng)),
                           HPoint(rv(dx, 0.3), 0.3 * N(rng))}};
    case 3:
      return GlAction{Mat::Identity(dx, dx) + random_matrix(dx, rng, 0.2)};
    case 4: {
      const Mat B = A.transpose() * symplectic_matrix(d) * A;
      if (d == 1 || B.isZero(0.0)) return SpAction{symplectic_from_hamiltonian(rv(d * (2 * d + 1), 0.2), d)};
      return SpAction{Mat::Identity(dx, dx)};
    }
    case 5:
      return Shear{rv(dx, 0.3)};
    case 6:
      return ModulateX{rv(dx, 0.5)};
    default:
      return ModulateFull{rv(dx + 1, 0.5)};
  }
}

Check symmetry_invariance(const ExperimentConfig& c) {
  const int n = 2 * c.d + 1;
  std::mt19937_64 rng(c.seed + 6);
  std::normal_distribution<double> N;
  QuadratureScheme s = QuadratureScheme::gauss_hermite(16);
  s.threads = c.threads;
  double worst = 0.0;
  std::string failed;
  for (int kind = 0; kind < 8; ++kind) {
    GaussTriple f;
    for (int j = 0; j < 3; ++j) f[j] = random_gaussian_polynomial(n, c.seed + 2000 + 3 * kind + j, 1);
    const AttachedParams params{Mat::Identity(n - 1, n - 1) + random_matrix(n - 1, rng, 0.3), 0.5 * N(rng)};
    const SymmetryGen gen = random_generator(kind, c.d, params.A, rng);
    const InvarianceResidual r = invariance_residual(SymmetryWord{gen}, f, params, c.p, s);
    const double ratio = r.residual / std::max(r.error, 1e-300);
    worst = std::max(worst, ratio);
    if (r.residual > 3.0 * r.error) failed += " " + generator_name(gen);
  }
  double closed_worst = 0.0;
  for (int kind : {0, 3}) {
    GaussTriple f;
    for (int j = 0; j < 3; ++j) f[j] = random_gaussian_polynomial(n, c.seed + 3000 + 3 * kind + j, 0);
    const AttachedParams params{Mat::Zero(n - 1, n - 1), 0.5 * N(rng)};
    const SymmetryGen gen = random_generator(kind, c.d, params.A, rng);
    const InvarianceResidual r = invariance_residual(SymmetryWord{gen}, f, params, c.p, s);
    closed_worst = std::max(closed_worst, r.residual);
    if (r.residual > 1e-10) failed += " " + generator_name(gen) + "(closed)";
  }
  return {"symmetry-invariance", failed.empty(), worst, 3.0,
          "max residual/error over all generators; closed-form residual " + fmt(closed_worst) +
              (failed.empty() ? std::string() : "; failed:" + failed)};
}

Check hermite_gram(const ExperimentConfig& c) {
  double worst = 0.0, p0 = 0.0;
  std::vector<double> ts{1.0};
  for (int j = 0; j < 3; ++j) ts.push_back(c.p.tau(j));
  for (double t : ts) {
    const HermiteSystem H = hermite_system(t, 4);
    worst = std::max(worst, (H.gram - Mat::Identity(5, 5)).cwiseAbs().maxCoeff());
    p0 = std::max(p0, std::abs(H.coeffs[0](0) - std::pow(2.0 * t, 0.25)));
  }
  return {"hermite-gram", worst <= 1e-8 && p0 <= 1e-12, worst, 1e-8, "|P_0 - (2t)^(1/4)| = " + fmt(p0)};
}

}  // namespace

GaussTriple random_perturbation(const ExponentTriple& p, int d, double size, std::uint64_t seed) {
  const int n = 2 * d + 1;
  const auto g = standard_gaussians(p, n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N;
  GaussTriple f;
  for (int j = 0; j < 3; ++j) {
    Polynomial P(n);
    P.add(MultiIndex(n, 0), cplx(N(rng), N(rng)));
    for (int deg = 1; deg <= 2; ++deg) {
      for (int i = 0; i < n; ++i) {
        MultiIndex a(n, 0);
        a[i] = deg;
        P.add(a, cplx(N(rng), N(rng)));
      }
    }
    const GaussianPolynomial h = g[j].times(P);
    const double norm = std::pow(lp_power_gh(EvaluableFunction::from(h), p.p(j), 30), 1.0 / p.p(j));
    f[j] = (g[j] + h * cplx(size / norm)).canonical();
  }
  return f;
}

namespace {

Check balance_convergence(const ExperimentConfig& c) {
  int ok = 0, max_it = 0;
  double worst_res = 0.0, worst_growth = 0.0;
  for (int k = 0; k < 20; ++k) {
    const GaussTriple f = random_perturbation(c.p, c.d, 0.01, c.seed + 4000 + k);
    const BalanceResult b = balance(f, AttachedParams::identity(c.d), c.p);
    max_it = std::max(max_it, b.iterations);
    worst_res = std::max(worst_res, b.residual);
    const double growth = b.output_distance / b.input_distance;
    worst_growth = std::max(worst_growth, growth);
    if (b.converged && b.residual <= 1e-6 && b.iterations <= 30 && growth <= 2.0) ++ok;
  }
  return {"balance-convergence", ok == 20, worst_res, 1e-6,
          std::to_string(ok) + "/20 converged; max iterations " + std::to_string(max_it) +
              "; max distance growth " + fmt(worst_growth)};
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"sigma-first-moment", "sigma-second-moment", "shift-t-factor",
                                              "twist-quadratic",    "young-bound",         "symmetry-invariance",
                                              "hermite-gram",       "balance-convergence"};
  return names;
}

Check run_check(const std::string& name, const ExperimentConfig& config) {
  config.validate();
  if (name == "sigma-first-moment") return sigma_first_moment(config);
  if (name == "sigma-second-moment") return sigma_second_moment(config);
  if (name == "shift-t-factor") return shift_t_factor(config);
  if (name == "twist-quadratic") return twist_quadratic(config);
  if (name == "young-bound") return young_bound(config);
  if (name == "symmetry-invariance") return symmetry_invariance(config);
  if (name == "hermite-gram") return hermite_gram(config);
  if (name == "balance-convergence") return balance_convergence(config);
  throw std::invalid_argument("run_check: unknown check " + name);
}

VerifyReport verify_suite(const ExperimentConfig& config) {
  config.validate();
  VerifyReport r;
  for (const auto& name : check_names()) r.checks.push_back(run_check(name, config));
  return r;
}

}  // namespace hylab

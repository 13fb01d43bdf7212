#pragma once

#include <vector>

#include "hylab/quadrature.hpp"
#include "hylab/symmetry.hpp"

namespace hylab {

/// f = sharp + flat, where sharp keeps f(z) wherever |f(z)| <= eta |g(z)|.
struct SharpFlatSplit {
  EvaluableFunction sharp;
  EvaluableFunction flat;
  double eta = 0.1;
};

inline constexpr double kDefaultEta = 0.1;

SharpFlatSplit sharp_flat_split(const EvaluableFunction& f, const GaussianPolynomial& g, double eta = kDefaultEta);

/// \iint h1 h2 [h3(shifted) - h3(unshifted)] on shared nodes; zero when A = 0.
TrilinearResult tprime(const FunctionTriple& h, const Mat& A, const QuadratureScheme& scheme);

/// Second-order coefficients of the shift expansion for the standard Gaussians.
struct ShiftExpansion {
  /// Leading term equals c2 * ||A^T J A||^2.
  double c2 = 0.0;
  /// 2 gamma3 TC(2,2)/TC(0,2) - 1.
  double t_factor = 0.0;
  /// The same factor from the closed rational in the Gaussian rates.
  double t_factor_rational = 0.0;
  /// x-moment  \iint g g g beta^2 dx / ||A^T J A||^2.
  double x_factor = 0.0;
  /// t-integral  \iint g g g dt.
  double t_mass = 0.0;
  double defect_norm = 0.0;
  cplx tc00, tc02, tc22;
};

/// Coefficients for dimension n = 2d+1 at the given A (A = Id when A^T J A = 0).
ShiftExpansion tprime_gaussian_expansion(const ExponentTriple& p, const Mat& A, int d);

/// \iint h1 h2 h3(shifted) (e^{i b beta} - 1) on shared nodes; zero when b = 0.
TrilinearResult tdoubleprime(const FunctionTriple& h, const Mat& A, double b, const QuadratureScheme& scheme);

/// Low-order terms of the twist expansion for the standard Gaussians.
struct TwistExpansion {
  /// i b TC(0,1).
  cplx first_order;
  /// -(b^2/2) TC(0,2).
  double leading = 0.0;
  /// C with leading = -C b^2 ||A^T J A||^2.
  double constant = 0.0;
};

TwistExpansion tdoubleprime_gaussian_expansion(const ExponentTriple& p, const Mat& A, double b, int d);

/// Polynomials P_0..P_nmax orthonormal against exp(-2 t pi x^2).
struct HermiteSystem {
  double t = 1.0;
  /// coeffs[n](k) is the x^k coefficient of P_n.
  std::vector<Vec> coeffs;
  Mat gram;

  int nmax() const { return static_cast<int>(coeffs.size()) - 1; }
  double eval(int n, double x) const;
  /// prod_k P_{alpha_k}(z_k) as a polynomial in alpha.size() variables.
  Polynomial multi(const MultiIndex& alpha) const;
};

HermiteSystem hermite_system(double t, int nmax);

/// P_alpha^{(tau_j)} g_j, the Hermite mode of index alpha for function j.
GaussianPolynomial hermite_mode(const ExponentTriple& p, int j, const MultiIndex& alpha, int n);

struct OrthogonalityEntry {
  bool imaginary = false;
  int j = 0;
  MultiIndex alpha;
  double value = 0.0;
};

struct OrthogonalityResidual {
  std::vector<OrthogonalityEntry> entries;
  int count() const { return static_cast<int>(entries.size()); }
  Vec values() const;
  double max_abs() const;
};

/// Index set: Re with alpha = 0 for all j, |alpha| = 1 for j in {1,2},
/// |alpha| = 2 for j = 3; Im with alpha = 0 for all j, |alpha| = 1 for j = 3.
std::vector<OrthogonalityEntry> orthogonality_index_set(int n);

/// <f_j, P_alpha^{(tau_j)} g_j^{p_j - 1}> over the index set, in closed form.
OrthogonalityResidual orthogonality_residuals(const GaussTriple& f, const ExponentTriple& p);
/// Same pairing by Gauss-Hermite quadrature.
OrthogonalityResidual orthogonality_residuals(const FunctionTriple& f, const ExponentTriple& p, int nodes = 40);

struct BalanceConfig {
  double tol = 1e-6;
  int max_iterations = 100;
  double fd_step = 1e-5;
  double regime_radius = 0.05;
};

struct BalanceResult {
  GaussTriple h;
  AttachedParams params;
  SymmetryWord word;
  OrbitParams orbit;
  Vec theta;
  int iterations = 0;
  bool converged = false;
  bool in_regime = true;
  double initial_residual = 0.0;
  double residual = 0.0;
  int jacobian_rank = 0;
  Vec singular_values;
  /// max_j ||f_j - g_j||_{p_j} before and after.
  double input_distance = 0.0;
  double output_distance = 0.0;
};

/// Number of balancing parameters for dimension 2d+1.
int balance_parameter_count(int d);
/// Orbit coordinates of balancing parameters theta.
OrbitParams balance_orbit_params(const Vec& theta, int d);

/// Gauss-Newton zeroing of the orthogonality residuals over the symmetry
/// orbit of the normalized entry.
BalanceResult balance(const GaussTriple& f, const AttachedParams& params, const ExponentTriple& p,
                      const BalanceConfig& config = {});

/// max_j ||f_j - g_j||_{p_j} by Gauss-Hermite quadrature.
double max_distance_to_gaussians(const GaussTriple& f, const ExponentTriple& p, int nodes = 24);

}  // namespace hylab

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hylab/expansion.hpp"
#include "hylab/quadrature.hpp"
#include "hylab/symmetry.hpp"

namespace hylab {

struct ExperimentConfig {
  ExponentTriple p = ExponentTriple::symmetric();
  int d = 1;
  int gh_nodes = 40;
  std::int64_t mc_samples = 1'000'000;
  std::uint64_t seed = 20240607;
  int threads = 1;
  std::vector<double> lambda_grid{1, 2, 5, 10, 20, 50};
  std::vector<double> eps_grid{0.005, 0.0075, 0.01, 0.015, 0.02, 0.03, 0.05};
  MultiIndex mode_alpha{1, 1, 1};
  double mode_amplitude = 1.0;
  /// Relative objective tolerance of the distance optimizer.
  double tol = 1e-12;
  int distance_restarts = 2;
  int distance_evaluations = 1000;
  /// Random triples evaluated by the Young-bound check.
  int young_corpus = 200;
  std::int64_t young_samples = 100'000;

  /// Throws std::invalid_argument on empty, non-positive or unsorted grids.
  void validate() const;
};

/// One record of an experiment table.
struct ExperimentRow {
  double grid_value = 0.0;
  double phi = 0.0;
  double phi_err = 0.0;
  double deficit = 0.0;
  double deficit_err = 0.0;
  double dist_upper = 0.0;
  bool converged = false;
  double quadrature_gap = 0.0;
  std::int64_t evaluations = 0;
};

struct ExperimentTable {
  std::string name;
  std::string grid_name;
  std::vector<ExperimentRow> rows;
};

/// f_j = exp(-gamma_j (lambda |x|^2 + t^2/lambda + i t/lambda)).
GaussTriple lambda_family(const ExponentTriple& p, double lambda, int d = 1);

/// Orbit point that carries the standard Gaussians onto the lambda family.
OrbitParams lambda_family_hint(const ExponentTriple& p, double lambda, int d = 1);

/// Deficit at (Id, 0) by Monte Carlo and the orbit distance bound, per lambda.
ExperimentTable lambda_family_experiment(const ExperimentConfig& config);

/// g_j + eps * amplitude * (Hermite mode alpha of g_j) for every j.
GaussTriple mode_perturbation(const ExponentTriple& p, const MultiIndex& alpha, double eps);

struct ExponentFit {
  std::vector<double> log_dist;
  std::vector<double> log_deficit;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  /// Fewer than 5 usable points or non-positive inputs.
  bool degenerate = false;
  ExperimentTable table;
};

/// Least-squares line through (log dist, log deficit).
ExponentFit fit_exponent(const std::vector<double>& dist, const std::vector<double>& deficit);

/// Deficit against the distance bound along a mode perturbation at A = 0.
ExponentFit exponent_fit_experiment(const ExperimentConfig& config);

/// Phi with a Monte Carlo trilinear form and exact or Gauss-Hermite norms.
PhiResult phi_hybrid(const GaussTriple& f, const ExponentTriple& p, const AttachedParams& params,
                     const QuadratureScheme& trilinear_scheme, int norm_nodes = 40);

struct Check {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<Check> checks;
  int failures() const;
};

/// Checks: sigma-first-moment, sigma-second-moment, shift-t-factor,
/// twist-quadratic, young-bound, symmetry-invariance, hermite-gram,
/// balance-convergence.
VerifyReport verify_suite(const ExperimentConfig& config);

/// Names accepted by run_check, in verify_suite order.
const std::vector<std::string>& check_names();
/// Runs one named check; throws std::invalid_argument for an unknown name.
Check run_check(const std::string& name, const ExperimentConfig& config);

/// g_j plus g_j times a random quadratic, scaled to ||f_j - g_j||_{p_j} = size.
GaussTriple random_perturbation(const ExponentTriple& p, int d, double size, std::uint64_t seed);

/// Random Gaussian polynomial in n variables with well-conditioned Q.
GaussianPolynomial random_gaussian_polynomial(int n, std::uint64_t seed, int max_degree = 2);

}  // namespace hylab

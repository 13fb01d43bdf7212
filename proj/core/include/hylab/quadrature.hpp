#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "hylab/core.hpp"
#include "hylab/evaluable.hpp"

namespace hylab {

enum class Method { ClosedForm, GaussHermite, MonteCarlo };

const char* method_name(Method m);

struct QuadratureScheme {
  enum class Kind { GaussHermite, MonteCarlo };

  Kind kind = Kind::GaussHermite;
  int nodes_per_axis = 40;
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 20240607;
  /// Tensor nodes whose weight product falls below exp(-prune_budget) times
  /// the central weight are skipped.
  double prune_budget = 36.0;
  /// Worker threads; results do not depend on this value.
  int threads = 1;

  static QuadratureScheme gauss_hermite(int nodes);
  static QuadratureScheme monte_carlo(std::int64_t samples, std::uint64_t seed);
  /// Throws std::invalid_argument outside GH nodes in [10, 200] or MC samples >= 1e4.
  void validate() const;
};

/// Value with an error estimate: GH node-halving gap or MC standard error.
struct TrilinearResult {
  cplx value{0.0, 0.0};
  /// Error estimate for |value|.
  double error = 0.0;
  /// MC only: standard error of the complex mean.
  double stderr_complex = 0.0;
  Method method = Method::GaussHermite;
  std::int64_t evaluations = 0;
};

struct NormResult {
  double value = 0.0;
  double error = 0.0;
  Method method = Method::GaussHermite;
};

struct PhiResult {
  double value = 0.0;
  double error = 0.0;
  TrilinearResult trilinear;
  std::array<NormResult, 3> norms;
};

struct DeficitResult {
  double deficit = 0.0;
  double error = 0.0;
  double phi = 0.0;
  double phi_error = 0.0;
  double optimal = 0.0;
  /// Set when the deficit lies below -3 error estimates.
  bool young_violation = false;
};

using FunctionTriple = std::array<EvaluableFunction, 3>;
using GaussTriple = std::array<GaussianPolynomial, 3>;

FunctionTriple to_evaluable(const GaussTriple& f);

/// Which integrand the trilinear engine accumulates. All variants share
/// nodes or samples, so differences are free of independent noise.
enum class TrilinearVariant {
  /// f1 f2 f3(shifted) e^{i b beta}
  Full,
  /// f1 f2 [f3(shifted) - f3(unshifted)]
  ShiftDifference,
  /// f1 f2 f3(shifted) (e^{i b beta} - 1)
  TwistDifference,
};

TrilinearResult eval_trilinear(const FunctionTriple& f, const Mat& A, double b, const QuadratureScheme& scheme,
                               TrilinearVariant variant = TrilinearVariant::Full);
TrilinearResult eval_trilinear(const EvaluableFunction& f1, const EvaluableFunction& f2,
                               const EvaluableFunction& f3, const Mat& A, double b,
                               const QuadratureScheme& scheme);

NormResult lp_norm(const EvaluableFunction& f, double p, const QuadratureScheme& scheme);

/// Integral of |f|^p on a single pruned GH grid with `nodes` per axis.
double lp_power_gh(const EvaluableFunction& f, double p, int nodes, double prune_budget = 36.0);

/// Integral of F on a pruned GH grid adapted to exp(-(z-c)^T rate (z-c)).
cplx gh_integrate(const std::function<cplx(const double*)>& F, const Vec& center, const Mat& rate, int nodes,
                  double prune_budget = 36.0);

PhiResult phi(const FunctionTriple& f, const ExponentTriple& p, const Mat& A, double b,
              const QuadratureScheme& scheme);

DeficitResult deficit(const FunctionTriple& f, const ExponentTriple& p, const Mat& A, double b,
                      const QuadratureScheme& scheme);

/// Deficit from a Phi value with its error, in dimension n.
DeficitResult deficit_from_phi(double phi, double phi_error, const ExponentTriple& p, int n);

/// Runs body(chunk) for chunk in [0, chunks) on up to `threads` workers.
void parallel_for_chunks(std::size_t chunks, int threads, const std::function<void(std::size_t)>& body);

}  // namespace hylab

#pragma once

#include <functional>
#include <memory>
#include <span>

#include "hylab/gausspoly.hpp"
#include "hylab/types.hpp"

namespace hylab {

/// Gaussian decay bound |f(z)| <= amplitude * exp(-(z-c)^T rate (z-c)).
///
/// `profile` is the Gaussian used to place quadrature nodes; it should
/// follow the bulk of |f| and defaults to `rate`.
struct Envelope {
  Vec center;
  Mat rate;
  double amplitude = 1.0;
  Mat profile;

  Envelope() = default;
  Envelope(Vec center_, Mat rate_, double amplitude_, Mat profile_ = Mat());
  int dim() const { return static_cast<int>(center.size()); }
  double bound(const double* z) const;
  /// Rate scaled by s, with the same center and the amplitude raised to s.
  Envelope power(double s) const;
};

/// Envelope derived from the Gaussian factors of f.
Envelope derive_envelope(const GaussianPolynomial& f);

/// Pointwise-evaluable complex function on R^n with a Gaussian envelope.
class EvaluableFunction {
 public:
  using Evaluator = std::function<cplx(const double*)>;

  static constexpr int kEnvelopeChecks = 1000;

  EvaluableFunction() = default;
  /// Validates the envelope at kEnvelopeChecks random points; throws
  /// EnvelopeError on violation.
  EvaluableFunction(int dim, Evaluator f, Envelope env);
  /// Wraps a Gaussian polynomial with its derived envelope. The bound holds by
  /// construction, so no sampling check is run.
  static EvaluableFunction from(const GaussianPolynomial& f);
  /// The zero function.
  static EvaluableFunction zero(int dim);

  int dim() const { return dim_; }
  const Envelope& envelope() const { return env_; }
  cplx operator()(const double* z) const { return f_(z); }
  cplx operator()(std::span<const double> z) const { return f_(z.data()); }
  cplx operator()(const Vec& z) const { return f_(z.data()); }

  /// Exact source when built from a Gaussian polynomial.
  const GaussianPolynomial* source() const { return source_.get(); }

 private:
  int dim_ = 0;
  Evaluator f_;
  Envelope env_;
  std::shared_ptr<const GaussianPolynomial> source_;
};

}  // namespace hylab

#pragma once

#include <array>
#include <vector>

#include "hylab/polynomial.hpp"
#include "hylab/types.hpp"

namespace hylab {

/// coeff * z^powers * exp(-z^T Q z + l^T z).
struct GaussTerm {
  cplx coeff{1.0, 0.0};
  MultiIndex powers;
  CMat Q;
  CVec l;

  int dim() const { return static_cast<int>(l.size()); }
  static GaussTerm pure(const CMat& Q, const CVec& l, cplx coeff = 1.0);
};

/// Terms sharing the same Gaussian factor, merged into one polynomial.
struct GaussGroup {
  CMat Q;
  CVec l;
  Polynomial poly;
};

/// Finite sum of monomial-times-Gaussian terms. The empty sum is zero.
class GaussianPolynomial {
 public:
  explicit GaussianPolynomial(int n = 0) : n_(n) {}
  GaussianPolynomial(int n, std::vector<GaussTerm> terms);
  static GaussianPolynomial from_groups(int n, const std::vector<GaussGroup>& groups);
  /// exp(-gamma |z|^2).
  static GaussianPolynomial isotropic(int n, double gamma);

  int dim() const { return n_; }
  const std::vector<GaussTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(GaussTerm t);

  /// Terms grouped by identical (Q, l), in first-seen order.
  std::vector<GaussGroup> groups() const;
  /// Merges equal Gaussian factors and drops zero coefficients.
  GaussianPolynomial canonical() const;
  /// True for a single term with no polynomial factor.
  bool is_pure_gaussian() const;

  cplx operator()(const double* z) const;
  cplx operator()(const Vec& z) const { return (*this)(z.data()); }

  GaussianPolynomial operator+(const GaussianPolynomial& o) const;
  GaussianPolynomial operator-(const GaussianPolynomial& o) const;
  GaussianPolynomial operator*(cplx c) const;

  /// Multiplies by exp(i xi . z).
  GaussianPolynomial modulated(const Vec& xi) const;
  /// Multiplies by a polynomial.
  GaussianPolynomial times(const Polynomial& p) const;

  /// Throws std::domain_error unless every Re(Q) is positive definite.
  void validate() const;

 private:
  int n_;
  std::vector<GaussTerm> terms_;
};

GaussianPolynomial operator*(cplx c, const GaussianPolynomial& f);

/// Result of a closed-form integral.
struct IntegralValue {
  cplx value{0.0, 0.0};
  bool conditioning_warning = false;
  double max_condition = 0.0;
};

inline constexpr double kConditioningThreshold = 1e12;

/// Exact integral over R^n.
IntegralValue integrate(const GaussianPolynomial& f);

/// Gaussian moment E[z^alpha] for the density proportional to
/// exp(-z^T Q z + l^T z), continued analytically to complex Q and l.
class GaussianMoments {
 public:
  GaussianMoments(const CMat& Q, const CVec& l);
  cplx moment(const MultiIndex& alpha);
  /// pi^{n/2} det(Q)^{-1/2} exp(l^T Q^{-1} l / 4).
  cplx mass() const { return mass_; }
  double condition() const { return cond_; }

 private:
  CVec mean_;
  CMat cov_;
  cplx mass_;
  double cond_;
  std::map<MultiIndex, cplx> cache_;
};

/// det(Q)^{-1/2} on the branch continuous from Re(Q).
cplx det_inv_sqrt(const CMat& Q);

GaussianPolynomial product(const GaussianPolynomial& f, const GaussianPolynomial& g);

/// f(Mz + v) with M square; singular_warning is set when |det M| < 1e-12.
GaussianPolynomial substitute_affine(const GaussianPolynomial& f, const Mat& M, const Vec& v,
                                     bool* singular_warning = nullptr);

/// f(Mz + v) for an n x m matrix M, giving a function of m variables.
GaussianPolynomial pullback(const GaussianPolynomial& f, const Mat& M, const Vec& v);

/// Closed-form L^p norm of a single pure Gaussian term.
double lp_norm_closed(const GaussianPolynomial& f, double p);

/// Closed-form  \iint f1(z1) f2(z2) f3(-z1-z2) alpha^m beta^k  with
/// alpha = t1 + t2 and beta = sigma(A x1, A x2); the twist shift is absent.
cplx trilinear_closed(const GaussianPolynomial& f1, const GaussianPolynomial& f2,
                      const GaussianPolynomial& f3, const Mat& A, int m = 0, int k = 0);

class ExponentTriple;

/// |T(f, A, 0)| / prod ||f_j|| at A = 0, with closed-form norms.
double phi_closed(const std::array<GaussianPolynomial, 3>& f, const ExponentTriple& p);

/// Evaluator for repeated pointwise evaluation.
class CompiledGaussianPolynomial {
 public:
  explicit CompiledGaussianPolynomial(const GaussianPolynomial& f);
  int dim() const { return n_; }
  cplx operator()(const double* z) const;

 private:
  struct Mono {
    std::vector<int> powers;
    cplx coeff;
  };
  struct Group {
    CMat Q;
    CVec l;
    std::vector<Mono> monos;
    int maxpow;
  };
  int n_;
  std::vector<Group> groups_;
  int maxpow_ = 0;
};

}  // namespace hylab

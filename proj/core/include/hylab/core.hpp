#pragma once

#include <array>

#include "hylab/types.hpp"

namespace hylab {

class GaussianPolynomial;

/// Hölder exponents (p1, p2, p3) with conjugates, Gaussian rates and
/// Hermite weights precomputed.
class ExponentTriple {
 public:
  static constexpr double kAdmissibleTol = 1e-12;

  ExponentTriple(double p1, double p2, double p3);
  /// (3/2, 3/2, 3/2).
  static ExponentTriple symmetric();

  double p(int j) const { return p_[j]; }
  /// Conjugate exponent p/(p-1).
  double conj(int j) const { return pc_[j]; }
  /// Gaussian rate pi * p'.
  double gamma(int j) const { return gamma_[j]; }
  /// Hermite weight rate p p' / 2.
  double tau(int j) const { return tau_[j]; }

  bool admissible() const;
  bool strict_interior() const;

 private:
  std::array<double, 3> p_{}, pc_{}, gamma_{}, tau_{};
};

/// Point (x, t) of R^{2d} x R.
struct HPoint {
  Vec x;
  double t = 0.0;

  HPoint() = default;
  HPoint(Vec x_, double t_);
  int d() const { return static_cast<int>(x.size() / 2); }
};

/// Matrix A and twist frequency b deforming the group law.
struct AttachedParams {
  Mat A;
  double b = 0.0;

  static AttachedParams identity(int d);
  static AttachedParams euclidean(int d);
};

/// J = [[0, I], [-I, 0]] of size 2d.
Mat symplectic_matrix(int d);

double symplectic(const Vec& x, const Vec& y);

HPoint group_mul(const HPoint& z1, const HPoint& z2, const Mat& A);
HPoint group_inverse(const HPoint& z);

/// A_p^n.
double optimal_constant(const ExponentTriple& p, int n);

/// e^{-gamma_j |z|^2} in dimension n.
std::array<GaussianPolynomial, 3> standard_gaussians(const ExponentTriple& p, int n);

/// Spectral norm of A^T J A.
double symplectic_defect_norm(const Mat& A);

/// Spectral norm of a real matrix.
double spectral_norm(const Mat& M);

}  // namespace hylab

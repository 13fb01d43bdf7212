#include "hylab/core.hpp"

#include <cmath>

#include "hylab/gausspoly.hpp"

namespace hylab {

ExponentTriple::ExponentTriple(double p1, double p2, double p3) : p_{p1, p2, p3} {
  for (int j = 0; j < 3; ++j) {
    if (!(p_[j] > 1.0) || !std::isfinite(p_[j])) {
      throw std::invalid_argument("exponents must lie in (1, inf)");
    }
    pc_[j] = p_[j] / (p_[j] - 1.0);
    gamma_[j] = M_PI * pc_[j];
    tau_[j] = p_[j] * pc_[j] / 2.0;
  }
}

ExponentTriple ExponentTriple::symmetric() { return {1.5, 1.5, 1.5}; }

bool ExponentTriple::admissible() const {
  return std::abs(1.0 / p_[0] + 1.0 / p_[1] + 1.0 / p_[2] - 2.0) <= kAdmissibleTol;
}

bool ExponentTriple::strict_interior() const {
  for (double q : p_) {
    if (!(q > 1.0 && q < 2.0)) return false;
  }
  return true;
}

HPoint::HPoint(Vec x_, double t_) : x(std::move(x_)), t(t_) {
  if (x.size() < 2 || x.size() % 2 != 0) {
    throw std::invalid_argument("HPoint: x must have even length 2d with d >= 1");
  }
}

AttachedParams AttachedParams::identity(int d) { return {Mat::Identity(2 * d, 2 * d), 0.0}; }

AttachedParams AttachedParams::euclidean(int d) { return {Mat::Zero(2 * d, 2 * d), 0.0}; }

Mat symplectic_matrix(int d) {
  Mat J = Mat::Zero(2 * d, 2 * d);
  J.topRightCorner(d, d) = Mat::Identity(d, d);
  J.bottomLeftCorner(d, d) = -Mat::Identity(d, d);
  return J;
}

double symplectic(const Vec& x, const Vec& y) {
  if (x.size() != y.size() || x.size() % 2 != 0 || x.size() == 0) {
    throw std::invalid_argument("symplectic: vectors must share an even length");
  }
  const Eigen::Index d = x.size() / 2;
  double s = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) s += x[j] * y[j + d] - x[j + d] * y[j];
  return s;
}

HPoint group_mul(const HPoint& z1, const HPoint& z2, const Mat& A) {
  const Eigen::Index m = z1.x.size();
  if (z2.x.size() != m || A.rows() != m || A.cols() != m) {
    throw std::invalid_argument("group_mul: dimension mismatch");
  }
  return {z1.x + z2.x, z1.t + z2.t + symplectic(A * z1.x, A * z2.x)};
}

HPoint group_inverse(const HPoint& z) { return {-z.x, -z.t}; }

double optimal_constant(const ExponentTriple& p, int n) {
  if (!p.admissible()) throw std::invalid_argument("optimal_constant: exponents not admissible");
  if (n < 1) throw std::invalid_argument("optimal_constant: n must be positive");
  double logc = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double q = p.p(j), qc = p.conj(j);
    logc += std::log(q) / (2.0 * q) - std::log(qc) / (2.0 * qc);
  }
  return std::exp(n * logc);
}

std::array<GaussianPolynomial, 3> standard_gaussians(const ExponentTriple& p, int n) {
  return {GaussianPolynomial::isotropic(n, p.gamma(0)), GaussianPolynomial::isotropic(n, p.gamma(1)),
          GaussianPolynomial::isotropic(n, p.gamma(2))};
}

double spectral_norm(const Mat& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(M);
  return svd.singularValues()(0);
}

double symplectic_defect_norm(const Mat& A) {
  if (A.rows() != A.cols() || A.rows() % 2 != 0) {
    throw std::invalid_argument("symplectic_defect_norm: A must be square of even size");
  }
  const Mat J = symplectic_matrix(static_cast<int>(A.rows() / 2));
  return spectral_norm(A.transpose() * J * A);
}

}  // namespace hylab

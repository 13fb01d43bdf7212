#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hylab/core.hpp"
#include "hylab/gausspoly.hpp"
#include "hylab/quadrature.hpp"
#include "support.hpp"

using namespace hylab;
using boost::math::quadrature::gauss_kronrod;
using hylab::test::random_mat;
using hylab::test::random_vec;

namespace {

GaussianPolynomial term1d(cplx coeff, int power, cplx q, cplx l = 0.0) {
  GaussTerm t;
  t.coeff = coeff;
  t.powers = {power};
  t.Q = CMat::Constant(1, 1, q);
  t.l = CVec::Constant(1, l);
  return GaussianPolynomial(1, {t});
}

double gk_real(const std::function<double(double)>& f, double a, double b) {
  return gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

/// Random Gaussian term with Re(Q) >= 0.2 I plus a random symmetric imaginary part.
GaussTerm random_term(std::mt19937_64& rng, int n, int max_power) {
  std::uniform_int_distribution<int> pw(0, max_power);
  const Mat G = random_mat(rng, n, n, 0.4);
  const Mat R = G * G.transpose() + 0.2 * Mat::Identity(n, n);
  Mat S = random_mat(rng, n, n, 0.15);
  S = (S + S.transpose()).eval();
  GaussTerm t;
  t.coeff = cplx(random_vec(rng, 1)(0), random_vec(rng, 1)(0));
  t.powers.resize(n);
  int total = 0;
  for (int k = 0; k < n; ++k) {
    t.powers[k] = std::min(pw(rng), max_power - total);
    total += t.powers[k];
  }
  t.Q = R.cast<cplx>() + cplx(0, 1) * S.cast<cplx>();
  t.l = random_vec(rng, n, 0.3).cast<cplx>() + cplx(0, 1) * random_vec(rng, n, 0.3).cast<cplx>();
  return t;
}

/// Gauss-Hermite integral of a single term on a grid with rate Re(Q) + |Im(Q)|,
/// which balances decay against the chirp e^{-i z^T Im(Q) z}. The grid decays
/// faster than |f|, so tails are kept up to relative weight e^{-100}.
cplx gh_term(const GaussTerm& t, int nodes) {
  const int n = t.dim();
  const GaussianPolynomial f(n, {t});
  const CMat Qs = 0.5 * (t.Q + t.Q.transpose());
  const Mat R = Qs.real();
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat(Qs.imag()));
  const Mat absS = es.eigenvectors() * es.eigenvalues().cwiseAbs().asDiagonal() * es.eigenvectors().transpose();
  const Vec c = R.ldlt().solve(t.l.real()) / 2.0;
  return gh_integrate([&](const double* z) { return f(z); }, c, R + absS, nodes, 100.0);
}

}  // namespace

TEST(Integrate, OneDimensionalExamples) {
  EXPECT_NEAR(std::abs(integrate(term1d(1.0, 0, 1.0)).value - std::sqrt(M_PI)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(integrate(term1d(1.0, 1, 1.0)).value), 0.0, 1e-16);
  const double g = 3.0 * M_PI;
  const cplx v = integrate(term1d(1.0, 2, g)).value;
  const double oracle = gk_real([g](double x) { return x * x * std::exp(-g * x * x); }, -4.0, 4.0);
  EXPECT_NEAR(oracle, std::sqrt(M_PI) * std::pow(g, -1.5) / 2.0, 1e-14);
  EXPECT_NEAR(v.real(), oracle, 1e-14);
  EXPECT_NEAR(v.imag(), 0.0, 1e-16);
}

TEST(Integrate, MomentsAgainstAdaptiveQuadrature) {
  // Complex rate, complex linear term, powers up to 6.
  const cplx q(1.3, 0.7), l(0.4, -0.9);
  for (int k = 0; k <= 6; ++k) {
    const cplx v = integrate(term1d(1.0, k, q, l)).value;
    auto f = [&](double x) { return std::pow(x, k) * std::exp(-q * x * x + l * x); };
    const double re = gk_real([&](double x) { return f(x).real(); }, -12.0, 12.0);
    const double im = gk_real([&](double x) { return f(x).imag(); }, -12.0, 12.0);
    EXPECT_NEAR(v.real(), re, 1e-11) << "k=" << k;
    EXPECT_NEAR(v.imag(), im, 1e-11) << "k=" << k;
  }
}

TEST(Integrate, TwoDimensionalOscillatory) {
  CMat Q(2, 2);
  Q << 1.0, cplx(0, 0.25), cplx(0, 0.25), 1.0;
  GaussianPolynomial f(2, {GaussTerm::pure(Q, CVec::Zero(2))});
  const cplx v = integrate(f).value;
  EXPECT_NEAR(std::abs(v - M_PI / std::sqrt(Q.determinant())), 0.0, 1e-14);
  // Tensor adaptive quadrature of the oscillatory integrand.
  auto part = [&](bool imag) {
    return gk_real(
        [&](double x) {
          return gk_real(
              [&](double y) {
                const double z[2] = {x, y};
                const cplx w = f(z);
                return imag ? w.imag() : w.real();
              },
              -9.0, 9.0);
        },
        -9.0, 9.0);
  };
  EXPECT_NEAR(v.real(), part(false), 1e-12);
  EXPECT_NEAR(v.imag(), part(true), 1e-12);
}

TEST(Integrate, BranchFollowsContinuousDeformation) {
  // det((1+10i) I_3) has argument beyond pi; the principal branch would flip sign.
  const cplx q(1.0, 10.0);
  GaussianPolynomial f(3, {GaussTerm::pure(q * CMat::Identity(3, 3), CVec::Zero(3))});
  const cplx expected = std::pow(std::sqrt(M_PI / q), 3);
  EXPECT_NEAR(std::abs(integrate(f).value - expected), 0.0, 1e-14);
  const cplx principal = std::pow(M_PI, 1.5) / std::sqrt(std::pow(q, 3));
  EXPECT_GT(std::abs(principal - expected), 0.1);
}

TEST(Integrate, AgreesWithGaussHermiteOnRandomPolynomials) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    GaussianPolynomial f(n);
    cplx gh = 0.0;
    for (int k = 0; k < 3; ++k) {
      const GaussTerm t = random_term(rng, n, 4);
      f.add_term(t);
      gh += gh_term(t, n == 3 ? 40 : 60);
    }
    const cplx exact = integrate(f).value;
    EXPECT_LE(std::abs(exact - gh), 1e-6 * std::max(1.0, std::abs(exact))) << "trial " << trial;
  }
}

TEST(Integrate, Linear) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 3;
    GaussianPolynomial f(n, {random_term(rng, n, 3), random_term(rng, n, 2)});
    GaussianPolynomial g(n, {random_term(rng, n, 4)});
    const cplx a(0.7, -1.3);
    const cplx lhs = integrate(a * f + g).value;
    const cplx rhs = a * integrate(f).value + integrate(g).value;
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST(Integrate, EmptyIsZero) { EXPECT_EQ(integrate(GaussianPolynomial(2)).value, cplx(0.0)); }

TEST(Integrate, DomainError) {
  EXPECT_THROW(integrate(term1d(1.0, 0, cplx(-1.0, 1.0))), std::domain_error);
  EXPECT_THROW(integrate(term1d(1.0, 0, cplx(0.0, 1.0))), std::domain_error);
}

TEST(Integrate, ConditioningWarning) {
  CMat Q = CMat::Identity(2, 2);
  Q(1, 1) = 1e-13;
  const IntegralValue v = integrate(GaussianPolynomial(2, {GaussTerm::pure(Q, CVec::Zero(2))}));
  EXPECT_TRUE(v.conditioning_warning);
  EXPECT_GT(v.max_condition, kConditioningThreshold);
  EXPECT_FALSE(integrate(term1d(1.0, 0, 1.0)).conditioning_warning);
}

TEST(GaussianMoments, SecondMoment) {
  const double g = 2.5;
  GaussianMoments m(CMat::Constant(1, 1, g), CVec::Zero(1));
  EXPECT_NEAR(std::abs(m.moment({2}) - 1.0 / (2.0 * g)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m.moment({4}) - 3.0 / (4.0 * g * g)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m.mass() - std::sqrt(M_PI / g)), 0.0, 1e-15);
}

TEST(Product, Examples) {
  const GaussianPolynomial g = term1d(1.0, 0, 1.0);
  const GaussianPolynomial one = term1d(1.0, 0, 0.0);
  const double z[1] = {0.7};
  EXPECT_NEAR(std::abs(product(g, one)(z) - g(z)), 0.0, 1e-16);

  const GaussianPolynomial gg = product(g, g).canonical();
  ASSERT_EQ(gg.terms().size(), 1u);
  EXPECT_EQ(gg.terms()[0].Q(0, 0), cplx(2.0));

  const GaussianPolynomial x = term1d(1.0, 1, 1.0);
  const GaussianPolynomial xx = product(x, x).canonical();
  ASSERT_EQ(xx.terms().size(), 1u);
  EXPECT_EQ(xx.terms()[0].powers, MultiIndex{2});
  EXPECT_EQ(xx.terms()[0].Q(0, 0), cplx(2.0));

  EXPECT_THROW(product(g, GaussianPolynomial::isotropic(2, 1.0)), std::invalid_argument);
}

TEST(Product, PointwiseOnRandomInputs) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    GaussianPolynomial f(2, {random_term(rng, 2, 3), random_term(rng, 2, 2)});
    GaussianPolynomial g(2, {random_term(rng, 2, 3)});
    const GaussianPolynomial fg = product(f, g);
    for (int k = 0; k < 5; ++k) {
      const Vec z = random_vec(rng, 2);
      EXPECT_LE(std::abs(fg(z) - f(z) * g(z)), 1e-12 * (1 + std::abs(f(z) * g(z))));
    }
  }
}

TEST(SubstituteAffine, Examples) {
  const GaussianPolynomial f = term1d(1.0, 0, 1.0);
  const GaussianPolynomial same = substitute_affine(f, Mat::Identity(1, 1), Vec::Zero(1));
  EXPECT_EQ(same.terms()[0].Q(0, 0), cplx(1.0));
  const GaussianPolynomial f2 = substitute_affine(f, Mat::Constant(1, 1, 2.0), Vec::Zero(1)).canonical();
  ASSERT_EQ(f2.terms().size(), 1u);
  EXPECT_NEAR(std::abs(f2.terms()[0].Q(0, 0) - 4.0), 0.0, 1e-15);
  EXPECT_THROW(substitute_affine(f, Mat::Zero(1, 2), Vec::Zero(1)), std::invalid_argument);
}

TEST(SubstituteAffine, SingularWarning) {
  bool warn = false;
  substitute_affine(GaussianPolynomial::isotropic(2, 1.0), Mat::Identity(2, 2), Vec::Zero(2), &warn);
  EXPECT_FALSE(warn);
  Mat M(2, 2);
  M << 1, 2, 2, 4;
  substitute_affine(GaussianPolynomial::isotropic(2, 1.0), M, Vec::Zero(2), &warn);
  EXPECT_TRUE(warn);
}

TEST(SubstituteAffine, IntegralScalesByDeterminant) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 3;
    GaussTerm t = random_term(rng, n, 0);
    const GaussianPolynomial f(n, {t});
    Mat M = random_mat(rng, n, n) + 0.5 * Mat::Identity(n, n);
    if (std::abs(M.determinant()) < 0.1) continue;
    const cplx lhs = integrate(substitute_affine(f, M, Vec::Zero(n))).value;
    const cplx rhs = integrate(f).value / std::abs(M.determinant());
    EXPECT_LE(std::abs(lhs - rhs), 1e-11 * std::abs(rhs));
  }
}

TEST(SubstituteAffine, PointwiseWithShift) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    GaussianPolynomial f(3, {random_term(rng, 3, 4)});
    const Mat M = random_mat(rng, 3, 3);
    const Vec v = random_vec(rng, 3);
    const GaussianPolynomial g = substitute_affine(f, M, v);
    for (int k = 0; k < 5; ++k) {
      const Vec z = random_vec(rng, 3, 0.5);
      const Vec w = M * z + v;
      EXPECT_LE(std::abs(g(z) - f(w)), 1e-10 * (1 + std::abs(f(w))));
    }
  }
}

TEST(LpNormClosed, Examples) {
  const GaussianPolynomial g = GaussianPolynomial::isotropic(1, 3.0 * M_PI);
  const double expected = std::pow(std::sqrt(2.0) / 3.0, 2.0 / 3.0);
  EXPECT_NEAR(lp_norm_closed(g, 1.5), expected, 1e-14);
  const double oracle =
      std::pow(gk_real([](double x) { return std::exp(-1.5 * 3.0 * M_PI * x * x); }, -3.0, 3.0), 2.0 / 3.0);
  EXPECT_NEAR(lp_norm_closed(g, 1.5), oracle, 1e-13);

  const GaussianPolynomial mod = g.modulated(Vec::Constant(1, 2.7));
  EXPECT_NEAR(lp_norm_closed(mod, 1.5), expected, 1e-14);
  EXPECT_NEAR(lp_norm_closed(cplx(-2.0, 1.0) * g, 1.5), std::sqrt(5.0) * expected, 1e-13);
}

TEST(LpNormClosed, RejectsNonPure) {
  EXPECT_THROW(lp_norm_closed(term1d(1.0, 1, 1.0), 2.0), Unsupported);
  EXPECT_THROW(lp_norm_closed(term1d(1.0, 0, 1.0) + term1d(1.0, 0, 2.0), 2.0), Unsupported);
  EXPECT_THROW(lp_norm_closed(term1d(1.0, 0, 1.0), 0.5), std::invalid_argument);
  EXPECT_EQ(lp_norm_closed(GaussianPolynomial(1), 2.0), 0.0);
}

TEST(LpNormClosed, ComplexRateAndShift) {
  const GaussianPolynomial f = term1d(cplx(0.5, 0.5), 0, cplx(2.0, 3.0), cplx(1.0, -4.0));
  const double p = 1.7;
  const double oracle = std::pow(
      gk_real([&](double x) { return std::pow(std::abs(f(&x)), p); }, -6.0, 6.0), 1.0 / p);
  EXPECT_NEAR(lp_norm_closed(f, p), oracle, 1e-12);
}

TEST(TrilinearClosed, GaussianValue) {
  const ExponentTriple p = ExponentTriple::symmetric();
  const double g = 3.0 * M_PI;
  for (int n : {1, 3, 5}) {
    const auto gs = standard_gaussians(p, n);
    const cplx v = trilinear_closed(gs[0], gs[1], gs[2], Mat::Zero(n - 1, n - 1));
    const double expected = std::pow(M_PI * M_PI / (3.0 * g * g), n / 2.0);
    EXPECT_NEAR(std::abs(v - expected), 0.0, 1e-13 * expected) << "n=" << n;
  }
  const auto g1 = standard_gaussians(p, 1);
  EXPECT_NEAR(trilinear_closed(g1[0], g1[1], g1[2], Mat::Zero(0, 0)).real(), 1.0 / std::sqrt(27.0), 1e-14);
}

TEST(TrilinearClosed, GeneralExponents) {
  const ExponentTriple p(1.3, 1.6, 1.0 / (2.0 - 1.0 / 1.3 - 1.0 / 1.6));
  const auto gs = standard_gaussians(p, 3);
  const double s = p.gamma(0) * p.gamma(1) + p.gamma(0) * p.gamma(2) + p.gamma(1) * p.gamma(2);
  const cplx v = trilinear_closed(gs[0], gs[1], gs[2], Mat::Identity(2, 2));
  EXPECT_NEAR(v.real(), std::pow(M_PI * M_PI / s, 1.5), 1e-14);
}

TEST(TrilinearClosed, SingleAlphaVanishes) {
  const auto gs = standard_gaussians(ExponentTriple::symmetric(), 3);
  std::mt19937_64 rng(16);
  const cplx scale = trilinear_closed(gs[0], gs[1], gs[2], Mat::Identity(2, 2));
  for (int i = 0; i < 5; ++i) {
    const Mat A = random_mat(rng, 2, 2);
    EXPECT_LE(std::abs(trilinear_closed(gs[0], gs[1], gs[2], A, 1, 0)), 1e-14 * std::abs(scale));
  }
}

TEST(TrilinearClosed, FirstSigmaMomentVanishesForAnyF1) {
  const ExponentTriple p = ExponentTriple::symmetric();
  const auto gs = standard_gaussians(p, 3);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    GaussianPolynomial f1(3, {random_term(rng, 3, 3), random_term(rng, 3, 2)});
    const Mat A = random_mat(rng, 2, 2);
    const cplx base = trilinear_closed(f1, gs[1], gs[2], A, 0, 0);
    const cplx first = trilinear_closed(f1, gs[1], gs[2], A, 0, 1);
    EXPECT_LE(std::abs(first), 1e-10 * std::abs(base)) << "trial " << trial;
  }
}

TEST(TrilinearClosed, SecondSigmaMomentProportionalToDefectSquared) {
  const auto gs = standard_gaussians(ExponentTriple::symmetric(), 3);
  std::mt19937_64 rng(18);
  std::vector<double> ratios;
  for (int trial = 0; trial < 20; ++trial) {
    const Mat A = random_mat(rng, 2, 2);
    const double dn = symplectic_defect_norm(A);
    const cplx v = trilinear_closed(gs[0], gs[1], gs[2], A, 0, 2);
    EXPECT_NEAR(v.imag(), 0.0, 1e-14);
    ratios.push_back(v.real() / (dn * dn));
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  EXPECT_GT(*lo, 0.0);
  EXPECT_LE((*hi - *lo) / *hi, 1e-8);
}

TEST(TrilinearClosed, SecondSigmaMomentAgainstQuadrature) {
  // (0,2) term by direct Gauss-Hermite over R^6 at A = Id.
  const auto gs = standard_gaussians(ExponentTriple::symmetric(), 3);
  const cplx exact = trilinear_closed(gs[0], gs[1], gs[2], Mat::Identity(2, 2), 0, 2);
  const double g = 3.0 * M_PI;
  Mat rate = Mat::Zero(6, 6);
  rate.topLeftCorner(3, 3) = 2 * g * Mat::Identity(3, 3);
  rate.bottomRightCorner(3, 3) = 2 * g * Mat::Identity(3, 3);
  rate.topRightCorner(3, 3) = g * Mat::Identity(3, 3);
  rate.bottomLeftCorner(3, 3) = g * Mat::Identity(3, 3);
  const cplx gh = gh_integrate(
      [&](const double* z) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += z[k] * z[k] + z[3 + k] * z[3 + k] + (z[k] + z[3 + k]) * (z[k] + z[3 + k]);
        const double beta = z[0] * z[4] - z[1] * z[3];
        return cplx(beta * beta * std::exp(-g * s));
      },
      Vec::Zero(6), rate, 12);
  EXPECT_NEAR(std::abs(exact - gh), 0.0, 1e-10 * std::abs(exact));
}

TEST(TrilinearClosed, ArgumentChecks) {
  const auto gs = standard_gaussians(ExponentTriple::symmetric(), 3);
  EXPECT_THROW(trilinear_closed(gs[0], gs[1], gs[2], Mat::Zero(3, 3)), std::invalid_argument);
  EXPECT_THROW(trilinear_closed(gs[0], gs[1], gs[2], Mat::Zero(2, 2), -1, 0), std::invalid_argument);
  const auto g2 = standard_gaussians(ExponentTriple::symmetric(), 2);
  EXPECT_THROW(trilinear_closed(g2[0], g2[1], g2[2], Mat::Zero(1, 1)), std::invalid_argument);
}

TEST(CompiledGaussianPolynomial, MatchesDirectEvaluation) {
  std::mt19937_64 rng(19);
  GaussianPolynomial f(3, {random_term(rng, 3, 4), random_term(rng, 3, 2), random_term(rng, 3, 0)});
  const CompiledGaussianPolynomial c(f);
  for (int k = 0; k < 20; ++k) {
    const Vec z = random_vec(rng, 3);
    EXPECT_LE(std::abs(c(z.data()) - f(z)), 1e-12 * (1 + std::abs(f(z))));
  }
}

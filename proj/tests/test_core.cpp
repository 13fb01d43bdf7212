#include <gtest/gtest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "hylab/core.hpp"
#include "hylab/gausspoly.hpp"
#include "support.hpp"

using namespace hylab;
using hylab::test::random_mat;
using hylab::test::random_point;
using hylab::test::random_vec;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST(ExponentTriple, DerivedQuantities) {
  const ExponentTriple p = ExponentTriple::symmetric();
  for (int j = 0; j < 3; ++j) {
    EXPECT_DOUBLE_EQ(p.conj(j), 3.0);
    EXPECT_NEAR(p.gamma(j), 3.0 * M_PI, 1e-14);
    EXPECT_DOUBLE_EQ(p.tau(j), 2.25);
  }
  EXPECT_TRUE(p.admissible());
  EXPECT_TRUE(p.strict_interior());
}

TEST(ExponentTriple, AdmissibilityAndInterior) {
  EXPECT_FALSE(ExponentTriple(1.5, 1.5, 1.6).admissible());
  const ExponentTriple outside(2.5, 1.25, 1.0 / (2.0 - 1.0 / 2.5 - 1.0 / 1.25));
  EXPECT_TRUE(outside.admissible());
  EXPECT_FALSE(outside.strict_interior());
  EXPECT_THROW(ExponentTriple(1.0, 1.5, 1.5), std::invalid_argument);
  EXPECT_THROW(ExponentTriple(0.5, 1.5, 1.5), std::invalid_argument);
}

TEST(ExponentTriple, AdmissibilityTolerance) {
  const double p3 = 1.0 / (2.0 - 1.0 / 1.4 - 1.0 / 1.7);
  EXPECT_TRUE(ExponentTriple(1.4, 1.7, p3).admissible());
  EXPECT_FALSE(ExponentTriple(1.4, 1.7, p3 * (1 + 1e-9)).admissible());
}

TEST(Symplectic, Examples) {
  EXPECT_DOUBLE_EQ(symplectic(v2(1, 0), v2(0, 1)), 1.0);
  EXPECT_DOUBLE_EQ(symplectic(v2(2, 3), v2(5, 7)), -1.0);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10; ++i) {
    const Vec x = random_vec(rng, 4);
    EXPECT_DOUBLE_EQ(symplectic(x, x), 0.0);
  }
}

TEST(Symplectic, MatchesJForm) {
  std::mt19937_64 rng(2);
  for (int d = 1; d <= 3; ++d) {
    const Mat J = symplectic_matrix(d);
    for (int i = 0; i < 10; ++i) {
      const Vec x = random_vec(rng, 2 * d), y = random_vec(rng, 2 * d);
      EXPECT_NEAR(symplectic(x, y), x.dot(J * y), 1e-13);
    }
  }
}

TEST(Symplectic, Antisymmetric) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const Vec x = random_vec(rng, 2), y = random_vec(rng, 2);
    EXPECT_NEAR(symplectic(x, y), -symplectic(y, x), 1e-15);
  }
}

TEST(Symplectic, DimensionMismatch) {
  EXPECT_THROW(symplectic(v2(1, 0), Vec::Zero(4)), std::invalid_argument);
  EXPECT_THROW(symplectic(Vec::Zero(3), Vec::Zero(3)), std::invalid_argument);
}

TEST(GroupMul, Examples) {
  const HPoint a(v2(1, 0), 3), b(v2(0, 1), 4);
  const HPoint e = group_mul(a, b, Mat::Zero(2, 2));
  EXPECT_EQ(e.x, v2(1, 1));
  EXPECT_DOUBLE_EQ(e.t, 7.0);

  const HPoint h = group_mul(HPoint(v2(1, 0), 0), HPoint(v2(0, 1), 0), Mat::Identity(2, 2));
  EXPECT_EQ(h.x, v2(1, 1));
  EXPECT_DOUBLE_EQ(h.t, 1.0);
}

TEST(GroupMul, InverseGivesIdentity) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 30; ++i) {
    const HPoint z = random_point(rng, 2);
    const Mat A = random_mat(rng, 4, 4);
    const HPoint e = group_mul(z, group_inverse(z), A);
    EXPECT_LE(e.x.norm(), 1e-15);
    EXPECT_NEAR(e.t, 0.0, 1e-12);
    const HPoint e2 = group_mul(group_inverse(z), z, A);
    EXPECT_NEAR(e2.t, 0.0, 1e-12);
  }
}

TEST(GroupMul, HeisenbergAssociative) {
  std::mt19937_64 rng(5);
  const Mat I = Mat::Identity(2, 2);
  for (int i = 0; i < 100; ++i) {
    const HPoint a = random_point(rng, 1), b = random_point(rng, 1), c = random_point(rng, 1);
    const HPoint l = group_mul(group_mul(a, b, I), c, I);
    const HPoint r = group_mul(a, group_mul(b, c, I), I);
    EXPECT_LE((l.x - r.x).norm(), 1e-12);
    EXPECT_NEAR(l.t, r.t, 1e-12);
  }
}

TEST(GroupMul, DimensionMismatch) {
  EXPECT_THROW(group_mul(HPoint(v2(1, 0), 0), HPoint(Vec::Zero(4), 0), Mat::Identity(2, 2)),
               std::invalid_argument);
  EXPECT_THROW(group_mul(HPoint(v2(1, 0), 0), HPoint(v2(1, 0), 0), Mat::Identity(4, 4)), std::invalid_argument);
  EXPECT_THROW(HPoint(Vec::Zero(3), 0), std::invalid_argument);
}

TEST(OptimalConstant, SymmetricValues) {
  const ExponentTriple p = ExponentTriple::symmetric();
  EXPECT_NEAR(optimal_constant(p, 1), std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_NEAR(optimal_constant(p, 3), 3.0 * std::sqrt(3.0) / 8.0, 1e-15);
}

TEST(OptimalConstant, Multiplicative) {
  const ExponentTriple p(1.3, 1.6, 1.0 / (2.0 - 1.0 / 1.3 - 1.0 / 1.6));
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 4; ++n)
      EXPECT_NEAR(optimal_constant(p, m + n), optimal_constant(p, m) * optimal_constant(p, n), 1e-12);
}

TEST(OptimalConstant, BelowOneOnInteriorGrid) {
  for (double p1 = 1.05; p1 < 1.96; p1 += 0.05) {
    for (double p2 = 1.05; p2 < 1.96; p2 += 0.05) {
      const double s = 2.0 - 1.0 / p1 - 1.0 / p2;
      if (s <= 0.5 || s >= 1.0 / 1.05) continue;
      const ExponentTriple p(p1, p2, 1.0 / s);
      ASSERT_TRUE(p.admissible());
      // Direct product formula as an independent evaluation.
      double direct = 1.0;
      for (double q : {p1, p2, 1.0 / s}) {
        const double qc = q / (q - 1.0);
        direct *= std::pow(q, 1.0 / (2.0 * q)) / std::pow(qc, 1.0 / (2.0 * qc));
      }
      EXPECT_NEAR(optimal_constant(p, 1), direct, 1e-13);
      EXPECT_LT(optimal_constant(p, 1), 1.0);
    }
  }
}

TEST(OptimalConstant, RejectsNonAdmissible) {
  EXPECT_THROW(optimal_constant(ExponentTriple(1.5, 1.5, 1.6), 1), std::invalid_argument);
  EXPECT_THROW(optimal_constant(ExponentTriple::symmetric(), 0), std::invalid_argument);
}

TEST(StandardGaussians, RatesAndNorms) {
  const ExponentTriple p = ExponentTriple::symmetric();
  const auto g = standard_gaussians(p, 1);
  for (int j = 0; j < 3; ++j) {
    ASSERT_TRUE(g[j].is_pure_gaussian());
    EXPECT_NEAR(g[j].terms()[0].Q(0, 0).real(), 3.0 * M_PI, 1e-14);
    EXPECT_EQ(g[j].terms()[0].l(0), cplx(0.0));
    EXPECT_EQ(g[j].terms()[0].coeff, cplx(1.0));
    EXPECT_NEAR(lp_norm_closed(g[j], 1.5), std::pow(std::sqrt(2.0) / 3.0, 2.0 / 3.0), 1e-14);
  }
  const auto g3 = standard_gaussians(p, 3);
  EXPECT_EQ(g3[0].dim(), 3);
  EXPECT_TRUE(g3[2].terms()[0].Q.isApprox(3.0 * M_PI * CMat::Identity(3, 3)));
}

TEST(StandardGaussians, EqualityCaseInOneDimension) {
  const ExponentTriple p = ExponentTriple::symmetric();
  const auto g = standard_gaussians(p, 1);
  Mat e1(1, 2), e2(1, 2), e3(1, 2);
  e1 << 1, 0;
  e2 << 0, 1;
  e3 << -1, -1;
  const Vec zero = Vec::Zero(1);
  const GaussianPolynomial integrand =
      product(product(pullback(g[0], e1, zero), pullback(g[1], e2, zero)), pullback(g[2], e3, zero));
  const cplx T = integrate(integrand).value;
  EXPECT_NEAR(T.real(), 1.0 / std::sqrt(27.0), 1e-14);
  EXPECT_NEAR(T.imag(), 0.0, 1e-15);
  double norms = 1.0;
  for (int j = 0; j < 3; ++j) norms *= lp_norm_closed(g[j], 1.5);
  EXPECT_NEAR(norms, 2.0 / 9.0, 1e-14);
  EXPECT_NEAR(T.real() / norms, optimal_constant(p, 1), 1e-13);
}

TEST(SymplecticDefectNorm, Examples) {
  EXPECT_NEAR(symplectic_defect_norm(Mat::Identity(2, 2)), 1.0, 1e-15);
  EXPECT_NEAR(symplectic_defect_norm(0.3 * Mat::Identity(4, 4)), 0.09, 1e-15);
  EXPECT_EQ(symplectic_defect_norm(Mat::Zero(2, 2)), 0.0);
  EXPECT_THROW(symplectic_defect_norm(Mat::Zero(2, 3)), std::invalid_argument);
}

TEST(SymplecticDefectNorm, InvariantUnderSymplecticLeftAction) {
  std::mt19937_64 rng(6);
  for (int d = 1; d <= 2; ++d) {
    const Mat J = symplectic_matrix(d);
    for (int i = 0; i < 20; ++i) {
      Mat Q = random_mat(rng, 2 * d, 2 * d, 0.5);
      Q = (Q + Q.transpose()).eval();
      const Mat S = (J * Q).exp();
      ASSERT_LE((S.transpose() * J * S - J).norm(), 1e-10);
      const Mat A = random_mat(rng, 2 * d, 2 * d);
      EXPECT_NEAR(symplectic_defect_norm(S * A), symplectic_defect_norm(A),
                  1e-10 * std::max(1.0, symplectic_defect_norm(A)));
    }
  }
}

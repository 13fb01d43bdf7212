#include <gtest/gtest.h>

#include <cmath>

#include "hylab/lab.hpp"
#include "hylab/symmetry.hpp"
#include "support.hpp"

using namespace hylab;
using hylab::test::random_mat;
using hylab::test::random_point;
using hylab::test::random_vec;

namespace {

const ExponentTriple kP = ExponentTriple::symmetric();

GaussTriple standard3() { return standard_gaussians(kP, 3); }

double max_pointwise_gap(const GaussTriple& a, const GaussTriple& b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Vec z = random_vec(rng, 3, 0.4);
    for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(a[j](z) - b[j](z)));
  }
  return worst;
}

Mat random_symplectic(std::mt19937_64& rng, double scale) {
  return symplectic_from_hamiltonian(random_vec(rng, 3, scale), 1);
}

std::vector<SymmetryGen> one_of_each(std::mt19937_64& rng) {
  TranslateMod tm;
  for (auto& u : tm.u) u = random_point(rng, 1, 0.15);
  Vec full = random_vec(rng, 3, 0.8);
  return {Scale{{cplx(1.3, 0.4), cplx(-0.7, 0.2), cplx(0.5, -1.1)}},
          Dilate{1.4},
          tm,
          GlAction{Mat::Identity(2, 2) + random_mat(rng, 2, 2, 0.3)},
          SpAction{random_symplectic(rng, 0.3)},
          Shear{random_vec(rng, 2, 0.4)},
          ModulateX{random_vec(rng, 2, 0.8)},
          ModulateFull{full}};
}

}  // namespace

TEST(Apply, EmptyWordIsIdentity) {
  const GaussTriple f = random_perturbation(kP, 1, 0.1, 1);
  const AttachedParams pr{Mat::Identity(2, 2), 0.4};
  const Transformed t = apply(SymmetryWord{}, f, pr);
  EXPECT_EQ(max_pointwise_gap(t.f, f, 1), 0.0);
  EXPECT_EQ(t.params.A, pr.A);
  EXPECT_EQ(t.params.b, pr.b);
}

TEST(Apply, AttachedParameterBookkeeping) {
  const GaussTriple g = standard3();
  const AttachedParams pr{Mat::Identity(2, 2) * 0.7, 0.3};
  const Transformed d = apply(SymmetryGen{Dilate{2.0}}, g, pr);
  EXPECT_EQ(d.params.A, pr.A);
  EXPECT_DOUBLE_EQ(d.params.b, 1.2);

  Mat L(2, 2);
  L << 1.0, 0.5, -0.2, 2.0;
  const Transformed gl = apply(SymmetryGen{GlAction{L}}, g, pr);
  EXPECT_TRUE(gl.params.A.isApprox(pr.A * L));
  EXPECT_EQ(gl.params.b, pr.b);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) {
    const Vec z = random_vec(rng, 3, 0.3);
    Vec w = z;
    w.head(2) = L * z.head(2);
    EXPECT_NEAR(std::abs(gl.f[1](z) - g[1](w)), 0.0, 1e-14);
  }

  Vec xi = Vec::Zero(3);
  xi(2) = 0.9;
  const Transformed mf = apply(SymmetryGen{ModulateFull{xi}}, g, pr);
  EXPECT_DOUBLE_EQ(mf.params.b, 1.2);

  for (const SymmetryGen& gen : {SymmetryGen{Scale{}}, SymmetryGen{Shear{Vec::Ones(2)}},
                                 SymmetryGen{ModulateX{Vec::Ones(2)}}}) {
    const Transformed t = apply(gen, g, pr);
    EXPECT_EQ(t.params.A, pr.A);
    EXPECT_EQ(t.params.b, pr.b);
  }
}

TEST(Apply, ClosureForEveryGenerator) {
  std::mt19937_64 rng(3);
  const GaussTriple f = random_perturbation(kP, 1, 0.1, 3);
  const AttachedParams pr{random_mat(rng, 2, 2), 0.5};
  for (const SymmetryGen& gen : one_of_each(rng)) {
    const Transformed t = apply(gen, f, pr);
    for (int j = 0; j < 3; ++j) {
      EXPECT_EQ(t.f[j].dim(), 3) << generator_name(gen);
      EXPECT_FALSE(t.f[j].is_zero()) << generator_name(gen);
      EXPECT_NO_THROW(t.f[j].validate()) << generator_name(gen);
    }
  }
}

TEST(Apply, GroupClassLabels) {
  const SymmetryWord w{Scale{}, GlAction{Mat::Identity(2, 2)}, Dilate{2.0}, ModulateFull{Vec::Zero(3)}};
  EXPECT_EQ(w.labels(), (std::vector<GroupClass>{GroupClass::G1, GroupClass::G0, GroupClass::G1, GroupClass::G0}));
  EXPECT_EQ(generator_name(SymmetryGen{Shear{}}), "Shear");
}

TEST(Apply, DegenerateGeneratorsRejected) {
  const GaussTriple g = standard3();
  const AttachedParams pr = AttachedParams::identity(1);
  EXPECT_THROW(apply(SymmetryGen{Scale{{0.0, 1.0, 1.0}}}, g, pr), std::invalid_argument);
  EXPECT_THROW(apply(SymmetryGen{Dilate{0.0}}, g, pr), std::invalid_argument);
  EXPECT_THROW(apply(SymmetryGen{Dilate{-1.0}}, g, pr), std::invalid_argument);
  Mat sing(2, 2);
  sing << 1, 2, 2, 4;
  EXPECT_THROW(apply(SymmetryGen{GlAction{sing}}, g, pr), std::invalid_argument);
  Mat notsp(2, 2);
  notsp << 2, 0, 0, 1;
  EXPECT_THROW(apply(SymmetryGen{SpAction{notsp}}, g, pr), std::invalid_argument);
  EXPECT_THROW(apply(SymmetryGen{Shear{Vec::Ones(3)}}, g, pr), std::invalid_argument);
  EXPECT_THROW(apply(SymmetryGen{ModulateFull{Vec::Ones(2)}}, g, pr), std::invalid_argument);
}

TEST(InvarianceResidual, ScaleIsExactInClosedForm) {
  const InvarianceResidual r =
      invariance_residual(SymmetryWord{Scale{{cplx(2.0, 1.0), cplx(0.1, 0.0), cplx(0.0, -3.0)}}}, standard3(),
                          AttachedParams::euclidean(1), kP, QuadratureScheme::gauss_hermite(16));
  EXPECT_EQ(r.method, Method::ClosedForm);
  EXPECT_LE(r.residual, 1e-12);
}

TEST(InvarianceResidual, GlActionAtEuclideanIsExact) {
  Mat L(2, 2);
  L << 1.3, 0.4, -0.5, 0.8;
  const InvarianceResidual r = invariance_residual(SymmetryWord{GlAction{L}}, standard3(), AttachedParams::euclidean(1),
                                                   kP, QuadratureScheme::gauss_hermite(16));
  EXPECT_EQ(r.method, Method::ClosedForm);
  EXPECT_LE(r.residual, 1e-10);
}

TEST(InvarianceResidual, SymplecticAtHeisenberg) {
  std::mt19937_64 rng(4);
  const InvarianceResidual r = invariance_residual(SymmetryWord{SpAction{random_symplectic(rng, 0.4)}}, standard3(),
                                                   AttachedParams::identity(1), kP, QuadratureScheme::gauss_hermite(16));
  EXPECT_EQ(r.method, Method::GaussHermite);
  EXPECT_LE(r.residual, 3.0 * r.error + 1e-13);
}

TEST(InvarianceResidual, TwistModulation) {
  Vec xi = Vec::Zero(3);
  xi(2) = 2.5;
  const InvarianceResidual r =
      invariance_residual(SymmetryWord{ModulateFull{xi}}, random_perturbation(kP, 1, 0.1, 5),
                          AttachedParams{Mat::Identity(2, 2), 0.7}, kP, QuadratureScheme::gauss_hermite(16));
  EXPECT_LE(r.residual, 3.0 * r.error + 1e-13);
}

TEST(InvarianceResidual, EveryGeneratorAtRandomParameters) {
  std::mt19937_64 rng(5);
  const auto scheme = QuadratureScheme::gauss_hermite(16);
  for (int trial = 0; trial < 2; ++trial) {
    const GaussTriple f = random_perturbation(kP, 1, 0.15, 50 + trial);
    const AttachedParams pr{Mat::Identity(2, 2) + random_mat(rng, 2, 2, 0.3), random_vec(rng, 1)(0)};
    for (const SymmetryGen& gen : one_of_each(rng)) {
      const InvarianceResidual r = invariance_residual(SymmetryWord{gen}, f, pr, kP, scheme);
      EXPECT_LE(r.residual, 3.0 * r.error + 1e-13) << generator_name(gen) << " trial " << trial;
    }
  }
}

TEST(InvarianceResidual, TranslationModulationSignMatters) {
  // Flipping the sign of both modulation prefactors breaks invariance.
  std::mt19937_64 rng(6);
  const GaussTriple f = random_perturbation(kP, 1, 0.1, 7);
  const AttachedParams pr{Mat::Identity(2, 2), 1.5};
  TranslateMod tm;
  for (auto& u : tm.u) u = random_point(rng, 1, 0.3);
  const Transformed good = apply(SymmetryGen{tm}, f, pr);
  const Mat B = symplectic_matrix(1);
  Vec xi1 = Vec::Zero(3), xi2 = Vec::Zero(3);
  xi1.head(2) = pr.b * B * (tm.u[1].x - tm.u[2].x);
  xi2.head(2) = pr.b * B.transpose() * (tm.u[0].x - tm.u[1].x);
  GaussTriple bad = good.f;
  bad[0] = bad[0].modulated(-2.0 * xi1);
  bad[1] = bad[1].modulated(-2.0 * xi2);
  const auto scheme = QuadratureScheme::gauss_hermite(16);
  const PhiResult before = phi(to_evaluable(f), kP, pr.A, pr.b, scheme);
  const PhiResult g = phi(to_evaluable(good.f), kP, pr.A, pr.b, scheme);
  const PhiResult b = phi(to_evaluable(bad), kP, pr.A, pr.b, scheme);
  EXPECT_LE(std::abs(g.value - before.value), 3.0 * (g.error + before.error) + 1e-13);
  EXPECT_GT(std::abs(b.value - before.value), 100.0 * (b.error + before.error) + 1e-6);
}

TEST(InvarianceResidual, RandomWords) {
  std::mt19937_64 rng(7);
  const auto scheme = QuadratureScheme::gauss_hermite(16);
  std::uniform_int_distribution<int> pick(0, 7), len(1, 4);
  for (int trial = 0; trial < 4; ++trial) {
    const GaussTriple f = random_perturbation(kP, 1, 0.1, 70 + trial);
    const AttachedParams pr{Mat::Identity(2, 2) + random_mat(rng, 2, 2, 0.2), 0.5 * random_vec(rng, 1)(0)};
    SymmetryWord w;
    const int L = len(rng);
    for (int k = 0; k < L; ++k) w.gens.push_back(one_of_each(rng)[pick(rng)]);
    const InvarianceResidual r = invariance_residual(w, f, pr, kP, scheme);
    EXPECT_LE(r.residual, 3.0 * r.error + 1e-13) << "trial " << trial;
  }
}

TEST(NormalizeEntry, Examples) {
  const GaussTriple g = standard3();
  const NormalizedEntry e0 = normalize_entry(g, AttachedParams::identity(1));
  EXPECT_EQ(max_pointwise_gap(e0.f, g, 8), 0.0);
  EXPECT_EQ(e0.params.A, Mat::Identity(2, 2));
  EXPECT_EQ(e0.params.b, 0.0);

  Vec xi = Vec::Zero(3);
  xi(2) = 1.7;
  GaussTriple twisted = {g[0].modulated(xi), g[1].modulated(xi), g[2].modulated(xi)};
  const NormalizedEntry e1 = normalize_entry(twisted, AttachedParams{Mat::Identity(2, 2), 1.7});
  EXPECT_LE(max_pointwise_gap(e1.f, g, 9), 1e-15);
  EXPECT_EQ(e1.params.b, 0.0);
  EXPECT_EQ(e1.source_b, 1.7);

  Mat L(2, 2);
  L << 1.2, 0.3, -0.4, 0.9;
  const Transformed gl = apply(SymmetryGen{GlAction{L}}, g, AttachedParams::identity(1));
  const NormalizedEntry e2 = normalize_entry(gl.f, AttachedParams{L, 0.0});
  EXPECT_LE(max_pointwise_gap(e2.f, g, 10), 1e-14);
  EXPECT_EQ(e2.source_A, L);

  EXPECT_THROW(normalize_entry(g, AttachedParams::euclidean(1)), std::invalid_argument);
}

TEST(OrbitElement, MatchesSymmetryWord) {
  std::mt19937_64 rng(11);
  const GaussTriple f = random_perturbation(kP, 1, 0.1, 12);
  OrbitParams q = OrbitParams::identity(1);
  q.K = Mat::Identity(2, 2) + random_mat(rng, 2, 2, 0.2);
  q.log_r = 0.2;
  q.beta = 0.4;
  q.zeta = random_vec(rng, 2, 0.3);
  q.psi = random_vec(rng, 2, 0.3);
  for (auto& v : q.V) v = random_vec(rng, 2, 0.2);
  q.Up = {0.1, -0.2, 0.05};
  q.a = {cplx(1.1, 0.1), cplx(0.9, 0.0), cplx(1.0, -0.2)};
  const NormalizedEntry e = normalize_entry(f, AttachedParams::identity(1));
  const OrbitElement el = orbit_element(e.f, e.params, q);
  const Transformed t = apply(orbit_word(q), e.f, e.params);
  EXPECT_LE(max_pointwise_gap(el.h, t.f, 13), 1e-12);
  const Mat J = symplectic_matrix(1);
  EXPECT_TRUE(el.MtJM.isApprox(t.params.A.transpose() * J * t.params.A, 1e-12));
  EXPECT_NEAR(el.twist, t.params.b, 1e-12);
}

TEST(OrbitParams, PackRoundTrip) {
  std::mt19937_64 rng(14);
  const Vec v = random_vec(rng, OrbitParams::size(1));
  EXPECT_EQ(OrbitParams::unpack(v, 1).pack(), v);
  EXPECT_EQ(OrbitParams::size(1), 25);
  EXPECT_THROW(OrbitParams::unpack(Vec::Zero(3), 1), std::invalid_argument);
}

TEST(OrbitDistance, ZeroAtTarget) {
  DistanceConfig cfg;
  cfg.restarts = 1;
  cfg.max_evaluations = 200;
  const DistanceReport r = orbit_distance_upper(standard3(), AttachedParams::euclidean(1), kP, cfg);
  EXPECT_LE(r.upper_bound, 1e-6);
  EXPECT_GE(r.upper_bound, 0.0);
  EXPECT_FALSE(r.vanishing_limit);
}

TEST(OrbitDistance, BoundedByKnownWords) {
  std::mt19937_64 rng(15);
  Mat L0 = Mat::Identity(2, 2) + random_mat(rng, 2, 2, 0.1);
  const GaussTriple f = apply(SymmetryGen{GlAction{L0}}, standard3(), AttachedParams::identity(1)).f;
  const AttachedParams pr{L0, 0.0};
  DistanceConfig cfg;
  cfg.restarts = 1;
  cfg.max_evaluations = 400;
  cfg.gh_nodes = 12;
  const DistanceReport r = orbit_distance_upper(f, pr, kP, cfg);
  const auto total = [](const DistanceBreakdown& b) { return std::sqrt(b.max_norm_sq + b.mjm_sq + b.twist_mjm_sq); };
  const double at_identity = total(distance_objective(f, pr, kP, OrbitParams::identity(1), 32));
  OrbitParams pre = OrbitParams::identity(1);
  pre.K = L0.inverse();
  const double at_preimage = total(distance_objective(f, pr, kP, pre, 32));
  EXPECT_NEAR(at_preimage, 1.0, 1e-6);
  EXPECT_LE(r.upper_bound, at_identity + 1e-9);
  EXPECT_LE(r.upper_bound, at_preimage + 1e-9);
  EXPECT_GT(r.upper_bound, 0.0);
  // Breakdown recombines to the bound unless the vanishing limit was reported.
  if (!r.vanishing_limit) {
    EXPECT_NEAR(total(r.breakdown), r.upper_bound, 1e-12);
  }
}

TEST(OrbitDistance, LambdaFamilyDecreases) {
  DistanceConfig cfg;
  cfg.restarts = 1;
  cfg.max_evaluations = 300;
  cfg.gh_nodes = 12;
  const Mat I = Mat::Identity(2, 2);
  cfg.hints = {lambda_family_hint(kP, 4.0)};
  const DistanceReport r4 = orbit_distance_upper(lambda_family(kP, 4.0), AttachedParams{I, 0.0}, kP, cfg);
  cfg.hints = {lambda_family_hint(kP, 16.0)};
  const DistanceReport r16 = orbit_distance_upper(lambda_family(kP, 16.0), AttachedParams{I, 0.0}, kP, cfg);
  EXPECT_GT(r4.upper_bound, 0.0);
  EXPECT_GT(r16.upper_bound, 0.0);
  EXPECT_LT(r16.upper_bound, r4.upper_bound);
}

TEST(OrbitDistance, MoreRestartsNeverWorse) {
  const GaussTriple f = random_perturbation(kP, 1, 0.05, 16);
  DistanceConfig cfg;
  cfg.max_evaluations = 150;
  cfg.gh_nodes = 12;
  cfg.restarts = 1;
  const DistanceReport one = orbit_distance_upper(f, AttachedParams::identity(1), kP, cfg);
  cfg.restarts = 5;
  const DistanceReport five = orbit_distance_upper(f, AttachedParams::identity(1), kP, cfg);
  EXPECT_LE(five.upper_bound, one.upper_bound);
  EXPECT_EQ(five.restarts, 5);
}

TEST(SymplecticNorm, EqualMeasurements) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 10; ++k) {
    const Mat A = random_mat(rng, 2, 2);
    const double target = symplectic_defect_norm(A);
    const SymplecticNormResult r = min_symplectic_norm(A);
    EXPECT_GE(r.value, target - 1e-8);
    EXPECT_LE(r.value, target + 1e-3);
    const Mat J = symplectic_matrix(1);
    EXPECT_LE((r.S.transpose() * J * r.S - J).norm(), 1e-10);
  }
}

TEST(SymplecticNorm, HamiltonianExponentialIsSymplectic) {
  std::mt19937_64 rng(18);
  for (int d = 1; d <= 2; ++d) {
    const Mat S = symplectic_from_hamiltonian(random_vec(rng, d * (2 * d + 1), 0.5), d);
    const Mat J = symplectic_matrix(d);
    EXPECT_LE((S.transpose() * J * S - J).norm(), 1e-12);
  }
  EXPECT_THROW(symplectic_from_hamiltonian(Vec::Zero(2), 1), std::invalid_argument);
}

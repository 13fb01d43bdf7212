#include <benchmark/benchmark.h>

#include "hylab/gauss_hermite.hpp"
#include "hylab/lab.hpp"

using namespace hylab;

namespace {

const ExponentTriple kP = ExponentTriple::symmetric();

void BM_GaussHermiteRuleCached(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_hermite_rule(n));
}
BENCHMARK(BM_GaussHermiteRuleCached)->Arg(20)->Arg(80)->Arg(200);

void BM_TrilinearClosed(benchmark::State& state) {
  const auto f = mode_perturbation(kP, {1, 1, 1}, 0.02);
  const Mat A = Mat::Identity(2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(trilinear_closed(f[0], f[1], f[2], A));
}
BENCHMARK(BM_TrilinearClosed);

void BM_TrilinearGaussHermite(benchmark::State& state) {
  const auto f = to_evaluable(standard_gaussians(kP, 3));
  const Mat A = Mat::Identity(2, 2);
  const auto scheme = QuadratureScheme::gauss_hermite(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eval_trilinear(f, A, 0.5, scheme));
}
BENCHMARK(BM_TrilinearGaussHermite)->Arg(10)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_TrilinearMonteCarlo(benchmark::State& state) {
  const auto f = to_evaluable(standard_gaussians(kP, 3));
  const Mat A = Mat::Identity(2, 2);
  const auto scheme = QuadratureScheme::monte_carlo(state.range(0), 7);
  for (auto _ : state) benchmark::DoNotOptimize(eval_trilinear(f, A, 0.5, scheme));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrilinearMonteCarlo)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_LpNormGaussHermite(benchmark::State& state) {
  const auto f = EvaluableFunction::from(random_gaussian_polynomial(3, 11));
  const auto scheme = QuadratureScheme::gauss_hermite(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lp_norm(f, 1.5, scheme));
}
BENCHMARK(BM_LpNormGaussHermite)->Arg(16)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_DistanceObjective(benchmark::State& state) {
  const GaussTriple f = lambda_family(kP, 5.0);
  const OrbitParams q = lambda_family_hint(kP, 5.0);
  const AttachedParams params = AttachedParams::identity(1);
  for (auto _ : state) benchmark::DoNotOptimize(distance_objective(f, params, kP, q, 16));
}
BENCHMARK(BM_DistanceObjective)->Unit(benchmark::kMillisecond);

void BM_OrthogonalityResiduals(benchmark::State& state) {
  const GaussTriple f = random_perturbation(kP, 1, 0.01, 3);
  for (auto _ : state) benchmark::DoNotOptimize(orthogonality_residuals(f, kP));
}
BENCHMARK(BM_OrthogonalityResiduals)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

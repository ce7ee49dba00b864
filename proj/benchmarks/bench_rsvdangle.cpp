#include <map>

#include <benchmark/benchmark.h>

#include "rsvdangle/angles.hpp"
#include "rsvdangle/estimator.hpp"
#include "rsvdangle/matgen.hpp"
#include "rsvdangle/posterior_bounds.hpp"
#include "rsvdangle/rsvd.hpp"

namespace {

using namespace rsvdangle;

const PlantedMatrix& matrix(Index n) {
  static std::map<Index, PlantedMatrix> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gen_gaussian_decay(n, n, spectrum_slower(n, 20), 1)).first;
  return it->second;
}

// Sample size l with q = 0 and q = 1 on an n x n matrix.
void BM_Rsvd(benchmark::State& state) {
  const PlantedMatrix& pm = matrix(state.range(0));
  const SketchConfig cfg{10, state.range(1), static_cast<int>(state.range(2)), 0};
  for (auto _ : state) benchmark::DoNotOptimize(rsvd(pm.a, cfg));
}
BENCHMARK(BM_Rsvd)->ArgsProduct({{250, 500}, {20, 80, 200}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_SvdFull(benchmark::State& state) {
  const PlantedMatrix& pm = matrix(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(svd_full(pm.a));
}
BENCHMARK(BM_SvdFull)->Arg(100)->Arg(250)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_CanonicalSines(benchmark::State& state) {
  const PlantedMatrix& pm = matrix(500);
  const RsvdOutput out = rsvd(pm.a, {50, state.range(0), 0, 0});
  const DenseMatrix uk = pm.factors.u.left_cols(50);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_sines(out.factors.u, uk));
}
BENCHMARK(BM_CanonicalSines)->Arg(80)->Arg(200)->Unit(benchmark::kMicrosecond);

// Cost model N r l^2: time per trial should grow about 4x when l doubles.
void BM_EstimatorScalingInL(benchmark::State& state) {
  const Spectrum s = spectrum_slower(2000, 20);
  const Index l = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(unbiased_estimate(s, 10, l, 1, 1, Side::left, 0));
  state.SetComplexityN(l);
}
BENCHMARK(BM_EstimatorScalingInL)
    ->RangeMultiplier(2)
    ->Range(25, 400)
    ->Complexity(benchmark::oNSquared)
    ->Unit(benchmark::kMillisecond);

void BM_ResidualBlocks(benchmark::State& state) {
  const PlantedMatrix& pm = matrix(500);
  const RsvdOutput out = rsvd(pm.a, {50, 80, 1, 0});
  const auto method = state.range(0) == 0 ? NormMethod::exact : NormMethod::power;
  for (auto _ : state) benchmark::DoNotOptimize(residual_blocks(pm.a, out, 50, method, 20, 0));
}
BENCHMARK(BM_ResidualBlocks)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

// Micro-benchmarks for the hot paths: jet arithmetic, per-point geometry
// construction, the full point pipeline and the exact rank computations.

#include <benchmark/benchmark.h>

#include "spraywork/catalog.hpp"
#include "spraywork/metrizability.hpp"
#include "spraywork/spencer.hpp"

namespace sw = spraywork;

namespace {

const sw::SprayModel& model() {
  return sw::catalog_get("triangular-family").model;
}

const sw::PointTM kPoint{{0.4, -0.7, 0.9}, {1.1, 0.6, -1.3}};

void BM_JetMultiply(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  sw::Jet a = sw::eval_jet(sw::parse("x1*y1*y3 + y2^2", 3), kPoint, order);
  sw::Jet b = sw::eval_jet(sw::parse("sin(x1)*y2 + x3*y3", 3), kPoint, order);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_JetMultiply)->Arg(4)->Arg(5)->Arg(6);

void BM_GeometryBuild(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    sw::SprayGeometry G(model(), kPoint, order);
    benchmark::DoNotOptimize(G.residual_phi_y());
  }
}
BENCHMARK(BM_GeometryBuild)->Arg(5)->Arg(6);

void BM_EigenframeBuild(benchmark::State& state) {
  for (auto _ : state) {
    sw::SprayGeometry G(model(), kPoint, 6);
    G.build_eigenframe(1e-8, 1e-6);
    benchmark::DoNotOptimize(G.lambda0(0));
  }
}
BENCHMARK(BM_EigenframeBuild);

void BM_AnalyzePoint(benchmark::State& state) {
  sw::Tolerances tol;
  for (auto _ : state)
    benchmark::DoNotOptimize(sw::analyze_point(model(), kPoint, tol, 5));
}
BENCHMARK(BM_AnalyzePoint);

void BM_RankSigma3(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  sw::EigenParams par = sw::EigenParams::random(n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(sw::rank_sigma3(n, par));
}
BENCHMARK(BM_RankSigma3)->Arg(3)->Arg(4);

void BM_SpencerH(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  sw::EigenParams par = sw::EigenParams::random(3, 7);
  for (auto _ : state) benchmark::DoNotOptimize(sw::spencer_H(3, m, par));
}
BENCHMARK(BM_SpencerH)->Arg(2)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();

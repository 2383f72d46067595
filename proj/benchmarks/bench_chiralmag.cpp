#include "chiralmag/chiralmag.hpp"

#include <benchmark/benchmark.h>

using namespace chiralmag;

namespace {

const ModelParams kVortex{1.4, 0.2412, 1.0, 5.0};

RealField random_field(int n) {
  SolverConfig cfg;
  cfg.n = n;
  cfg.init_modulus_max = 1.0;
  return random_init(cfg);
}

void BM_ToSpectral(benchmark::State& state) {
  const RealField f = random_field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(to_spectral(f));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.size()));
}
BENCHMARK(BM_ToSpectral)->Arg(81)->Arg(275);

void BM_ToReal(benchmark::State& state) {
  const SpectralField g = to_spectral(random_field(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(to_real(g));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_ToReal)->Arg(81)->Arg(275);

// Builds the per-mode 3x3 eigendecompositions without the cache.
void BM_PropagatorBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Propagator p(kVortex, square_lattice(), n, 0.1);
    benchmark::DoNotOptimize(p.min_eigenvalue());
  }
}
BENCHMARK(BM_PropagatorBuild)->Arg(81)->Arg(275)->Unit(benchmark::kMillisecond);

void BM_Resolvent(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto prop = Propagator::get(kVortex, square_lattice(), n, 0.1);
  const SpectralField g = to_spectral(random_field(n));
  for (auto _ : state) benchmark::DoNotOptimize(prop->resolvent(g));
}
BENCHMARK(BM_Resolvent)->Arg(81)->Arg(275);

void BM_Step(benchmark::State& state) {
  SolverConfig cfg;
  cfg.n = static_cast<int>(state.range(0));
  const RealField m = random_init(cfg);
  int iters = 0;
  for (auto _ : state) {
    StepResult r = step(m, kVortex, square_lattice(), cfg);
    iters = r.fp_iters;
    benchmark::DoNotOptimize(r.next);
  }
  state.counters["fp_iters"] = iters;
}
BENCHMARK(BM_Step)->Arg(81)->Arg(275)->Unit(benchmark::kMillisecond);

void BM_Energy(benchmark::State& state) {
  const RealField f = random_field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(energy(f, kVortex, square_lattice()));
}
BENCHMARK(BM_Energy)->Arg(81)->Arg(275);

void BM_Classify(benchmark::State& state) {
  const RealField f = random_field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(classify_pattern(f, square_lattice()));
}
BENCHMARK(BM_Classify)->Arg(81)->Arg(275);

void BM_StabilityVerdict(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(stability_verdict(kVortex, square_lattice(), Symmetry::Sigma2));
}
BENCHMARK(BM_StabilityVerdict);

void BM_DualEnumeration(benchmark::State& state) {
  const LatticeSpec spec = make_lattice(1.7, 1.2);
  const double radius = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dual_vectors_within(spec, radius));
}
BENCHMARK(BM_DualEnumeration)->Arg(4)->Arg(64);

}  // namespace

BENCHMARK_MAIN();

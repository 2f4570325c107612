#include <benchmark/benchmark.h>

#include "sqjacobi/io.hpp"
#include "sqjacobi/rotation.hpp"
#include "sqjacobi/solver.hpp"

namespace {

using namespace sqjacobi;

SymmetricMatrix bench_matrix(std::size_t n) {
  io::MatrixSpec spec;
  spec.n = n;
  spec.seed = 0xBE5C;
  return io::generate_symmetric(spec);
}

template <Method M>
void BM_Solve(benchmark::State& state) {
  const SymmetricMatrix a = bench_matrix(static_cast<std::size_t>(state.range(0)));
  SolverConfig cfg;
  cfg.method = M;
  cfg.record_rotations = false;
  int sweeps = 0;
  for (auto _ : state) {
    const SolveResult r = solve(a, cfg);
    sweeps = r.report.sweeps;
    benchmark::DoNotOptimize(r.decomposition.eigenvalues.data());
  }
  state.counters["sweeps"] = sweeps;
}
BENCHMARK(BM_Solve<Method::SqrtRotation>)->Name("solve/sqrt")->RangeMultiplier(2)->Range(4, 64);
BENCHMARK(BM_Solve<Method::GivensRotation>)->Name("solve/givens")->RangeMultiplier(2)->Range(4, 64);

// One cyclic sweep, so the per-rotation cost is comparable across methods.
template <Method M>
void BM_Sweep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DenseMatrix a = bench_matrix(n).dense();
  for (auto _ : state) {
    state.PauseTiming();
    DenseMatrix m = a;
    state.ResumeTiming();
    benchmark::DoNotOptimize(cyclic_sweep(m, nullptr, M));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n * (n - 1) / 2));
}
BENCHMARK(BM_Sweep<Method::SqrtRotation>)->Name("sweep/sqrt")->Arg(32)->Arg(128);
BENCHMARK(BM_Sweep<Method::GivensRotation>)->Name("sweep/givens")->Arg(32)->Arg(128);

void BM_ApplyLeft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  DenseMatrix m = bench_matrix(n).dense();
  const PlaneRotation r = sqrt_rotation(PivotBlock::from(m, 0, n - 1)).plane();
  for (auto _ : state) {
    apply_left(m, r, 0, n - 1, 0, n - 1);
    benchmark::ClobberMemory();
  }
  state.SetBytesProcessed(state.iterations() * static_cast<long>(2 * n * sizeof(double)));
}
BENCHMARK(BM_ApplyLeft)->Arg(64)->Arg(512);

void BM_PivotRotation(benchmark::State& state) {
  io::SplitMix64 rng(1);
  PivotBlock b{.a_pp = rng.uniform(), .a_pq = rng.uniform(), .a_qq = rng.uniform()};
  const auto method = state.range(0) ? Method::GivensRotation : Method::SqrtRotation;
  for (auto _ : state) {
    benchmark::DoNotOptimize(b);
    benchmark::DoNotOptimize(pivot_rotation(b, method));
  }
  state.SetLabel(std::string(to_string(method)));
}
BENCHMARK(BM_PivotRotation)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();

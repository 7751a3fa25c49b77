#include <benchmark/benchmark.h>

#include "pindex/ekeland.hpp"
#include "pindex/maslov.hpp"

using namespace pindex;

namespace {

const SymmetryDescriptor& symmetry() {
    static const SymmetryDescriptor p = build_symmetry(std::vector<long>{1, 1}, 4);
    return p;
}

void bm_integrate(benchmark::State& state) {
    const CoefficientPath a = CoefficientPath::isotropic(2, kTwoPi, 1.0);
    const int steps = static_cast<int>(state.range(0));
    IntegrateOptions opts;
    opts.eps_path = 1.0;  // fixed step count, no refinement
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_fundamental(a, steps, opts).endpoint());
    }
}
BENCHMARK(bm_integrate)->Arg(256)->Arg(1024)->Arg(4096);

void bm_crossing_scan(benchmark::State& state) {
    const CoefficientPath a = CoefficientPath::isotropic(2, kTwoPi, 1.0);
    const SymplecticPath g = integrate_fundamental(a, 512);
    for (auto _ : state) {
        benchmark::DoNotOptimize(index_by_crossings(g, symmetry()).index);
    }
}
BENCHMARK(bm_crossing_scan);

void bm_galerkin(benchmark::State& state) {
    const CoefficientPath a = CoefficientPath::isotropic(2, kTwoPi, 1.0);
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(index_by_galerkin(a, symmetry(), 1.0, m).index);
    }
}
BENCHMARK(bm_galerkin)->Arg(32)->Arg(64)->Arg(128);

void bm_maslov(benchmark::State& state) {
    const CoefficientPath a = CoefficientPath::isotropic(2, kTwoPi, 1.0);
    const SymplecticPath g = integrate_fundamental(a, 512);
    const Omega w = Omega::from_frac(1, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(i_P_omega(g, symmetry(), w).index);
    }
}
BENCHMARK(bm_maslov);

}  // namespace

BENCHMARK_MAIN();

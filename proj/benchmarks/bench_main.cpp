#include <benchmark/benchmark.h>

#include "nrlab/catalog.hpp"
#include "nrlab/ensembles.hpp"
#include "nrlab/linalg.hpp"
#include "nrlab/numrad.hpp"
#include "nrlab/report.hpp"
#include "nrlab/rng.hpp"

using namespace nrlab;

static void BM_NumericalRadius(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    CounterRng rng(1, n);
    const ComplexMatrix a = random_gaussian(n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(numerical_radius(a).value);
}
BENCHMARK(BM_NumericalRadius)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

static void BM_Eigenvalues(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    CounterRng rng(2, n);
    const ComplexMatrix h = random_hermitian(n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigenvalues(h));
}
BENCHMARK(BM_Eigenvalues)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

static void BM_JacobiEigen(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    CounterRng rng(3, n);
    const ComplexMatrix h = random_hermitian(n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigen(h));
}
BENCHMARK(BM_JacobiEigen)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

static void BM_SphereSup(benchmark::State& state) {
    CounterRng rng(4, 0);
    const ComplexMatrix a = random_gaussian(3, rng);
    const SphereSampler sampler{5, static_cast<std::size_t>(state.range(0)), 50};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sphere_sup([&](std::span<const Complex> x) { return std::abs(quadratic_form(a, x)); }, 3, sampler).value);
    }
}
BENCHMARK(BM_SphereSup)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

static void BM_SuiteRow(benchmark::State& state) {
    const std::vector<InequalityId> ids(all_inequalities().begin(), all_inequalities().end());
    EnsembleSpec spec;
    spec.dim = static_cast<std::size_t>(state.range(0));
    spec.seed = 9;
    for (auto _ : state) benchmark::DoNotOptimize(run_suite(ids, spec, 10).records.size());
}
BENCHMARK(BM_SuiteRow)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();

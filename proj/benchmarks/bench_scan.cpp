#include <benchmark/benchmark.h>

#include "wnrank/lstat.hpp"
#include "wnrank/scan.hpp"
#include "wnrank/simgen.hpp"

namespace {

using namespace wnrank;

SeriesPanel bench_panel(int n, int p) {
    NullModelSpec spec;
    spec.n = n;
    spec.p = p;
    spec.seed = 99;
    return gen_null(spec);
}

void BM_scan_method(benchmark::State& state, Method method) {
    const SeriesPanel panel = bench_panel(100, 30);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pair_scan(panel, 2, method, 1));
    }
}
BENCHMARK_CAPTURE(BM_scan_method, rho, Method::SpearmanRho);
BENCHMARK_CAPTURE(BM_scan_method, tau, Method::KendallTau);
BENCHMARK_CAPTURE(BM_scan_method, d, Method::HoeffdingD);
BENCHMARK_CAPTURE(BM_scan_method, r, Method::BkrR);
BENCHMARK_CAPTURE(BM_scan_method, taustar, Method::TauStar);
BENCHMARK_CAPTURE(BM_scan_method, xi, Method::ChatterjeeXi);

void BM_scan_all_methods(benchmark::State& state) {
    const SeriesPanel panel = bench_panel(100, 30);
    const Method methods[] = {Method::SpearmanRho, Method::KendallTau,  Method::HoeffdingD,
                              Method::BkrR,        Method::ChatterjeeXi, Method::TauStar};
    for (auto _ : state) {
        benchmark::DoNotOptimize(pair_scan_multi(panel, 2, methods, 1));
    }
}
BENCHMARK(BM_scan_all_methods);

void BM_permutation_replicate(benchmark::State& state) {
    // One permuted-panel tau* scan, the unit of work of the permutation test.
    const SeriesPanel panel = bench_panel(100, 30);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const SeriesPanel shuffled = permute_panel(panel, seed++);
        benchmark::DoNotOptimize(pair_scan(shuffled, 2, Method::TauStar, 1));
    }
}
BENCHMARK(BM_permutation_replicate);

}  // namespace

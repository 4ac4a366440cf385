#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "wnrank/correlations.hpp"
#include "wnrank/ranks.hpp"
#include "wnrank/rng.hpp"

namespace {

using namespace wnrank;

std::pair<std::vector<double>, std::vector<double>> random_pair(int m, std::uint64_t seed) {
    auto engine = make_engine(seed);
    std::normal_distribution<double> normal;
    std::vector<double> x(m), y(m);
    for (auto& v : x) v = normal(engine);
    for (auto& v : y) v = normal(engine);
    return {std::move(x), std::move(y)};
}

void BM_ranks(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const auto [x, y] = random_pair(m, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ranks(x));
    }
}
BENCHMARK(BM_ranks)->Arg(100)->Arg(400)->Arg(1600);

template <CorrValue (*Stat)(const LagPairSample&)>
void BM_pair_stat(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const auto [x, y] = random_pair(m, 2);
    const LagPairSample pair = make_lag_pair(x, y);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Stat(pair));
    }
}
BENCHMARK(BM_pair_stat<kendall_tau>)->Name("BM_kendall")->Arg(100)->Arg(400)->Arg(1600);
BENCHMARK(BM_pair_stat<hoeffding_d>)->Name("BM_hoeffding_d")->Arg(100)->Arg(400)->Arg(1600);
BENCHMARK(BM_pair_stat<bkr_r>)->Name("BM_bkr_r")->Arg(100)->Arg(400);
BENCHMARK(BM_pair_stat<tau_star>)->Name("BM_tau_star")->Arg(100)->Arg(400)->Arg(1600);
BENCHMARK(BM_pair_stat<chatterjee_xi>)->Name("BM_chatterjee_xi")->Arg(100)->Arg(400)->Arg(1600);

void BM_spearman(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const auto [x, y] = random_pair(m, 3);
    const RankProfile profile = relative_ranks(make_lag_pair(x, y));
    for (auto _ : state) {
        benchmark::DoNotOptimize(spearman_rho(profile));
    }
}
BENCHMARK(BM_spearman)->Arg(100)->Arg(400)->Arg(1600);

}  // namespace

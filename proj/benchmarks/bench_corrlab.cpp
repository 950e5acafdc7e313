#include <benchmark/benchmark.h>

#include <random>

#include "corrlab/corr.hpp"
#include "corrlab/dist.hpp"
#include "corrlab/icf.hpp"

using namespace corrlab;

namespace {

JointDist2 random_dist(int nx, int ny, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> exp1(1.0);
    JointDist2 d;
    d.x = Alphabet::iota(nx);
    d.y = Alphabet::iota(ny);
    d.pmf.resize(nx, ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) d.pmf(i, j) = exp1(rng) + 1e-3;
    d.pmf /= d.pmf.sum();
    return d;
}

void bm_maxcorr_svd(benchmark::State& state) {
    const JointDist2 d = random_dist(static_cast<int>(state.range(0)),
                                     static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(maxcorr_svd(d));
}
BENCHMARK(bm_maxcorr_svd)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void bm_maxcorr_bruteforce(benchmark::State& state) {
    const JointDist2 d = random_dist(5, 5, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(maxcorr_bruteforce(d, 8, static_cast<int>(state.range(0)), 7));
}
BENCHMARK(bm_maxcorr_bruteforce)->Arg(200)->Arg(2000);

void bm_mutual_information(benchmark::State& state) {
    const JointDist2 d = random_dist(8, 8, 3);
    for (auto _ : state) benchmark::DoNotOptimize(mutual_information(d));
}
BENCHMARK(bm_mutual_information);

void bm_icf_evaluate(benchmark::State& state) {
    const JointDist2 d = random_dist(2, 2, 4);
    const Channel ch = Channel::cell_identity(2, 2);
    for (auto _ : state) {
        const IcfEval e = icf_evaluate(d, ch);
        benchmark::DoNotOptimize(e.objective);
    }
}
BENCHMARK(bm_icf_evaluate);

void bm_icf_minimize_dsbs(benchmark::State& state) {
    const JointDist2 d = make_dsbs(0.1);
    OptimizerConfig cfg;
    cfg.restarts = 4;
    cfg.max_evals = static_cast<long long>(state.range(0));
    for (auto _ : state) {
        const IcfPoint p = icf_minimize(d, 0.3, cfg);
        benchmark::DoNotOptimize(p.value);
    }
}
BENCHMARK(bm_icf_minimize_dsbs)->Arg(5000)->Arg(20000)->Unit(benchmark::kMillisecond);

void bm_gk_common_info(benchmark::State& state) {
    const JointDist2 d = random_dist(16, 16, 5);
    for (auto _ : state) benchmark::DoNotOptimize(gk_common_info(d));
}
BENCHMARK(bm_gk_common_info);

} // namespace

BENCHMARK_MAIN();

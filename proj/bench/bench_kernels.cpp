// Serial reference vs OpenMP kernels. The two variants are bitwise-identical
// in output (unit_batch pins that); this target measures what the pragmas buy
// at various batch sizes.
#include "maxineq/batch.hpp"

#include <benchmark/benchmark.h>

using namespace maxineq;

namespace {

AlphaConfig bench_config() {
    AlphaConfig c;
    c.alpha = 1.5;
    c.p = 2.0;
    c.dt = 1e-3;
    c.t_max = 1e4;
    c.seed = 1;
    c.bridge_correction = true;
    return c;
}

void BM_stopped_bm_serial(benchmark::State& state) {
    const AlphaConfig c = bench_config();
    std::vector<batch::StoppedStats> out(state.range(0));
    for (auto _ : state) {
        batch::simulate_stopped_bm_serial(c, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_stopped_bm_parallel(benchmark::State& state) {
    const AlphaConfig c = bench_config();
    std::vector<batch::StoppedStats> out(state.range(0));
    for (auto _ : state) {
        batch::simulate_stopped_bm(c, out, batch::Mode::Parallel);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

PathSampler bench_sampler() {
    PathSampler s;
    s.model = PathSampler::Model::Gbm;
    s.seed = 1;
    s.steps = 128;
    s.sigma = 0.3;
    return s;
}

void BM_sample_functionals_serial(benchmark::State& state) {
    const PathSampler s = bench_sampler();
    std::vector<PathFunctionals> out(state.range(0));
    for (auto _ : state) {
        batch::sample_functionals_bulk_serial(s, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_sample_functionals_parallel(benchmark::State& state) {
    const PathSampler s = bench_sampler();
    std::vector<PathFunctionals> out(state.range(0));
    for (auto _ : state) {
        batch::sample_functionals_bulk(s, out, batch::Mode::Parallel);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

batch::FuzzParams bench_fuzz(std::size_t n) {
    batch::FuzzParams p;
    p.seed = 1;
    p.n_paths = n;
    p.max_len = 120;
    return p;
}

void BM_fuzz_serial(benchmark::State& state) {
    const auto params = bench_fuzz(state.range(0));
    for (auto _ : state) {
        auto res = batch::fuzz_check_paths_serial(params);
        benchmark::DoNotOptimize(res.n_failed);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_fuzz_parallel(benchmark::State& state) {
    const auto params = bench_fuzz(state.range(0));
    for (auto _ : state) {
        auto res = batch::fuzz_check_paths(params, batch::Mode::Parallel);
        benchmark::DoNotOptimize(res.n_failed);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_pairwise_sum(benchmark::State& state) {
    std::vector<double> x(state.range(0));
    const CounterRng rng{1, 0};
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = uniform_open(rng.block(i, 0).w[0]);
    for (auto _ : state) benchmark::DoNotOptimize(batch::pairwise_sum(x));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK(BM_stopped_bm_serial)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_stopped_bm_parallel)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sample_functionals_serial)->Arg(1024)->Arg(16384)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sample_functionals_parallel)->Arg(1024)->Arg(16384)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fuzz_serial)->Arg(1024)->Arg(8192)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fuzz_parallel)->Arg(1024)->Arg(8192)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pairwise_sum)->Arg(1 << 16)->Arg(1 << 20);

BENCHMARK_MAIN();

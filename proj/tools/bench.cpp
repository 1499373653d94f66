// Serial reference vs OpenMP kernels. Both sides produce identical output for
// the same seed, so only the wall time differs.
#include <benchmark/benchmark.h>

#include "cmcomp/graph.hpp"
#include "cmcomp/gw.hpp"
#include "cmcomp/harness.hpp"

using namespace cmcomp;

static void BM_degrees_serial(benchmark::State &st) {
    const DegreeLaw law(2.5);
    for (auto _ : st) benchmark::DoNotOptimize(sample_degree_sequence_serial(st.range(0), law, 7).total);
}
static void BM_degrees_omp(benchmark::State &st) {
    const DegreeLaw law(2.5);
    for (auto _ : st) benchmark::DoNotOptimize(sample_degree_sequence(st.range(0), law, 7).total);
}
BENCHMARK(BM_degrees_serial)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_degrees_omp)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

static void BM_y_serial(benchmark::State &st) {
    for (auto _ : st)
        benchmark::DoNotOptimize(sample_y_distribution_serial(2.5, RootLaw::F, 1e4, st.range(0), 11).values.size());
}
static void BM_y_omp(benchmark::State &st) {
    for (auto _ : st)
        benchmark::DoNotOptimize(sample_y_distribution(2.5, RootLaw::F, 1e4, st.range(0), 11).values.size());
}
BENCHMARK(BM_y_serial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_y_omp)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_compete_serial(benchmark::State &st) {
    CompeteConfig c;
    c.n = st.range(0);
    c.trials = 8;
    c.seed = 3;
    for (auto _ : st) benchmark::DoNotOptimize(run_compete_serial(c).size());
}
static void BM_compete_omp(benchmark::State &st) {
    CompeteConfig c;
    c.n = st.range(0);
    c.trials = 8;
    c.seed = 3;
    for (auto _ : st) benchmark::DoNotOptimize(run_compete(c).size());
}
BENCHMARK(BM_compete_serial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_compete_omp)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

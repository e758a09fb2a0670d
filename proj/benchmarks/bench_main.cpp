#include <benchmark/benchmark.h>

#include "geocoder/coding.hpp"
#include "geocoder/markov.hpp"
#include "geocoder/measure.hpp"

using namespace geocoder;

static void BM_SurfaceBuild(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(Surface::build(static_cast<int>(st.range(0))));
}
BENCHMARK(BM_SurfaceBuild)->DenseRange(2, 5);

static void BM_ClosedFormAttractor(benchmark::State& st) {
    Surface s = Surface::build(2);
    Partition A = parse_partition(s, "midpoints");
    for (auto _ : st) benchmark::DoNotOptimize(attractor(s, A));
}
BENCHMARK(BM_ClosedFormAttractor);

static void BM_NumericAttractor(benchmark::State& st) {
    Surface s = Surface::build(2);
    Partition A = parse_partition(s, "endpoints:P");
    for (auto _ : st) benchmark::DoNotOptimize(numeric_attractor(s, A));
}
BENCHMARK(BM_NumericAttractor)->Unit(benchmark::kMillisecond);

static void BM_ArithmeticCode(benchmark::State& st) {
    Surface s = Surface::build(2);
    Attractor at = attractor(s, parse_partition(s, "midpoints"));
    Geodesic g = axis(s, {5, 4, 7, 6});
    for (auto _ : st) benchmark::DoNotOptimize(arithmetic_code(s, at, g, 32, 32));
}
BENCHMARK(BM_ArithmeticCode);

static void BM_TransitionMatrix(benchmark::State& st) {
    Surface s = Surface::build(2);
    Partition A = parse_partition(s, "midpoints");
    Attractor at = attractor(s, A);
    FinePartition f = fine_partition(s, A, at);
    for (auto _ : st) benchmark::DoNotOptimize(transition_matrix(s, f));
}
BENCHMARK(BM_TransitionMatrix);

static void BM_MonteCarloMass(benchmark::State& st) {
    Surface s = Surface::build(2);
    Attractor at = attractor(s, parse_partition(s, "midpoints"));
    for (auto _ : st) benchmark::DoNotOptimize(monte_carlo_mass(s, at, static_cast<std::size_t>(st.range(0)), 1));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_MonteCarloMass)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

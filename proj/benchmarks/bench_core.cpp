#include <benchmark/benchmark.h>

#include "eihlab/analytic.hpp"
#include "eihlab/experiments.hpp"
#include "eihlab/quadrature.hpp"
#include "eihlab/rng.hpp"
#include "eihlab/strategies.hpp"

namespace {

using namespace eihlab;

MarketParams market() { return MarketParams::create(0.06, 0.05, {0.15, 0.05}, {0.25, -0.10}, 0.02, 10.0); }

void BM_Philox(benchmark::State& state) {
    std::uint32_t k = 0;
    for (auto _ : state) benchmark::DoNotOptimize(Philox4x32::generate({k++, 0, 0, 0}, {1, 2}));
}
BENCHMARK(BM_Philox);

void BM_NormalPair(benchmark::State& state) {
    std::uint64_t k = 0;
    for (auto _ : state) benchmark::DoNotOptimize(normal_pair(1, k++, 0));
}
BENCHMARK(BM_NormalPair);

void BM_TerminalSample(benchmark::State& state) {
    const TerminalSampler sampler(market(), Measure::physical, 1);
    std::uint64_t k = 0;
    for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(k++));
}
BENCHMARK(BM_TerminalSample);

void BM_DigitalPrice(benchmark::State& state) {
    const auto reduced = reduce_dimension(market());
    const auto spec = DigitalSpec::create(Direction::at_least, 1.3);
    for (auto _ : state) benchmark::DoNotOptimize(digital_price(reduced, spec, 10.0));
}
BENCHMARK(BM_DigitalPrice);

void BM_HalfspaceClosedForm(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gaussian_halfspace_expectation({0.3, -0.2}, {0.1, 0.4}, 0.25));
}
BENCHMARK(BM_HalfspaceClosedForm);

void BM_HalfspaceQuadrature(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(quadrature::halfspace_expectation({0.3, -0.2}, {0.1, 0.4}, 0.25));
}
BENCHMARK(BM_HalfspaceQuadrature);

void BM_SimulatePath(benchmark::State& state) {
    const auto p = market();
    std::uint64_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_path(p, Measure::physical, static_cast<std::size_t>(state.range(0)), 1, k++));
    }
}
BENCHMARK(BM_SimulatePath)->Arg(64)->Arg(512);

void BM_HedgedWealth(benchmark::State& state) {
    const auto p = market();
    const auto strategy = build_two_sided(p, 0.05);
    const auto path = simulate_path(p, Measure::physical, static_cast<std::size_t>(state.range(0)), 1, 0);
    const double cutoff = p.T() - p.T() / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(hedged_wealth(strategy, p, path, cutoff));
}
BENCHMARK(BM_HedgedWealth)->Arg(64)->Arg(512);

void BM_VerifyTwoSided(benchmark::State& state) {
    ExperimentConfig c{market()};
    c.n_paths = 100'000;
    c.workers = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(verify_two_sided(c));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.n_paths));
}
BENCHMARK(BM_VerifyTwoSided)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();

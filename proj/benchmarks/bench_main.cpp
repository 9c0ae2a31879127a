#include <benchmark/benchmark.h>

#include "lyorad/multi_vial.h"
#include "lyorad/radiation.h"

using namespace lyorad;

namespace {

Scene square(int n) {
    Scene s;
    s.layout = build_rectangular_layout(n, n, 0.01, 0.005);
    return s;
}

void BM_MonteCarloViewFactors(benchmark::State& state) {
    const Scene s = square(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(monte_carlo_view_factors(s, {20000, 1}));
    }
    state.SetItemsProcessed(state.iterations() * 20000 * static_cast<std::int64_t>(s.layout.size()));
}
BENCHMARK(BM_MonteCarloViewFactors)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_NetworkSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ViewFactorMatrix vf = complete_and_validate(monte_carlo_view_factors(square(n), {20000, 1}));
    std::vector<double> eps(vf.size(), 0.8);
    eps.back() = 0.3;
    RadiosityNetwork net(vf, eps);
    std::vector<double> T(vf.size(), 250.0);
    T.back() = 293.15;
    for (auto _ : state) benchmark::DoNotOptimize(net.solve(T));
}
BENCHMARK(BM_NetworkSolve)->Arg(5)->Arg(10)->Arg(15)->Unit(benchmark::kMicrosecond);

void BM_NetworkFactorize(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ViewFactorMatrix vf = complete_and_validate(monte_carlo_view_factors(square(n), {20000, 1}));
    std::vector<double> eps(vf.size(), 0.8);
    for (auto _ : state) benchmark::DoNotOptimize(RadiosityNetwork(vf, eps));
}
BENCHMARK(BM_NetworkFactorize)->Arg(10)->Arg(15)->Unit(benchmark::kMicrosecond);

void BM_SingleVial(benchmark::State& state) {
    ProcessSettings p;
    p.mode = static_cast<DryingMode>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(simulate_single_vial({}, p, {}, {}, {}));
}
BENCHMARK(BM_SingleVial)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_NetworkArray(benchmark::State& state) {
    Scenario s;
    s.process.mode = DryingMode::HFD;
    s.scene = square(static_cast<int>(state.range(0)));
    s.approach = Approach::Network;
    s.view_factors = resolve_view_factors(s);
    for (auto _ : state) benchmark::DoNotOptimize(simulate(s));
}
BENCHMARK(BM_NetworkArray)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();

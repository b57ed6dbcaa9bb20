// Serial reference vs OpenMP kernels. On a single core the two should match.

#include <benchmark/benchmark.h>

#include "dfrc/chance_constraint.hpp"
#include "dfrc/experiments.hpp"
#include "dfrc/sdp/p7.hpp"

using namespace dfrc;

namespace {

struct OutageFixture {
    std::vector<CMatrix> w;
    CVector h;
    UserSpec user{db_to_linear(1.0), 0.1, 0.1};

    OutageFixture() {
        Rng rng(42);
        const auto hs = sample_nominal_channels(rng, 3, 10);
        for (const auto& v : hs) w.push_back(v * v.adjoint() / (3.0 * v.squaredNorm()));
        h = hs[0];
    }
};

const OutageFixture& outage_fixture() {
    static const OutageFixture f;
    return f;
}

void BM_OutageSerial(benchmark::State& state) {
    const auto& f = outage_fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(monte_carlo_outage_serial(std::span<const CMatrix>(f.w), 0, f.h, f.user, 0.25,
                                                           static_cast<int>(state.range(0)), 7));
}

void BM_OutageParallel(benchmark::State& state) {
    const auto& f = outage_fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(monte_carlo_outage(std::span<const CMatrix>(f.w), 0, f.h, f.user, 0.25,
                                                    static_cast<int>(state.range(0)), std::uint64_t{7}));
}

experiments::ScenarioConfig sweep_config() {
    experiments::ScenarioConfig c;
    c.array.n_antennas = 6;
    c.theta0 = deg_to_rad(30.0);
    c.users.assign(2, UserSpec{db_to_linear(2.0), 0.1, 0.1});
    c.noise_var = 0.25;
    return c;
}

experiments::SweepSpec sweep_spec(int trials) {
    experiments::SweepSpec s;
    s.values = {0.0, 2.0};
    s.trials_per_point = trials;
    return s;
}

void BM_SweepSerial(benchmark::State& state) {
    const auto cfg = sweep_config();
    const auto spec = sweep_spec(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(experiments::run_sweep_serial(cfg, spec));
}

void BM_SweepParallel(benchmark::State& state) {
    const auto cfg = sweep_config();
    const auto spec = sweep_spec(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(experiments::run_sweep(cfg, spec));
}

}  // namespace

BENCHMARK(BM_OutageSerial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OutageParallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

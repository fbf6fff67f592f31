// Throughput of the sample-synthesis kernel: serial reference vs the OpenMP
// path, on a one-hour drive at 250 Hz (900k samples) with noise and a
// handful of events.

#include <benchmark/benchmark.h>

#include "drowsy/scenario.hpp"
#include "drowsy/signal_gen.hpp"

namespace {

drowsy::Scenario bench_scenario() {
    drowsy::Scenario sc;
    sc.duration_ms = 3'600'000;
    sc.sample_rate_hz = 250;
    sc.seed = 42;
    sc.initial_bpm = 72.0;
    sc.events.push_back({0, drowsy::EventKind::SetNoise, 0, 0.03, 0});
    for (std::int64_t t = 5'000; t + 200 < sc.duration_ms; t += 4'000)
        sc.events.push_back({t, drowsy::EventKind::Blink, 150, 0.0, 0});
    sc.events.push_back({1'800'000, drowsy::EventKind::SetHeartRate, 0, 63.0, 0});
    drowsy::validate_scenario(sc);
    return sc;
}

void BM_generate_serial(benchmark::State& state) {
    const drowsy::Scenario sc = bench_scenario();
    for (auto _ : state) {
        drowsy::Generation g = drowsy::generate_serial(sc);
        benchmark::DoNotOptimize(g.samples.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(drowsy::sample_count(sc)));
}

void BM_generate_openmp(benchmark::State& state) {
    const drowsy::Scenario sc = bench_scenario();
    for (auto _ : state) {
        drowsy::Generation g = drowsy::generate(sc);
        benchmark::DoNotOptimize(g.samples.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(drowsy::sample_count(sc)));
}

BENCHMARK(BM_generate_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_generate_openmp)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

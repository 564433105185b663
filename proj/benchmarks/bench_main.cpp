#include <benchmark/benchmark.h>

#include "gndline/conversion.hpp"
#include "gndline/coupling.hpp"
#include "gndline/pipeline.hpp"
#include "gndline/signal.hpp"

#include <cmath>

namespace {

using namespace gndline;

ImpedanceElement cap_leg(double c) { return ImpedanceElement{1e6, 0.0, c}; }

CouplingNetwork bench_coupling() {
    CouplingNetwork net;
    net.z_ga1 = cap_leg(1e-5);
    net.z_sa1 = cap_leg(0.99e-5);
    net.z_gs1 = cap_leg(1.21e-5);
    net.z_ga2 = cap_leg(1.01e-5);
    net.z_sa2 = cap_leg(0.98e-5);
    net.z_gs2 = cap_leg(1.19e-5);
    net.z_g = ImpedanceElement{0.0001001, 4.43e-6, 0.99e-9};
    net.z_s = ImpedanceElement{0.00099, 5e-6, 1.1e-9};
    net.z_v = ImpedanceElement{1e6, 0.0, {}};
    net.source_amplitude = 300.0;
    return net;
}

ConversionNetwork bench_conversion() {
    ConversionNetwork net;
    net.z_1i = cap_leg(1e-7);
    net.z_2i = cap_leg(1.1e-7);
    net.z_3i = cap_leg(1.21e-6);
    net.z_1o = cap_leg(0.99e-7);
    net.z_2o = cap_leg(1.01e-7);
    net.z_3o = cap_leg(1.19e-6);
    net.z_l = ImpedanceElement{20.01, 0.049, 1.2e-3};
    net.z_r = ImpedanceElement{19.99, 0.05, 1.1e-3};
    return net;
}

void bm_solve_coupling(benchmark::State& state) {
    const CouplingNetwork net = bench_coupling();
    const double omega = 2.0 * M_PI * 320e3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_coupling(net, omega));
    }
}
BENCHMARK(bm_solve_coupling);

void bm_coupling_closed_form(benchmark::State& state) {
    const CouplingNetwork net = bench_coupling();
    const double omega = 2.0 * M_PI * 320e3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(coupling_factor_closed_form(net, omega));
    }
}
BENCHMARK(bm_coupling_closed_form);

void bm_solve_conversion(benchmark::State& state) {
    const ConversionNetwork net = bench_conversion();
    const ConversionExcitation exc{0.0, Complex{1.0, 0.0}, 0.0, 0.0};
    const double omega = 2.0 * M_PI * 320e3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_conversion(net, exc, omega));
    }
}
BENCHMARK(bm_solve_conversion);

void bm_conversion_coefficients(benchmark::State& state) {
    const ConversionNetwork net = bench_conversion();
    const double omega = 2.0 * M_PI * 320e3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(conversion_coefficients(net, omega));
    }
}
BENCHMARK(bm_conversion_coefficients);

void bm_frc_endtoend(benchmark::State& state) {
    VictimPipeline p;
    p.coupling = bench_coupling();
    p.conversion = bench_conversion();
    const std::size_t points = static_cast<std::size_t>(state.range(0));
    const FrequencyGrid grid{50.0, 500e3, points, GridSpacing::log};
    for (auto _ : state) {
        benchmark::DoNotOptimize(frc_endtoend(p, grid));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_frc_endtoend)->Arg(50)->Arg(200)->Arg(1000);

void bm_synth_tone(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const double duration = static_cast<double>(n) / 1e6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(synth_tone(10e3, 1.0, 0.0, duration, 1e6));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(bm_synth_tone)->Arg(1 << 12)->Arg(1 << 16);

void bm_lowpass_ideal(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Waveform wave = synth_tone(10e3, 1.0, 0.0, static_cast<double>(n) / 1e6, 1e6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lowpass_ideal(wave, 20e3, false));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(bm_lowpass_ideal)->Arg(1 << 12)->Arg(1 << 16);

}  // namespace

BENCHMARK_MAIN();

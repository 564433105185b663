#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gndline/pipeline.hpp"
#include "test_util.hpp"

using namespace gndline;
using namespace testutil;

namespace {

VictimPipeline base_pipeline() {
    VictimPipeline p;
    p.coupling = reference_coupling();
    p.conversion = reference_conversion();
    p.amp_stage = AmpStage::ideal;
    p.ideal_gain = 1.0;
    p.legitimate_output = ToneSum{1.0, {ToneComponent{50.0, 0.1, 0.0}}};
    return p;
}

}  // namespace

TEST_CASE("cmrr formula and guards") {
    const CmrrAmp amp{1e-3, 1e-5, 1e6, 10.0};
    CHECK(cmrr(amp) == doctest::Approx(2.0 * 1e-6 * 1e6 / 1e-5).epsilon(1e-12));
    CHECK_THROWS_AS(cmrr(CmrrAmp{1e-3, 0.0, 1e6, 10.0}), std::invalid_argument);
}

TEST_CASE("ideal amp with a symmetric network yields zero corruption") {
    VictimPipeline p = base_pipeline();
    p.conversion = symmetric_conversion();
    const EndToEndResult r = run_endtoend(p, 100e3, 300.0, 0.02);
    CHECK(r.metrics.output_metric < 1e-12);
    CHECK(r.metrics.deviation < 1.0);
}

TEST_CASE("asymmetric network corrupts even an ideal amp") {
    const VictimPipeline p = base_pipeline();
    const EndToEndResult r = run_endtoend(p, 100e3, 300.0, 0.02);
    CHECK(r.metrics.output_metric > 1e-6);
    CHECK(r.metrics.deviation > 0.0);
}

TEST_CASE("finite CMRR corrupts even a symmetric network") {
    VictimPipeline p = base_pipeline();
    p.conversion = symmetric_conversion();
    p.amp_stage = AmpStage::cmrr;
    p.cmrr_amp = CmrrAmp{1e-3, 1e-5, 1e6, 10.0};
    const EndToEndResult r = run_endtoend(p, 100e3, 300.0, 0.02);
    CHECK(r.metrics.output_metric > 1e-9);
}

TEST_CASE("analog deviation is exactly linear in the attack amplitude") {
    const VictimPipeline p = base_pipeline();
    const std::vector<double> amps = {0.0, 50.0, 100.0, 150.0, 200.0, 250.0, 300.0};
    const std::vector<SweepRow> rows = amplitude_response(p, 100e3, amps, 0.02);
    REQUIRE(rows.size() == amps.size());
    CHECK(rows[0].deviation == 0.0);
    const double unit = rows[6].deviation / 300.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].x == amps[i]);
        CHECK(std::abs(rows[i].deviation - unit * amps[i]) <= 1e-9 * rows[6].deviation);
    }
    CHECK_THROWS_AS(amplitude_response(p, 100e3, {10.0, 5.0}, 0.02), std::invalid_argument);
}

TEST_CASE("argmax of find_vulnerable_frequencies matches the dense sweep") {
    const VictimPipeline p = base_pipeline();
    const FrequencyGrid grid{50.0, 500e3, 60, GridSpacing::log};
    const std::vector<SweepRow> dense = frequency_sweep(p, grid, 0.02);
    std::size_t best = 0;
    for (std::size_t i = 1; i < dense.size(); ++i) {
        if (dense[i].deviation > dense[best].deviation) best = i;
    }
    const std::vector<SweepRow> top = find_vulnerable_frequencies(p, grid, 3, 0.02);
    REQUIRE(top.size() == 3);
    CHECK(top[0].x == dense[best].x);
    CHECK(top[0].deviation >= top[1].deviation);
    CHECK(top[1].deviation >= top[2].deviation);

    // Argmax is invariant under scaling the source amplitude.
    VictimPipeline scaled = p;
    scaled.coupling.source_amplitude *= 7.5;
    const std::vector<SweepRow> top_scaled = find_vulnerable_frequencies(scaled, grid, 1, 0.02);
    CHECK(top_scaled[0].x == top[0].x);
}

TEST_CASE("comparator pipeline counts injected edges") {
    VictimPipeline p = base_pipeline();
    p.legitimate_output = ToneSum{};  // quiescent sensor at 0 V
    p.comparator = HysteresisComparator{0.5, -0.5, false};

    // Scale the attack until the DM disturbance alone crosses the band.
    const double freq = 400e3;
    const Complex mu = coupling_factor_closed_form(p.coupling, 2.0 * M_PI * freq);
    const Complex k2 = conversion_coefficients(p.conversion, 2.0 * M_PI * freq).k2;
    const double vs = 1.5 / std::abs(mu * k2);

    const EndToEndResult r = run_endtoend(p, freq, vs, 0.001);
    CHECK(r.metrics.output_metric == doctest::Approx(freq).epsilon(0.01));
    CHECK(r.metrics.deviation > 1e6);

    const EndToEndResult quiet = run_endtoend(p, freq, 0.0, 0.001);
    CHECK(quiet.metrics.output_metric == 0.0);
}

TEST_CASE("adc pipeline shifts the sampled mean under a dc-alias attack") {
    VictimPipeline p = base_pipeline();
    p.legitimate_output = ToneSum{1.0, {}};
    p.adc = AdcSampler{1e3, JitterMode::none, 0.0, 0};

    // Attack at an exact multiple of fs freezes the disturbance.
    const double freq = 10e3;
    const Complex mu = coupling_factor_closed_form(p.coupling, 2.0 * M_PI * freq);
    const Complex k2 = conversion_coefficients(p.conversion, 2.0 * M_PI * freq).k2;
    const double vs = 0.5 / std::abs(mu * k2);
    // The ADC freezes the disturbance at its t=0 value.
    const double frozen = 0.5 * std::cos(std::arg(mu * k2 * vs));

    const EndToEndResult r = run_endtoend(p, freq, vs, 0.064);
    const EndToEndResult base = run_endtoend(p, freq, 0.0, 0.064);
    CHECK(base.metrics.output_metric == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.metrics.output_metric == doctest::Approx(1.0 + frozen).epsilon(1e-6));
    CHECK(sample_std(r.corrupted_output.samples) < 1e-6);
}

TEST_CASE("endtoend FRC is the product of the stage responses") {
    const VictimPipeline p = base_pipeline();
    const FrequencyGrid grid{50.0, 500e3, 30, GridSpacing::log};
    const std::vector<FrcRow> rows = frc_endtoend(p, grid);
    const std::vector<double> freqs = grid.frequencies();
    REQUIRE(rows.size() == freqs.size());
    double lo = rows[0].magnitude, hi = rows[0].magnitude;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double omega = 2.0 * M_PI * freqs[i];
        const Complex expect = conversion_coefficients(p.conversion, omega).k2 *
                               coupling_factor_closed_form(p.coupling, omega) *
                               p.coupling.source_amplitude;
        CHECK(rows[i].magnitude == doctest::Approx(std::abs(expect)).epsilon(1e-10));
        lo = std::min(lo, rows[i].magnitude);
        hi = std::max(hi, rows[i].magnitude);
    }
    CHECK(hi - lo > 0.1 * hi);  // non-flat response
}

TEST_CASE("lowpass stage removes an out-of-band disturbance") {
    VictimPipeline p = base_pipeline();
    p.filter_cutoff_hz = 1e3;
    const EndToEndResult filtered = run_endtoend(p, 100e3, 300.0, 0.02);
    CHECK(filtered.metrics.output_metric < 1e-12);

    const EndToEndResult in_band = run_endtoend(p, 500.0, 300.0, 0.02);
    CHECK(in_band.metrics.output_metric > 0.0);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gndline/fft.hpp"
#include "gndline/signal.hpp"

#include <cmath>
#include <random>

using namespace gndline;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

std::vector<Complex> naive_dft(const std::vector<Complex>& x) {
    const std::size_t n = x.size();
    std::vector<Complex> out(n, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = -kTwoPi * static_cast<double>(k * j) / static_cast<double>(n);
            out[k] += x[j] * std::polar(1.0, ang);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("fft matches a naive DFT and round-trips") {
    std::mt19937_64 rng(301);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const std::size_t n : {16u, 100u, 256u, 1000u}) {
        std::vector<Complex> x(n);
        for (auto& v : x) v = Complex{u(rng), u(rng)};

        const std::vector<Complex> fast = fft_forward(x);
        const std::vector<Complex> slow = naive_dft(x);
        double scale = 0.0;
        for (const auto& v : slow) scale = std::max(scale, std::abs(v));
        for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(fast[k] - slow[k]) < 1e-9 * scale);

        const std::vector<Complex> back = fft_inverse(fast);
        for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(back[k] - x[k]) < 1e-12);

        // Parseval: sum |x|^2 = (1/N) sum |X|^2.
        double time_e = 0.0, freq_e = 0.0;
        for (const auto& v : x) time_e += std::norm(v);
        for (const auto& v : fast) freq_e += std::norm(v);
        CHECK(time_e == doctest::Approx(freq_e / static_cast<double>(n)).epsilon(1e-10));
    }
}

TEST_CASE("synth_tone samples the cosine exactly") {
    const Waveform w = synth_tone(100.0, 2.0, 0.5, 0.1, 10e3);
    REQUIRE(w.samples.size() == 1000);
    for (std::size_t k = 0; k < w.samples.size(); k += 37) {
        const double t = static_cast<double>(k) / 10e3;
        CHECK(w.samples[k] ==
              doctest::Approx(2.0 * std::cos(kTwoPi * 100.0 * t + 0.5)).epsilon(1e-12));
    }
    REQUIRE(w.analytic.has_value());
    CHECK(w.analytic->components.size() == 1);
    CHECK_THROWS_AS(synth_tone(100.0, 1.0, 0.0, 0.1, 150.0), std::invalid_argument);
}

TEST_CASE("tone algebra matches pointwise evaluation") {
    std::mt19937_64 rng(307);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> uf(10.0, 1000.0);
    for (int trial = 0; trial < 50; ++trial) {
        ToneSum a{u(rng), {}};
        ToneSum b{u(rng), {}};
        for (int i = 0; i < 3; ++i) {
            a.components.push_back({uf(rng), u(rng), u(rng)});
            b.components.push_back({uf(rng), u(rng), u(rng)});
        }
        const ToneSum sum = a.plus(b);
        const ToneSum prod = a.times(b);
        const ToneSum sc = a.scaled(-2.5);
        for (int i = 0; i < 20; ++i) {
            const double t = u(rng) * 0.05;
            CHECK(sum.eval(t) == doctest::Approx(a.eval(t) + b.eval(t)).epsilon(1e-10));
            CHECK(prod.eval(t) == doctest::Approx(a.eval(t) * b.eval(t)).epsilon(1e-10));
            CHECK(sc.eval(t) == doctest::Approx(-2.5 * a.eval(t)).epsilon(1e-10));
        }
    }
}

TEST_CASE("tone rms matches numerical integration") {
    // Incommensurate frequencies so cross terms really average out.
    const ToneSum t{0.3,
                    {{100.0, 1.0, 0.4}, {100.0 * std::sqrt(2.0), 0.5, -1.0},
                     {100.0 * M_PI, 0.25, 2.0}}};
    const std::size_t n = 2'000'000;
    const double dt = 1e-5;
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double v = t.eval(static_cast<double>(k) * dt);
        acc += v * v;
    }
    const double numeric = std::sqrt(acc / static_cast<double>(n));
    CHECK(t.rms() == doctest::Approx(numeric).epsilon(1e-3));
}

TEST_CASE("AM design keeps the envelope nonnegative and demodulates") {
    const Waveform baseband = synth_tone(1e3, 1.0, 0.0, 0.02, 1e6);
    const Waveform s = design_ac_attack(baseband, 200e3);
    REQUIRE(s.samples.size() == baseband.samples.size());

    // Samples equal (m + 1) cos(w_c t).
    for (std::size_t k = 0; k < s.samples.size(); k += 101) {
        const double t = static_cast<double>(k) / 1e6;
        const double expect =
            (std::cos(kTwoPi * 1e3 * t) + 1.0) * std::cos(kTwoPi * 200e3 * t);
        CHECK(s.samples[k] == doctest::Approx(expect).epsilon(1e-9));
    }

    // Square-law device plus LPF recovers the baseband at amplitude B.
    const NonlinearAmp amp{0.0, 0.7};
    const Waveform recovered = lowpass_ideal(apply_nonlinear_amp(amp, s), 2e3, true);
    CHECK(measured_tone_amplitude(recovered, 1e3) == doctest::Approx(0.7).epsilon(0.02));

    // Overmodulated baseband is rejected.
    const Waveform loud = synth_tone(1e3, 1.5, 0.0, 0.02, 1e6);
    CHECK_THROWS_AS(design_ac_attack(loud, 200e3), std::invalid_argument);
    CHECK_THROWS_AS(design_ac_attack(baseband, 300.0), std::invalid_argument);
}

TEST_CASE("nonlinear amp is exact per sample and in the analytic expansion") {
    const Waveform w = synth_tone(50.0, 2.0, 0.3, 0.1, 8e3);
    const NonlinearAmp amp{3.0, 0.25};
    const Waveform out = apply_nonlinear_amp(amp, w);
    REQUIRE(out.analytic.has_value());
    for (std::size_t k = 0; k < w.samples.size(); k += 53) {
        const double x = w.samples[k];
        CHECK(out.samples[k] == 3.0 * x + 0.25 * x * x);
        const double t = static_cast<double>(k) / 8e3;
        CHECK(out.analytic->eval(t) == doctest::Approx(out.samples[k]).epsilon(1e-10));
    }
}

TEST_CASE("ideal lowpass removes a high tone and keeps a low one") {
    Waveform w = synth_tone(100.0, 1.0, 0.0, 0.1, 50e3);
    const Waveform hi = synth_tone(5e3, 0.5, 1.0, 0.1, 50e3);
    for (std::size_t k = 0; k < w.samples.size(); ++k) w.samples[k] += hi.samples[k];
    w.analytic = w.analytic->plus(*hi.analytic);

    const Waveform out = lowpass_ideal(w, 1e3, false);
    CHECK(measured_tone_amplitude(out, 100.0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(measured_tone_amplitude(out, 5e3) < 1e-9);
    REQUIRE(out.analytic.has_value());
    CHECK(out.analytic->components.size() == 1);
}

TEST_CASE("comparator state machine on a hand-traced sequence") {
    Waveform w;
    w.sample_rate = 1.0;
    w.samples = {0.0, 0.6, 0.4, -0.1, -0.6, 0.5, 0.7, -0.6, 0.6};
    const HysteresisComparator cmp{0.5, -0.5, false};
    const ComparatorOutput out = comparator_pulses(cmp, w);
    const std::vector<double> expect = {0, 1, 1, 1, 0, 1, 1, 0, 1};
    CHECK(out.digital.samples == expect);
    CHECK(out.rising_edges == 3);
}

TEST_CASE("pulse attack hits the target edge rate; small jitter gives none") {
    const HysteresisComparator cmp{0.5, -0.5, false};
    const double rate = 1e3, dur = 0.05;
    const Waveform w = design_pulse_attack(rate, 1.2, cmp, dur, 1e5);
    const ComparatorOutput out = comparator_pulses(cmp, w);
    const double ft = rate * dur;
    CHECK(static_cast<double>(out.rising_edges) >= std::floor(ft));
    CHECK(static_cast<double>(out.rising_edges) <= std::ceil(ft));

    CHECK_THROWS_AS(design_pulse_attack(rate, 0.4, cmp, dur, 1e5), InfeasibleError);

    // Sub-band jitter straight into the comparator: zero edges.
    const Waveform quiet = synth_tone(rate, 0.45, -M_PI / 2.0, dur, 1e5);
    CHECK(comparator_pulses(cmp, quiet).rising_edges == 0);
}

TEST_CASE("adc sampling evaluates the analytic tone exactly") {
    const Waveform w = synth_tone(50.0, 1.0, 0.2, 1.0, 10e3);
    const AdcSampler adc{400.0, JitterMode::none, 0.0, 0};
    const Waveform s = sample_adc(adc, w);
    REQUIRE(s.samples.size() == 400);
    for (std::size_t k = 0; k < s.samples.size(); k += 7) {
        const double t = static_cast<double>(k) / 400.0;
        CHECK(s.samples[k] == doctest::Approx(std::cos(kTwoPi * 50.0 * t + 0.2)).epsilon(1e-12));
    }

    Waveform tiny = w;
    tiny.samples.resize(8);
    CHECK_THROWS_AS(sample_adc(adc, tiny), std::invalid_argument);
}

TEST_CASE("adc band-limited interpolation handles non-analytic input") {
    Waveform w = synth_tone(50.0, 1.0, 0.0, 0.5, 4e3);
    w.analytic.reset();
    const AdcSampler adc{200.0, JitterMode::none, 0.0, 0};
    const Waveform s = sample_adc(adc, w);
    for (std::size_t k = 0; k < s.samples.size(); k += 5) {
        const double t = static_cast<double>(k) / 200.0;
        CHECK(s.samples[k] == doctest::Approx(std::cos(kTwoPi * 50.0 * t)).epsilon(1e-6));
    }
}

TEST_CASE("sampling a tone at an integer multiple of fs freezes it") {
    const double fs = 1e3;
    const Waveform carrier = synth_tone(10e3, 0.8, 0.0, 0.064, 80e3);
    const AdcSampler adc{fs, JitterMode::none, 0.0, 0};
    const Waveform s = sample_adc(adc, carrier);
    CHECK(sample_std(s.samples) < 1e-6 * 0.8);
    CHECK(sample_mean(s.samples) == doctest::Approx(0.8).epsilon(1e-9));
}

TEST_CASE("alias prediction: empirical peak matches folded frequency") {
    // 1.3 kHz sampled at 1 kHz folds to 300 Hz.
    const AliasPrediction p = predict_alias(1300.0, 1000.0);
    CHECK(p.f_alias_empirical == doctest::Approx(300.0).epsilon(1e-3));

    // Integer multiple folds to DC.
    const AliasPrediction dc = predict_alias(10e3, 1e3);
    CHECK(dc.f_alias_empirical == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("dc attack design picks the first in-band multiple of fs") {
    const DcAttackDesign d = design_dc_attack(0.8, 1e3, {9500.0, 12500.0});
    CHECK(d.carrier_freq_hz == 10e3);
    CHECK(d.amplitude == 0.8);
    CHECK(d.phase_rad == 0.0);

    const DcAttackDesign neg = design_dc_attack(-0.5, 1e3, {9500.0, 12500.0});
    CHECK(neg.amplitude == 0.5);
    CHECK(neg.phase_rad == doctest::Approx(M_PI));

    CHECK_THROWS_AS(design_dc_attack(1.0, 1e3, {10400.0, 10900.0}), InfeasibleError);
}

TEST_CASE("random jitter is deterministic per seed") {
    const Waveform carrier = synth_tone(10e3, 1.0, 0.0, 0.1, 80e3);
    const AdcSampler a{1e3, JitterMode::uniform_random, 1e-3, 42};
    const AdcSampler b{1e3, JitterMode::uniform_random, 1e-3, 42};
    const AdcSampler c{1e3, JitterMode::uniform_random, 1e-3, 43};
    CHECK(sample_adc(a, carrier).samples == sample_adc(b, carrier).samples);
    CHECK(sample_adc(a, carrier).samples != sample_adc(c, carrier).samples);
}

TEST_CASE("dominant_frequency finds an off-bin tone") {
    const Waveform w = synth_tone(123.4, 1.0, 0.7, 1.0, 4e3);
    CHECK(dominant_frequency(w.samples, 4e3) == doctest::Approx(123.4).epsilon(1e-3));

    std::vector<double> flat(1024, 3.0);
    CHECK(dominant_frequency(flat, 1e3) == 0.0);
}

TEST_CASE("sample statistics against closed forms") {
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
    CHECK(sample_mean(x) == doctest::Approx(2.5));
    // population std of {1,2,3,4}: sqrt(5/4)
    CHECK(sample_std(x) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
}

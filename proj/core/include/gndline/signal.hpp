#pragma once

#include "gndline/linalg.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gndline {

class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One cosine component: amplitude * cos(2*pi*freq*t + phase).
struct ToneComponent {
    double freq_hz;
    double amplitude;
    double phase_rad;
};

/// Finite sum of cosines plus a DC term. Carried alongside sampled data
/// so sub-Nyquist ADC sampling can evaluate the underlying continuous
/// signal exactly instead of interpolating.
struct ToneSum {
    double dc = 0.0;
    std::vector<ToneComponent> components;

    double eval(double t) const;
    double rms() const;  // sqrt(dc^2 + sum a^2/2), exact for incommensurate tones

    ToneSum scaled(double factor) const;
    ToneSum plus(const ToneSum& other) const;
    ToneSum plus_dc(double offset) const;
    /// Pointwise product expanded via the product-to-sum identity.
    ToneSum times(const ToneSum& other) const;
    /// Drops components with |f| > cutoff; optionally zeroes the DC term.
    ToneSum lowpassed(double cutoff_hz, bool remove_dc) const;
};

/// Uniformly sampled real signal. `analytic` is set whenever the waveform
/// was built from closed-form tones and every operation applied so far
/// preserves that form.
struct Waveform {
    std::vector<double> samples;
    double sample_rate = 0.0;  // hz
    double t0 = 0.0;           // s
    std::optional<ToneSum> analytic;

    double duration() const {
        return static_cast<double>(samples.size()) / sample_rate;
    }
};

/// amplitude * cos(2*pi*freq*(t0 + k/rate) + phase). Requires
/// rate > 2*freq; deliberate sub-Nyquist sampling goes through AdcSampler.
Waveform synth_tone(double freq_hz, double amplitude, double phase_rad,
                    double duration_s, double sample_rate_hz, double t0 = 0.0);

/// AM attack signal (m(t) + 1) * cos(2*pi*f_c*t). The baseband peak must
/// not exceed 1 so the envelope stays nonnegative.
Waveform design_ac_attack(const Waveform& baseband, double carrier_freq_hz);

/// Memoryless second-order amplifier model, out = A x + B x^2.
struct NonlinearAmp {
    double gain_linear = 1.0;     // A
    double gain_quadratic = 0.0;  // B, 1/volt
};

Waveform apply_nonlinear_amp(const NonlinearAmp& amp, const Waveform& w);

/// Brick-wall low-pass in the frequency domain. Requires
/// 0 < cutoff < sample_rate/2.
Waveform lowpass_ideal(const Waveform& w, double cutoff_hz, bool remove_dc);

struct HysteresisComparator {
    double threshold_high;
    double threshold_low;
    bool initial_high = false;
};

struct ComparatorOutput {
    Waveform digital;  // samples in {0, 1}
    std::size_t rising_edges;
};

/// Two-threshold state machine: goes high when a sample >= threshold_high,
/// low when a sample <= threshold_low.
ComparatorOutput comparator_pulses(const HysteresisComparator& cmp, const Waveform& w);

/// Sinusoidal jitter at target_pulse_rate sized to cross the hysteresis
/// band once per period, so the comparator emits target_pulse_rate *
/// duration rising edges. Throws InfeasibleError when jitter_amplitude
/// cannot cross the band.
Waveform design_pulse_attack(double target_pulse_rate_hz, double jitter_amplitude,
                             const HysteresisComparator& cmp, double duration_s,
                             double sample_rate_hz);

enum class JitterMode { none, uniform_random };

struct AdcSampler {
    double sample_rate_fs;                      // f_s
    JitterMode jitter_mode = JitterMode::none;
    double jitter_span = 0.0;                   // s; delay ~ U[0, span)
    std::uint64_t seed = 0;
};

/// Samples the continuous signal behind w at t_k = k/f_s (plus a seeded
/// uniform random delay per sample in uniform_random mode). Analytic
/// tone metadata is evaluated exactly; otherwise the waveform is
/// band-limited (DFT) interpolated. Requires at least 8 ADC periods of
/// input.
Waveform sample_adc(const AdcSampler& adc, const Waveform& w);

struct AliasPrediction {
    double f_alias_formula;     // |2 m f_N - f_s| minimized subject to f_a < f_N
    int m_used;
    double f_alias_empirical; // FFT peak of the uniformly sampled tone
};

AliasPrediction predict_alias(double f_n, double f_s);

struct DcAttackDesign {
    double carrier_freq_hz;
    double amplitude;
    double phase_rad;
};

/// Picks the smallest integer multiple of f_s inside the vulnerable band;
/// sampling that carrier uniformly yields a constant equal to target_bias.
DcAttackDesign design_dc_attack(double target_bias, double f_s,
                                std::pair<double, double> vulnerable_band);

/// FFT-measured amplitude of the component nearest freq_hz (2|X[k]|/N).
double measured_tone_amplitude(const Waveform& w, double freq_hz);

/// Dominant nonzero frequency via Hann-windowed FFT with parabolic peak
/// interpolation; returns 0 for (near-)constant input.
double dominant_frequency(const std::vector<double>& samples, double sample_rate_hz);

double sample_mean(const std::vector<double>& samples);
double sample_std(const std::vector<double>& samples);

}  // namespace gndline

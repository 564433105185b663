#include "gndline/signal.hpp"

#include "gndline/fft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace gndline {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr std::size_t kMaxAnalyticComponents = 64;

// cos with the cycle count reduced before the multiply, so integer cycle
// counts (f*t exactly integral) give bit-exact constants.
double cos_cycles(double freq_hz, double t, double phase_rad) {
    const double cycles = freq_hz * t;
    const double frac = cycles - std::floor(cycles);
    return std::cos(kTwoPi * frac + phase_rad);
}

void merge_component(ToneSum& sum, const ToneComponent& c) {
    if (c.freq_hz == 0.0) {
        sum.dc += c.amplitude * std::cos(c.phase_rad);
        return;
    }
    for (ToneComponent& existing : sum.components) {
        if (existing.freq_hz == c.freq_hz) {
            // phasor addition
            const Complex p = existing.amplitude * std::polar(1.0, existing.phase_rad) +
                              c.amplitude * std::polar(1.0, c.phase_rad);
            existing.amplitude = std::abs(p);
            existing.phase_rad = std::arg(p);
            return;
        }
    }
    sum.components.push_back(c);
}

}  // namespace

double ToneSum::eval(double t) const {
    double v = dc;
    for (const ToneComponent& c : components) {
        v += c.amplitude * cos_cycles(c.freq_hz, t, c.phase_rad);
    }
    return v;
}

double ToneSum::rms() const {
    double power = dc * dc;
    for (const ToneComponent& c : components) power += 0.5 * c.amplitude * c.amplitude;
    return std::sqrt(power);
}

ToneSum ToneSum::scaled(double factor) const {
    ToneSum out = *this;
    out.dc *= factor;
    for (ToneComponent& c : out.components) c.amplitude *= factor;
    return out;
}

ToneSum ToneSum::plus(const ToneSum& other) const {
    ToneSum out = *this;
    out.dc += other.dc;
    for (const ToneComponent& c : other.components) merge_component(out, c);
    return out;
}

ToneSum ToneSum::plus_dc(double offset) const {
    ToneSum out = *this;
    out.dc += offset;
    return out;
}

ToneSum ToneSum::times(const ToneSum& other) const {
    ToneSum out;
    out.dc = dc * other.dc;
    for (const ToneComponent& c : components) {
        merge_component(out, ToneComponent{c.freq_hz, c.amplitude * other.dc, c.phase_rad});
    }
    for (const ToneComponent& c : other.components) {
        merge_component(out, ToneComponent{c.freq_hz, c.amplitude * dc, c.phase_rad});
    }
    for (const ToneComponent& a : components) {
        for (const ToneComponent& b : other.components) {
            // cos(x) cos(y) = [cos(x - y) + cos(x + y)] / 2
            const double half = 0.5 * a.amplitude * b.amplitude;
            double fd = a.freq_hz - b.freq_hz;
            double pd = a.phase_rad - b.phase_rad;
            if (fd < 0.0) {  // cos is even
                fd = -fd;
                pd = -pd;
            }
            merge_component(out, ToneComponent{fd, half, pd});
            merge_component(out, ToneComponent{a.freq_hz + b.freq_hz, half,
                                               a.phase_rad + b.phase_rad});
        }
    }
    return out;
}

ToneSum ToneSum::lowpassed(double cutoff_hz, bool remove_dc) const {
    ToneSum out;
    out.dc = remove_dc ? 0.0 : dc;
    for (const ToneComponent& c : components) {
        if (c.freq_hz <= cutoff_hz) out.components.push_back(c);
    }
    return out;
}

Waveform synth_tone(double freq_hz, double amplitude, double phase_rad,
                    double duration_s, double sample_rate_hz, double t0) {
    if (!(freq_hz > 0.0)) throw std::invalid_argument("synth_tone: freq must be > 0");
    if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("synth_tone: rate must be > 0");
    if (!(duration_s > 0.0)) throw std::invalid_argument("synth_tone: duration must be > 0");
    if (!(sample_rate_hz > 2.0 * freq_hz)) {
        throw std::invalid_argument("synth_tone: sample rate must exceed 2*freq");
    }
    const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
    if (n == 0) throw std::invalid_argument("synth_tone: empty waveform");

    Waveform w;
    w.sample_rate = sample_rate_hz;
    w.t0 = t0;
    w.samples.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = t0 + static_cast<double>(k) / sample_rate_hz;
        w.samples[k] = amplitude * cos_cycles(freq_hz, t, phase_rad);
    }
    w.analytic = ToneSum{0.0, {ToneComponent{freq_hz, amplitude, phase_rad}}};
    return w;
}

Waveform design_ac_attack(const Waveform& baseband, double carrier_freq_hz) {
    if (!(carrier_freq_hz > 0.0)) {
        throw std::invalid_argument("design_ac_attack: carrier must be > 0");
    }
    if (!(baseband.sample_rate > 2.0 * carrier_freq_hz)) {
        throw std::invalid_argument("design_ac_attack: baseband sample rate below 2*carrier");
    }
    double peak = 0.0;
    for (double s : baseband.samples) peak = std::max(peak, std::abs(s));
    if (peak > 1.0 + 1e-12) {
        throw std::invalid_argument("design_ac_attack: baseband peak exceeds 1");
    }
    if (baseband.analytic) {
        for (const ToneComponent& c : baseband.analytic->components) {
            if (!(carrier_freq_hz > 2.0 * c.freq_hz)) {
                throw std::invalid_argument(
                    "design_ac_attack: carrier below twice the baseband bandwidth");
            }
        }
    }

    Waveform out;
    out.sample_rate = baseband.sample_rate;
    out.t0 = baseband.t0;
    out.samples.resize(baseband.samples.size());
    for (std::size_t k = 0; k < out.samples.size(); ++k) {
        const double t = baseband.t0 + static_cast<double>(k) / baseband.sample_rate;
        out.samples[k] = (baseband.samples[k] + 1.0) * cos_cycles(carrier_freq_hz, t, 0.0);
    }
    if (baseband.analytic) {
        const ToneSum envelope = baseband.analytic->plus_dc(1.0);
        const ToneSum carrier{0.0, {ToneComponent{carrier_freq_hz, 1.0, 0.0}}};
        ToneSum product = envelope.times(carrier);
        if (product.components.size() <= kMaxAnalyticComponents) out.analytic = product;
    }
    return out;
}

Waveform apply_nonlinear_amp(const NonlinearAmp& amp, const Waveform& w) {
    Waveform out = w;
    for (double& s : out.samples) {
        s = amp.gain_linear * s + amp.gain_quadratic * s * s;
    }
    out.analytic.reset();
    if (w.analytic) {
        ToneSum t = w.analytic->scaled(amp.gain_linear);
        if (amp.gain_quadratic != 0.0) {
            t = t.plus(w.analytic->times(*w.analytic).scaled(amp.gain_quadratic));
        }
        if (t.components.size() <= kMaxAnalyticComponents) out.analytic = std::move(t);
    }
    return out;
}

Waveform lowpass_ideal(const Waveform& w, double cutoff_hz, bool remove_dc) {
    if (w.samples.empty()) throw std::invalid_argument("lowpass_ideal: empty waveform");
    if (!(cutoff_hz > 0.0) || !(cutoff_hz < w.sample_rate / 2.0)) {
        throw std::invalid_argument("lowpass_ideal: cutoff outside (0, rate/2)");
    }
    const std::size_t n = w.samples.size();
    std::vector<Complex> buf(n);
    for (std::size_t k = 0; k < n; ++k) buf[k] = Complex{w.samples[k], 0.0};
    std::vector<Complex> spec = fft_forward(buf);

    const double bin_hz = w.sample_rate / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double f = (k <= n / 2) ? bin_hz * static_cast<double>(k)
                                      : bin_hz * static_cast<double>(n - k);
        if (f > cutoff_hz || (remove_dc && k == 0)) spec[k] = Complex{0.0, 0.0};
    }
    const std::vector<Complex> filtered = fft_inverse(spec);

    Waveform out;
    out.sample_rate = w.sample_rate;
    out.t0 = w.t0;
    out.samples.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.samples[k] = filtered[k].real();
    if (w.analytic) out.analytic = w.analytic->lowpassed(cutoff_hz, remove_dc);
    return out;
}

ComparatorOutput comparator_pulses(const HysteresisComparator& cmp, const Waveform& w) {
    if (!(cmp.threshold_high > cmp.threshold_low)) {
        throw std::invalid_argument("comparator: threshold_high must exceed threshold_low");
    }
    ComparatorOutput out;
    out.digital.sample_rate = w.sample_rate;
    out.digital.t0 = w.t0;
    out.digital.samples.resize(w.samples.size());
    out.rising_edges = 0;

    bool high = cmp.initial_high;
    for (std::size_t k = 0; k < w.samples.size(); ++k) {
        if (!high && w.samples[k] >= cmp.threshold_high) {
            high = true;
            ++out.rising_edges;
        } else if (high && w.samples[k] <= cmp.threshold_low) {
            high = false;
        }
        out.digital.samples[k] = high ? 1.0 : 0.0;
    }
    return out;
}

Waveform design_pulse_attack(double target_pulse_rate_hz, double jitter_amplitude,
                             const HysteresisComparator& cmp, double duration_s,
                             double sample_rate_hz) {
    if (!(target_pulse_rate_hz > 0.0)) {
        throw std::invalid_argument("design_pulse_attack: rate must be > 0");
    }
    if (!(sample_rate_hz > 20.0 * target_pulse_rate_hz)) {
        throw std::invalid_argument("design_pulse_attack: sample rate below 20x pulse rate");
    }
    const double half_band = (cmp.threshold_high - cmp.threshold_low) / 2.0;
    if (!(jitter_amplitude > half_band) || jitter_amplitude < cmp.threshold_high ||
        -jitter_amplitude > cmp.threshold_low) {
        throw InfeasibleError("design_pulse_attack: jitter amplitude cannot cross the band");
    }
    // Sine (cosine with -pi/2 phase) starts at zero inside the band and
    // crosses threshold_high exactly once per period.
    return synth_tone(target_pulse_rate_hz, jitter_amplitude, -M_PI / 2.0, duration_s,
                      sample_rate_hz);
}

namespace {

// Band-limited (periodic sinc) interpolation via the DFT coefficients.
class DftInterpolator {
public:
    explicit DftInterpolator(const Waveform& w)
        : spec_(fft_forward(to_complex(w.samples))),
          n_(w.samples.size()),
          rate_(w.sample_rate),
          t0_(w.t0) {}

    double eval(double t) const {
        const double u = (t - t0_) * rate_;  // position in samples
        const auto n = static_cast<double>(n_);
        Complex acc{0.0, 0.0};
        for (std::size_t k = 0; k < n_; ++k) {
            double fk = static_cast<double>(k);
            if (fk > n / 2.0) fk -= n;
            const double cycles = fk * u / n;
            const double frac = cycles - std::floor(cycles);
            acc += spec_[k] * std::polar(1.0, kTwoPi * frac);
        }
        return acc.real() / n;
    }

private:
    static std::vector<Complex> to_complex(const std::vector<double>& x) {
        std::vector<Complex> c(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) c[i] = Complex{x[i], 0.0};
        return c;
    }

    std::vector<Complex> spec_;
    std::size_t n_;
    double rate_;
    double t0_;
};

double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Waveform sample_adc(const AdcSampler& adc, const Waveform& w) {
    if (w.samples.empty()) throw std::invalid_argument("sample_adc: empty window");
    if (!(adc.sample_rate_fs > 0.0)) throw std::invalid_argument("sample_adc: f_s must be > 0");
    const double duration = w.duration();
    const auto count = static_cast<std::size_t>(std::floor(duration * adc.sample_rate_fs));
    if (count < 8) {
        throw std::invalid_argument("sample_adc: window shorter than 8 ADC periods");
    }

    std::mt19937_64 rng(adc.seed);
    std::optional<DftInterpolator> interp;
    if (!w.analytic) interp.emplace(w);

    Waveform out;
    out.sample_rate = adc.sample_rate_fs;
    out.t0 = w.t0;
    out.samples.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
        double t = w.t0 + static_cast<double>(k) / adc.sample_rate_fs;
        if (adc.jitter_mode == JitterMode::uniform_random) {
            t += uniform_unit(rng) * adc.jitter_span;
        }
        out.samples[k] = w.analytic ? w.analytic->eval(t) : interp->eval(t);
    }
    return out;
}

AliasPrediction predict_alias(double f_n, double f_s) {
    if (!(f_n > 0.0) || !(f_s > 0.0)) {
        throw std::invalid_argument("predict_alias: frequencies must be > 0");
    }

    AliasPrediction out{};
    // Scan |2 m f_N - f_s| subject to f_a < f_N; ties go to smaller m.
    const int m_max = static_cast<int>(std::ceil(f_s / (2.0 * f_n))) + 2;
    out.m_used = 0;
    out.f_alias_formula = std::numeric_limits<double>::quiet_NaN();
    double best = std::numeric_limits<double>::infinity();
    for (int m = 1; m <= m_max; ++m) {
        const double fa = std::abs(2.0 * m * f_n - f_s);
        if (fa < f_n && fa < best) {
            best = fa;
            out.m_used = m;
            out.f_alias_formula = fa;
        }
    }

    // Empirical: uniformly sample a unit tone at f_s and read the FFT peak.
    const std::size_t n = 8192;
    const ToneSum tone{0.0, {ToneComponent{f_n, 1.0, 0.0}}};
    std::vector<double> samples(n);
    for (std::size_t k = 0; k < n; ++k) {
        samples[k] = tone.eval(static_cast<double>(k) / f_s);
    }
    out.f_alias_empirical = dominant_frequency(samples, f_s);
    return out;
}

DcAttackDesign design_dc_attack(double target_bias, double f_s,
                                std::pair<double, double> vulnerable_band) {
    if (!(f_s > 0.0)) throw std::invalid_argument("design_dc_attack: f_s must be > 0");
    const auto [lo, hi] = vulnerable_band;
    const auto k = static_cast<long long>(std::ceil(lo / f_s));
    const long long k_first = std::max(1LL, k);
    const double carrier = static_cast<double>(k_first) * f_s;
    if (!(carrier >= lo && carrier <= hi)) {
        throw InfeasibleError("design_dc_attack: no multiple of f_s inside the vulnerable band");
    }
    return DcAttackDesign{carrier, std::abs(target_bias),
                          target_bias >= 0.0 ? 0.0 : M_PI};
}

double measured_tone_amplitude(const Waveform& w, double freq_hz) {
    const std::size_t n = w.samples.size();
    std::vector<Complex> buf(n);
    for (std::size_t k = 0; k < n; ++k) buf[k] = Complex{w.samples[k], 0.0};
    const std::vector<Complex> spec = fft_forward(buf);
    const double bin_hz = w.sample_rate / static_cast<double>(n);
    const auto bin = static_cast<std::size_t>(std::llround(freq_hz / bin_hz));
    if (bin > n / 2) throw std::invalid_argument("measured_tone_amplitude: freq above Nyquist");
    const double scale = (bin == 0 || 2 * bin == n) ? 1.0 : 2.0;
    return scale * std::abs(spec[bin]) / static_cast<double>(n);
}

double dominant_frequency(const std::vector<double>& samples, double sample_rate_hz) {
    const std::size_t n = samples.size();
    if (n < 16) throw std::invalid_argument("dominant_frequency: too few samples");

    const double mean = sample_mean(samples);
    if (sample_std(samples) < 1e-9 * std::max(1.0, std::abs(mean))) return 0.0;

    std::vector<Complex> buf(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double hann =
            0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(k) / static_cast<double>(n - 1));
        buf[k] = Complex{(samples[k] - mean) * hann, 0.0};
    }
    const std::vector<Complex> spec = fft_forward(buf);

    std::size_t peak = 1;
    double peak_mag = 0.0;
    for (std::size_t k = 1; k <= n / 2; ++k) {
        const double mag = std::abs(spec[k]);
        if (mag > peak_mag) {
            peak_mag = mag;
            peak = k;
        }
    }
    // Parabolic refinement on log magnitude.
    double delta = 0.0;
    if (peak > 1 && peak < n / 2) {
        const double lm = std::log(std::abs(spec[peak - 1]) + 1e-300);
        const double lc = std::log(peak_mag + 1e-300);
        const double lp = std::log(std::abs(spec[peak + 1]) + 1e-300);
        const double denom = lm - 2.0 * lc + lp;
        if (denom != 0.0) delta = 0.5 * (lm - lp) / denom;
    }
    return (static_cast<double>(peak) + delta) * sample_rate_hz / static_cast<double>(n);
}

double sample_mean(const std::vector<double>& samples) {
    double acc = 0.0;
    for (double s : samples) acc += s;
    return acc / static_cast<double>(samples.size());
}

double sample_std(const std::vector<double>& samples) {
    const double mean = sample_mean(samples);
    double acc = 0.0;
    for (double s : samples) acc += (s - mean) * (s - mean);
    return std::sqrt(acc / static_cast<double>(samples.size()));
}

}  // namespace gndline

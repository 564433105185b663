#include "gndline/pipeline.hpp"

#include "gndline/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gndline {

double cmrr(const CmrrAmp& amp) {
    if (!(amp.delta_g_m > 0.0)) {
        throw std::invalid_argument(
            "cmrr: delta_g_m must be > 0 (use AmpStage::ideal for a perfectly matched amp)");
    }
    return 2.0 * amp.g_m * amp.g_m * amp.r_ss / amp.delta_g_m;
}

namespace {

constexpr double kDeviationFloor = 1e-12;

ToneSum tone_from_phasor(double freq_hz, Complex phasor) {
    if (phasor == Complex{0.0, 0.0}) return ToneSum{};
    return ToneSum{0.0, {ToneComponent{freq_hz, std::abs(phasor), std::arg(phasor)}}};
}

struct AmpInput {
    ToneSum dm;  // legitimate output plus DM disturbance
    ToneSum cm;  // common-mode level at the amplifier input
};

ToneSum apply_amp(const VictimPipeline& p, const AmpInput& in) {
    switch (p.amp_stage) {
        case AmpStage::ideal:
            return in.dm.scaled(p.ideal_gain);
        case AmpStage::cmrr: {
            const double feedthrough = p.cmrr_amp.differential_gain / cmrr(p.cmrr_amp);
            return in.dm.scaled(p.cmrr_amp.differential_gain)
                .plus(in.cm.scaled(feedthrough));
        }
        case AmpStage::nonlinear: {
            const ToneSum& x = in.dm;
            ToneSum out = x.scaled(p.nonlinear_amp.gain_linear);
            if (p.nonlinear_amp.gain_quadratic != 0.0) {
                out = out.plus(x.times(x).scaled(p.nonlinear_amp.gain_quadratic));
            }
            return out;
        }
    }
    throw std::logic_error("apply_amp: unknown amplifier stage");
}

double max_frequency(const ToneSum& t) {
    double f = 0.0;
    for (const ToneComponent& c : t.components) f = std::max(f, c.freq_hz);
    return f;
}

Waveform render(const ToneSum& t, double duration_s, double min_rate_hz) {
    const double f_max = max_frequency(t);
    double rate = std::max(min_rate_hz, 32.0 * f_max);
    rate = std::max(rate, 1000.0 / duration_s);
    auto n = static_cast<std::size_t>(std::llround(duration_s * rate));
    n = std::max<std::size_t>(n, 16);

    Waveform w;
    w.sample_rate = rate;
    w.samples.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        w.samples[k] = t.eval(static_cast<double>(k) / rate);
    }
    w.analytic = t;
    return w;
}

/// Chain output (post-amp, post-filter) for a given attack amplitude.
ToneSum chain_output(const VictimPipeline& p, double freq_hz, double vs_volt) {
    const double omega = 2.0 * M_PI * freq_hz;
    ToneSum dm_disturbance;
    ToneSum cm_level;
    if (vs_volt != 0.0) {
        CouplingNetwork coupling = p.coupling;
        coupling.source_amplitude = vs_volt;
        CouplingSolution cpl;
        try {
            cpl = solve_coupling(coupling, omega);
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string("coupling stage: ") + e.what());
        }
        ConversionSolution conv;
        try {
            conv = solve_conversion(p.conversion, ConversionExcitation{0.0, cpl.i_cm, 0.0, 0.0},
                                    omega);
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string("conversion stage: ") + e.what());
        }
        dm_disturbance = tone_from_phasor(freq_hz, conv.v_dm_o);
        cm_level = tone_from_phasor(
            freq_hz, (conv.node_voltages[4] + conv.node_voltages[5]) / 2.0);
    }

    ToneSum out = apply_amp(p, AmpInput{p.legitimate_output.plus(dm_disturbance), cm_level});
    if (p.filter_cutoff_hz) out = out.lowpassed(*p.filter_cutoff_hz, false);
    return out;
}

}  // namespace

EndToEndResult run_endtoend(const VictimPipeline& p, double freq_hz, double vs_volt,
                            double duration_s) {
    if (!(freq_hz > 0.0)) throw std::invalid_argument("run_endtoend: freq must be > 0");
    if (!(duration_s > 0.0)) throw std::invalid_argument("run_endtoend: duration must be > 0");

    const ToneSum attacked = chain_output(p, freq_hz, vs_volt);
    const ToneSum baseline = chain_output(p, freq_hz, 0.0);

    EndToEndResult result;
    double metric_attacked = 0.0;
    double metric_baseline = 0.0;

    if (p.comparator) {
        const double min_rate = 32.0 * freq_hz;
        const Waveform w_att = render(attacked, duration_s, min_rate);
        const Waveform w_base = render(baseline, duration_s, min_rate);
        const ComparatorOutput att = comparator_pulses(*p.comparator, w_att);
        const ComparatorOutput base = comparator_pulses(*p.comparator, w_base);
        metric_attacked = static_cast<double>(att.rising_edges) / duration_s;
        metric_baseline = static_cast<double>(base.rising_edges) / duration_s;
        result.corrupted_output = att.digital;
    } else if (p.adc) {
        const Waveform w_att = render(attacked, duration_s, 4.0 * p.adc->sample_rate_fs);
        const Waveform w_base = render(baseline, duration_s, 4.0 * p.adc->sample_rate_fs);
        const Waveform s_att = sample_adc(*p.adc, w_att);
        const Waveform s_base = sample_adc(*p.adc, w_base);
        metric_attacked = sample_mean(s_att.samples);
        metric_baseline = sample_mean(s_base.samples);
        result.corrupted_output = s_att;
    } else {
        // Analog output: the metric is the RMS of the disturbance itself,
        // which keeps deviation exactly linear in Vs for linear stages.
        metric_attacked = attacked.plus(baseline.scaled(-1.0)).rms();
        metric_baseline = 0.0;
        result.corrupted_output = render(attacked, duration_s, 32.0 * freq_hz);
    }

    result.metrics.x = freq_hz;
    result.metrics.output_metric = metric_attacked;
    result.metrics.deviation = std::abs(metric_attacked - metric_baseline) /
                               std::max(std::abs(metric_baseline), kDeviationFloor);
    return result;
}

std::vector<SweepRow> frequency_sweep(const VictimPipeline& p, const FrequencyGrid& grid,
                                      double duration_s) {
    const std::vector<double> freqs = grid.frequencies();
    std::vector<SweepRow> rows(freqs.size());
    parallel_for(freqs.size(), [&](std::size_t i) {
        rows[i] = run_endtoend(p, freqs[i], p.coupling.source_amplitude, duration_s).metrics;
    });
    return rows;
}

std::vector<SweepRow> find_vulnerable_frequencies(const VictimPipeline& p,
                                                  const FrequencyGrid& grid,
                                                  std::size_t top_k, double duration_s) {
    if (top_k == 0) throw std::invalid_argument("find_vulnerable_frequencies: top_k must be >= 1");
    std::vector<SweepRow> rows = frequency_sweep(p, grid, duration_s);
    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.deviation != b.deviation) return a.deviation > b.deviation;
        return a.x < b.x;
    });
    if (rows.size() > top_k) rows.resize(top_k);
    return rows;
}

std::vector<SweepRow> amplitude_response(const VictimPipeline& p, double freq_hz,
                                         const std::vector<double>& amplitudes,
                                         double duration_s) {
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        if (amplitudes[i] < 0.0 || (i > 0 && amplitudes[i] <= amplitudes[i - 1])) {
            throw std::invalid_argument("amplitude_response: amplitudes must be increasing");
        }
    }
    std::vector<SweepRow> rows(amplitudes.size());
    parallel_for(amplitudes.size(), [&](std::size_t i) {
        SweepRow row = run_endtoend(p, freq_hz, amplitudes[i], duration_s).metrics;
        row.x = amplitudes[i];
        rows[i] = row;
    });
    return rows;
}

std::vector<FrcRow> frc_endtoend(const VictimPipeline& p, const FrequencyGrid& grid) {
    const std::vector<double> freqs = grid.frequencies();
    std::vector<FrcRow> rows(freqs.size());
    parallel_for(freqs.size(), [&](std::size_t i) {
        const double omega = 2.0 * M_PI * freqs[i];
        const Complex mu = coupling_factor_closed_form(p.coupling, omega);
        const Complex k2 = conversion_coefficients(p.conversion, omega).k2;
        const Complex v_dm = k2 * mu * p.coupling.source_amplitude;
        rows[i] = FrcRow{freqs[i], std::abs(v_dm), std::arg(v_dm)};
    });
    return rows;
}

}  // namespace gndline

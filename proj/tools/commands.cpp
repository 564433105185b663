#include "commands.hpp"

#include "gndline/csvio.hpp"
#include "gndline/guard.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace gndline::cli {
namespace {

FrequencyGrid pick_grid(const ScenarioConfig& cfg, const std::optional<FrequencyGrid>& over) {
    return over ? *over : cfg.sweep.grid;
}

void write_frc_csv(const std::vector<FrcRow>& rows, const std::string& unit_note,
                   const std::string& out_path) {
    CsvWriter csv;
    csv.add_comment(unit_note);
    csv.set_header({"frequency_hz", "magnitude", "phase_rad"});
    for (const FrcRow& r : rows) csv.add_numeric_row({r.frequency_hz, r.magnitude, r.phase_rad});
    csv.write(out_path);
}

void write_metrics_csv(const std::vector<std::pair<std::string, double>>& rows,
                       const std::string& out_path) {
    CsvWriter csv;
    csv.add_comment("one metric per row; units embedded in the metric name");
    csv.set_header({"metric", "value"});
    for (const auto& [name, value] : rows) csv.add_row({name, format_number(value)});
    csv.write(out_path);
}

AttackMethod method_from_name(const std::string& name) {
    if (name == "ac") return AttackMethod::ac;
    if (name == "pulse") return AttackMethod::pulse;
    if (name == "dc") return AttackMethod::dc;
    if (name == "tone") return AttackMethod::tone;
    throw ConfigError("unknown attack method: " + name);
}

}  // namespace

void cmd_frc(const ScenarioConfig& cfg, const std::string& which, const std::string& out_path,
             const std::optional<FrequencyGrid>& grid_override) {
    const FrequencyGrid grid = pick_grid(cfg, grid_override);
    if (which == "coupling") {
        write_frc_csv(frc_cm_current(cfg.coupling, grid),
                      "magnitude: |I_CM| in ampere; phase_rad in radian", out_path);
    } else if (which == "conversion") {
        write_frc_csv(frc_conversion(cfg.conversion, grid),
                      "magnitude: |k2| in ohm; phase_rad in radian", out_path);
    } else if (which == "endtoend") {
        write_frc_csv(frc_endtoend(cfg.pipeline, grid),
                      "magnitude: |V_DM| in volt; phase_rad in radian", out_path);
    } else {
        throw ConfigError("frc: unknown stage '" + which +
                          "' (expected coupling, conversion or endtoend)");
    }
}

void cmd_attack(const ScenarioConfig& cfg, const std::string& method,
                const std::string& out_waveform_path, const std::string& out_metrics_path,
                const std::optional<std::string>& out_pcm_path) {
    const AttackMethod m = method_from_name(method);
    if (m != cfg.attack.method)
        throw ConfigError("attack: scenario configures a different method than '" + method + "'");

    Waveform wave;
    std::vector<std::pair<std::string, double>> metrics;

    if (m == AttackMethod::ac) {
        const AcAttackConfig& ac = cfg.attack.ac;
        const Waveform baseband = synth_tone(ac.baseband_freq_hz, 1.0, 0.0, ac.duration_s,
                                             ac.sample_rate_hz);
        wave = design_ac_attack(baseband, ac.carrier_freq_hz);

        // Demodulation check: square-law stage then low-pass recovers the
        // baseband with amplitude B.
        const NonlinearAmp amp = cfg.pipeline.amp_stage == AmpStage::nonlinear
                                     ? cfg.pipeline.nonlinear_amp
                                     : NonlinearAmp{1.0, 0.5};
        const double cutoff = cfg.pipeline.filter_cutoff_hz.value_or(2.0 * ac.baseband_freq_hz);
        const Waveform recovered = lowpass_ideal(apply_nonlinear_amp(amp, wave), cutoff, true);
        metrics = {
            {"carrier_freq_hz", ac.carrier_freq_hz},
            {"baseband_freq_hz", ac.baseband_freq_hz},
            {"recovered_freq_hz", dominant_frequency(recovered.samples, recovered.sample_rate)},
            {"recovered_amplitude_volt",
             measured_tone_amplitude(recovered, ac.baseband_freq_hz)},
            {"expected_amplitude_volt", amp.gain_quadratic},
        };
    } else if (m == AttackMethod::pulse) {
        if (!cfg.pipeline.comparator)
            throw ConfigError("attack: pulse method needs a comparator in the pipeline");
        const PulseAttackConfig& pc = cfg.attack.pulse;
        wave = design_pulse_attack(pc.target_pulse_rate_hz, pc.jitter_amplitude_volt,
                                   *cfg.pipeline.comparator, pc.duration_s, pc.sample_rate_hz);
        const ComparatorOutput out = comparator_pulses(*cfg.pipeline.comparator, wave);
        metrics = {
            {"target_pulse_rate_hz", pc.target_pulse_rate_hz},
            {"duration_s", pc.duration_s},
            {"rising_edges", static_cast<double>(out.rising_edges)},
            {"edges_per_s", static_cast<double>(out.rising_edges) / pc.duration_s},
        };
    } else if (m == AttackMethod::dc) {
        if (!cfg.pipeline.adc)
            throw ConfigError("attack: dc method needs an adc in the pipeline");
        const DcAttackConfig& dc = cfg.attack.dc;
        const double fs = cfg.pipeline.adc->sample_rate_fs;
        const DcAttackDesign design =
            design_dc_attack(dc.target_bias_volt, fs, {dc.band_low_hz, dc.band_high_hz});

        const double duration = 64.0 / fs;
        const double rate = 8.0 * design.carrier_freq_hz;
        wave = synth_tone(design.carrier_freq_hz, design.amplitude, design.phase_rad, duration,
                          rate);
        const Waveform sampled = sample_adc(*cfg.pipeline.adc, wave);
        metrics = {
            {"carrier_freq_hz", design.carrier_freq_hz},
            {"amplitude_volt", design.amplitude},
            {"phase_rad", design.phase_rad},
            {"target_bias_volt", dc.target_bias_volt},
            {"sampled_mean_volt", sample_mean(sampled.samples)},
            {"sampled_std_volt", sample_std(sampled.samples)},
        };
    } else {
        throw ConfigError("attack: method must be ac, pulse or dc");
    }

    write_waveform_csv(wave, out_waveform_path);
    if (out_pcm_path) write_waveform_pcm(wave, *out_pcm_path);
    write_metrics_csv(metrics, out_metrics_path);
}

void cmd_sweep(const ScenarioConfig& cfg, const std::string& out_path,
               const std::optional<FrequencyGrid>& grid_override) {
    const double duration = cfg.attack.tone.duration_s;
    std::vector<SweepRow> rows;
    std::string x_note;
    if (cfg.sweep.kind == SweepKind::frequency) {
        rows = frequency_sweep(cfg.pipeline, pick_grid(cfg, grid_override), duration);
        x_note = "x: attack frequency in hertz";
    } else {
        rows = amplitude_response(cfg.pipeline, cfg.sweep.freq_hz, cfg.sweep.amplitudes(),
                                  duration);
        x_note = "x: attack source amplitude in volt";
    }

    CsvWriter csv;
    csv.add_comment(x_note +
                    "; output_metric: edges/s, mean sampled volt or disturbance RMS volt per "
                    "pipeline tail; deviation dimensionless");
    csv.set_header({"x", "output_metric", "deviation"});
    for (const SweepRow& r : rows) csv.add_numeric_row({r.x, r.output_metric, r.deviation});
    csv.write(out_path);
}

void cmd_guard(const ScenarioConfig& cfg, const std::string& check, const std::string& out_path,
               const std::optional<FrequencyGrid>& grid_override) {
    if (check == "detect") {
        const CmChokeDetector det{cfg.guard.mutual_inductance_henry,
                                  cfg.guard.sense_resistance_ohm, cfg.guard.threshold_volt};
        const DetectionVerdict v = detect_attack_endtoend(cfg.pipeline, det,
                                                          cfg.attack.tone.freq_hz, cfg.vs_volt);
        CsvWriter csv;
        csv.add_comment("sense_voltage_volt: |j w M (I_g + I_s)|; detected: 0/1");
        csv.set_header({"frequency_hz", "sense_voltage_volt", "threshold_volt", "detected"});
        csv.add_numeric_row({v.frequency_hz, v.sense_voltage_magnitude, det.threshold,
                             v.detected ? 1.0 : 0.0});
        csv.write(out_path);
    } else if (check == "defense") {
        if (!cfg.pipeline.adc)
            throw ConfigError("guard: defense check needs an adc in the pipeline");
        if (cfg.attack.method != AttackMethod::dc)
            throw ConfigError("guard: defense check needs a dc attack in the scenario");
        const double fs = cfg.pipeline.adc->sample_rate_fs;
        AdcSampler fixed{fs, JitterMode::none, 0.0, cfg.seed};
        AdcSampler randomized{fs, JitterMode::uniform_random,
                              cfg.guard.jitter_span_s.value_or(1.0 / fs), cfg.seed};
        const DcAttackDesign design = design_dc_attack(
            cfg.attack.dc.target_bias_volt, fs,
            {cfg.attack.dc.band_low_hz, cfg.attack.dc.band_high_hz});
        const RandomizedSamplingReport rep =
            evaluate_randomized_sampling(fixed, randomized, design, 256.0 / fs);
        CsvWriter csv;
        csv.add_comment("std columns in volt; defense_effective: 0/1");
        csv.set_header({"std_fixed", "std_random", "defense_effective"});
        csv.add_numeric_row({rep.std_fixed, rep.std_random, rep.defense_effective ? 1.0 : 0.0});
        csv.write(out_path);
    } else if (check == "whatif") {
        const std::vector<SymmetryWhatIfRow> rows =
            symmetry_whatif(cfg.conversion, pick_grid(cfg, grid_override));
        CsvWriter csv;
        csv.add_comment("k2 columns: |k2| in ohm before/after symmetrizing the named pair");
        csv.set_header({"parameter", "frequency_hz", "k2_before_ohm", "k2_after_ohm"});
        for (const SymmetryWhatIfRow& r : rows)
            csv.add_row({r.parameter, format_number(r.frequency_hz), format_number(r.k2_before),
                         format_number(r.k2_after)});
        csv.write(out_path);
    } else {
        throw ConfigError("guard: unknown check '" + check +
                          "' (expected detect, defense or whatif)");
    }
}

FrequencyGrid parse_grid_flag(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() != 4)
        throw ConfigError("--grid expects start,stop,points,log|lin");

    FrequencyGrid grid;
    try {
        grid.start_hz = std::stod(parts[0]);
        grid.stop_hz = std::stod(parts[1]);
        grid.points = static_cast<std::size_t>(std::stoul(parts[2]));
    } catch (const std::exception&) {
        throw ConfigError("--grid: numeric field is not parseable in '" + text + "'");
    }
    if (parts[3] == "log") {
        grid.spacing = GridSpacing::log;
    } else if (parts[3] == "lin") {
        grid.spacing = GridSpacing::linear;
    } else {
        throw ConfigError("--grid spacing must be log or lin, got '" + parts[3] + "'");
    }
    if (!(grid.start_hz > 0.0) || !(grid.stop_hz > grid.start_hz) || grid.points < 1)
        throw ConfigError("--grid: need 0 < start < stop and points >= 1");
    return grid;
}

}  // namespace gndline::cli

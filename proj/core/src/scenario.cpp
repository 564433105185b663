#include "gndline/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>

namespace gndline {

using nlohmann::json;

std::vector<double> SweepConfig::amplitudes() const {
    if (!(amp_step_volt > 0.0)) throw ConfigError("sweep.amplitudes: step must be > 0");
    std::vector<double> out;
    for (double a = amp_start_volt; a <= amp_stop_volt + 1e-9; a += amp_step_volt) {
        out.push_back(a);
    }
    return out;
}

namespace {

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& required,
                  const std::set<std::string>& optional = {}) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        if (!required.count(key) && !optional.count(key)) {
            throw ConfigError(where + ": unknown key \"" + key + "\"");
        }
    }
    for (const std::string& key : required) {
        if (!obj.contains(key)) {
            throw ConfigError(where + ": missing key \"" + key + "\"");
        }
    }
}

double get_number(const json& obj, const std::string& where, const std::string& key) {
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return v.get<double>();
}

double get_number_or(const json& obj, const std::string& where, const std::string& key,
                     double fallback) {
    if (!obj.contains(key)) return fallback;
    return get_number(obj, where, key);
}

ImpedanceElement parse_element(const json& obj, const std::string& where) {
    require_keys(obj, where, {"r_ohm", "l_henry", "c_farad"});
    ImpedanceElement e;
    e.resistance = get_number(obj, where, "r_ohm");
    e.inductance = get_number(obj, where, "l_henry");
    if (e.resistance < 0.0) throw ConfigError(where + ".r_ohm: must be >= 0");
    if (e.inductance < 0.0) throw ConfigError(where + ".l_henry: must be >= 0");
    const json& c = obj.at("c_farad");
    if (c.is_string()) {
        if (c.get<std::string>() != "absent") {
            throw ConfigError(where + ".c_farad: expected a number or \"absent\"");
        }
    } else if (c.is_number()) {
        const double value = c.get<double>();
        if (!(value > 0.0)) throw ConfigError(where + ".c_farad: must be > 0 or \"absent\"");
        e.capacitance = value;
    } else {
        throw ConfigError(where + ".c_farad: expected a number or \"absent\"");
    }
    return e;
}

CouplingNetwork parse_coupling(const json& obj, double vs_volt) {
    const std::string where = "coupling";
    require_keys(obj, where,
                 {"z_ga1", "z_sa1", "z_gs1", "z_ga2", "z_sa2", "z_gs2", "z_g", "z_s", "z_v"});
    CouplingNetwork net;
    net.source_amplitude = vs_volt;
    net.z_ga1 = parse_element(obj.at("z_ga1"), where + ".z_ga1");
    net.z_sa1 = parse_element(obj.at("z_sa1"), where + ".z_sa1");
    net.z_gs1 = parse_element(obj.at("z_gs1"), where + ".z_gs1");
    net.z_ga2 = parse_element(obj.at("z_ga2"), where + ".z_ga2");
    net.z_sa2 = parse_element(obj.at("z_sa2"), where + ".z_sa2");
    net.z_gs2 = parse_element(obj.at("z_gs2"), where + ".z_gs2");
    net.z_g = parse_element(obj.at("z_g"), where + ".z_g");
    net.z_s = parse_element(obj.at("z_s"), where + ".z_s");
    net.z_v = parse_element(obj.at("z_v"), where + ".z_v");
    return net;
}

ConversionNetwork parse_conversion(const json& obj) {
    const std::string where = "conversion";
    require_keys(obj, where, {"z_1i", "z_2i", "z_3i", "z_1o", "z_2o", "z_3o", "z_l", "z_r"});
    ConversionNetwork net;
    net.z_1i = parse_element(obj.at("z_1i"), where + ".z_1i");
    net.z_2i = parse_element(obj.at("z_2i"), where + ".z_2i");
    net.z_3i = parse_element(obj.at("z_3i"), where + ".z_3i");
    net.z_1o = parse_element(obj.at("z_1o"), where + ".z_1o");
    net.z_2o = parse_element(obj.at("z_2o"), where + ".z_2o");
    net.z_3o = parse_element(obj.at("z_3o"), where + ".z_3o");
    net.z_l = parse_element(obj.at("z_l"), where + ".z_l");
    net.z_r = parse_element(obj.at("z_r"), where + ".z_r");
    return net;
}

FrequencyGrid parse_grid(const json& obj, const std::string& where) {
    require_keys(obj, where, {"start_hz", "stop_hz", "points"}, {"spacing"});
    FrequencyGrid grid;
    grid.start_hz = get_number(obj, where, "start_hz");
    grid.stop_hz = get_number(obj, where, "stop_hz");
    const double points = get_number(obj, where, "points");
    if (!(points >= 1.0) || points != std::floor(points)) {
        throw ConfigError(where + ".points: must be a positive integer");
    }
    grid.points = static_cast<std::size_t>(points);
    if (obj.contains("spacing")) {
        const std::string s = obj.at("spacing").get<std::string>();
        if (s == "log") {
            grid.spacing = GridSpacing::log;
        } else if (s == "lin" || s == "linear") {
            grid.spacing = GridSpacing::linear;
        } else {
            throw ConfigError(where + ".spacing: expected \"log\" or \"lin\"");
        }
    }
    return grid;
}

void parse_pipeline(const json& obj, ScenarioConfig& cfg) {
    const std::string where = "pipeline";
    require_keys(obj, where, {}, {"amp", "filter_cutoff_hz", "comparator", "adc", "legitimate"});
    VictimPipeline& p = cfg.pipeline;

    if (obj.contains("amp")) {
        const json& amp = obj.at("amp");
        if (!amp.contains("kind")) throw ConfigError("pipeline.amp: missing key \"kind\"");
        const std::string kind = amp.at("kind").get<std::string>();
        if (kind == "ideal") {
            require_keys(amp, "pipeline.amp", {"kind"}, {"gain"});
            p.amp_stage = AmpStage::ideal;
            p.ideal_gain = get_number_or(amp, "pipeline.amp", "gain", 1.0);
        } else if (kind == "cmrr") {
            require_keys(amp, "pipeline.amp",
                         {"kind", "g_m_siemens", "delta_g_m_siemens", "r_ss_ohm",
                          "differential_gain"});
            p.amp_stage = AmpStage::cmrr;
            p.cmrr_amp.g_m = get_number(amp, "pipeline.amp", "g_m_siemens");
            p.cmrr_amp.delta_g_m = get_number(amp, "pipeline.amp", "delta_g_m_siemens");
            p.cmrr_amp.r_ss = get_number(amp, "pipeline.amp", "r_ss_ohm");
            p.cmrr_amp.differential_gain = get_number(amp, "pipeline.amp", "differential_gain");
            if (!(p.cmrr_amp.delta_g_m > 0.0)) {
                throw ConfigError("pipeline.amp.delta_g_m_siemens: must be > 0");
            }
        } else if (kind == "nonlinear") {
            require_keys(amp, "pipeline.amp", {"kind", "gain_linear", "gain_quadratic_per_volt"});
            p.amp_stage = AmpStage::nonlinear;
            p.nonlinear_amp.gain_linear = get_number(amp, "pipeline.amp", "gain_linear");
            p.nonlinear_amp.gain_quadratic =
                get_number(amp, "pipeline.amp", "gain_quadratic_per_volt");
        } else {
            throw ConfigError("pipeline.amp.kind: expected ideal, cmrr, or nonlinear");
        }
    }

    if (obj.contains("filter_cutoff_hz")) {
        p.filter_cutoff_hz = get_number(obj, where, "filter_cutoff_hz");
        if (!(*p.filter_cutoff_hz > 0.0)) {
            throw ConfigError("pipeline.filter_cutoff_hz: must be > 0");
        }
    }

    if (obj.contains("comparator")) {
        const json& cmp = obj.at("comparator");
        require_keys(cmp, "pipeline.comparator", {"threshold_high_volt", "threshold_low_volt"},
                     {"initial_state"});
        HysteresisComparator c{};
        c.threshold_high = get_number(cmp, "pipeline.comparator", "threshold_high_volt");
        c.threshold_low = get_number(cmp, "pipeline.comparator", "threshold_low_volt");
        if (!(c.threshold_high > c.threshold_low)) {
            throw ConfigError("pipeline.comparator: threshold_high_volt must exceed "
                              "threshold_low_volt");
        }
        if (cmp.contains("initial_state")) {
            const std::string s = cmp.at("initial_state").get<std::string>();
            if (s == "high") {
                c.initial_high = true;
            } else if (s != "low") {
                throw ConfigError("pipeline.comparator.initial_state: expected low or high");
            }
        }
        p.comparator = c;
    }

    if (obj.contains("adc")) {
        const json& adc = obj.at("adc");
        require_keys(adc, "pipeline.adc", {"sample_rate_hz"}, {"jitter_mode", "jitter_span_s"});
        AdcSampler s{};
        s.sample_rate_fs = get_number(adc, "pipeline.adc", "sample_rate_hz");
        if (!(s.sample_rate_fs > 0.0)) {
            throw ConfigError("pipeline.adc.sample_rate_hz: must be > 0");
        }
        if (adc.contains("jitter_mode")) {
            const std::string m = adc.at("jitter_mode").get<std::string>();
            if (m == "uniform_random") {
                s.jitter_mode = JitterMode::uniform_random;
            } else if (m != "none") {
                throw ConfigError("pipeline.adc.jitter_mode: expected none or uniform_random");
            }
        }
        s.jitter_span = get_number_or(adc, "pipeline.adc", "jitter_span_s", 0.0);
        s.seed = cfg.seed;
        p.adc = s;
    }

    if (p.comparator && p.adc) {
        throw ConfigError("pipeline: comparator and adc stages are mutually exclusive");
    }

    if (obj.contains("legitimate")) {
        const json& legit = obj.at("legitimate");
        require_keys(legit, "pipeline.legitimate", {}, {"constant_volt", "tone"});
        p.legitimate_output = ToneSum{};
        p.legitimate_output.dc = get_number_or(legit, "pipeline.legitimate", "constant_volt", 0.0);
        if (legit.contains("tone")) {
            const json& tone = legit.at("tone");
            require_keys(tone, "pipeline.legitimate.tone", {"freq_hz", "amplitude_volt"},
                         {"phase_rad"});
            p.legitimate_output.components.push_back(ToneComponent{
                get_number(tone, "pipeline.legitimate.tone", "freq_hz"),
                get_number(tone, "pipeline.legitimate.tone", "amplitude_volt"),
                get_number_or(tone, "pipeline.legitimate.tone", "phase_rad", 0.0)});
        }
    }
}

void parse_attack(const json& obj, ScenarioConfig& cfg) {
    const std::string where = "attack";
    if (!obj.contains("method")) throw ConfigError("attack: missing key \"method\"");
    const std::string method = obj.at("method").get<std::string>();
    AttackConfig& a = cfg.attack;
    if (method == "tone") {
        require_keys(obj, where, {"method", "freq_hz"}, {"duration_s"});
        a.method = AttackMethod::tone;
        a.tone.freq_hz = get_number(obj, where, "freq_hz");
        a.tone.duration_s = get_number_or(obj, where, "duration_s", 0.02);
    } else if (method == "ac") {
        require_keys(obj, where,
                     {"method", "baseband_freq_hz", "carrier_freq_hz", "duration_s",
                      "sample_rate_hz"});
        a.method = AttackMethod::ac;
        a.ac.baseband_freq_hz = get_number(obj, where, "baseband_freq_hz");
        a.ac.carrier_freq_hz = get_number(obj, where, "carrier_freq_hz");
        a.ac.duration_s = get_number(obj, where, "duration_s");
        a.ac.sample_rate_hz = get_number(obj, where, "sample_rate_hz");
    } else if (method == "pulse") {
        require_keys(obj, where,
                     {"method", "target_pulse_rate_hz", "jitter_amplitude_volt", "duration_s",
                      "sample_rate_hz"});
        a.method = AttackMethod::pulse;
        a.pulse.target_pulse_rate_hz = get_number(obj, where, "target_pulse_rate_hz");
        a.pulse.jitter_amplitude_volt = get_number(obj, where, "jitter_amplitude_volt");
        a.pulse.duration_s = get_number(obj, where, "duration_s");
        a.pulse.sample_rate_hz = get_number(obj, where, "sample_rate_hz");
    } else if (method == "dc") {
        require_keys(obj, where, {"method", "target_bias_volt", "band_low_hz", "band_high_hz"});
        a.method = AttackMethod::dc;
        a.dc.target_bias_volt = get_number(obj, where, "target_bias_volt");
        a.dc.band_low_hz = get_number(obj, where, "band_low_hz");
        a.dc.band_high_hz = get_number(obj, where, "band_high_hz");
    } else {
        throw ConfigError("attack.method: expected tone, ac, pulse, or dc");
    }
}

void parse_sweep(const json& obj, ScenarioConfig& cfg) {
    const std::string where = "sweep";
    if (!obj.contains("kind")) throw ConfigError("sweep: missing key \"kind\"");
    const std::string kind = obj.at("kind").get<std::string>();
    if (kind == "frequency") {
        require_keys(obj, where, {"kind", "grid"});
        cfg.sweep.kind = SweepKind::frequency;
        cfg.sweep.grid = parse_grid(obj.at("grid"), "sweep.grid");
    } else if (kind == "amplitude") {
        require_keys(obj, where, {"kind", "freq_hz", "amplitudes"});
        cfg.sweep.kind = SweepKind::amplitude;
        cfg.sweep.freq_hz = get_number(obj, where, "freq_hz");
        const json& amps = obj.at("amplitudes");
        require_keys(amps, "sweep.amplitudes", {"start_volt", "stop_volt", "step_volt"});
        cfg.sweep.amp_start_volt = get_number(amps, "sweep.amplitudes", "start_volt");
        cfg.sweep.amp_stop_volt = get_number(amps, "sweep.amplitudes", "stop_volt");
        cfg.sweep.amp_step_volt = get_number(amps, "sweep.amplitudes", "step_volt");
    } else {
        throw ConfigError("sweep.kind: expected frequency or amplitude");
    }
}

void parse_guard(const json& obj, ScenarioConfig& cfg) {
    const std::string where = "guard";
    require_keys(obj, where, {},
                 {"mutual_inductance_henry", "sense_resistance_ohm", "noise_floor_volt",
                  "threshold_volt", "jitter_span_s"});
    GuardConfig& g = cfg.guard;
    g.mutual_inductance_henry =
        get_number_or(obj, where, "mutual_inductance_henry", g.mutual_inductance_henry);
    g.sense_resistance_ohm =
        get_number_or(obj, where, "sense_resistance_ohm", g.sense_resistance_ohm);
    g.noise_floor_volt = get_number_or(obj, where, "noise_floor_volt", g.noise_floor_volt);
    g.threshold_volt =
        get_number_or(obj, where, "threshold_volt", 10.0 * g.noise_floor_volt);
    if (obj.contains("jitter_span_s")) {
        g.jitter_span_s = get_number(obj, where, "jitter_span_s");
    }
}

}  // namespace

ScenarioConfig parse_scenario_text(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("scenario parse error: ") + e.what());
    }

    require_keys(doc, "scenario", {"name", "coupling", "conversion"},
                 {"seed", "source", "pipeline", "attack", "sweep", "guard"});

    ScenarioConfig cfg;
    cfg.name = doc.at("name").get<std::string>();
    if (doc.contains("seed")) {
        const json& s = doc.at("seed");
        if (!s.is_number_unsigned()) throw ConfigError("seed: expected an unsigned integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("source")) {
        require_keys(doc.at("source"), "source", {}, {"vs_volt"});
        cfg.vs_volt = get_number_or(doc.at("source"), "source", "vs_volt", 300.0);
    }

    cfg.coupling = parse_coupling(doc.at("coupling"), cfg.vs_volt);
    cfg.conversion = parse_conversion(doc.at("conversion"));
    cfg.pipeline.coupling = cfg.coupling;
    cfg.pipeline.conversion = cfg.conversion;

    if (doc.contains("pipeline")) parse_pipeline(doc.at("pipeline"), cfg);
    if (doc.contains("attack")) parse_attack(doc.at("attack"), cfg);
    if (doc.contains("sweep")) parse_sweep(doc.at("sweep"), cfg);
    if (doc.contains("guard")) parse_guard(doc.at("guard"), cfg);
    return cfg;
}

ScenarioConfig parse_scenario(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open scenario file: " + path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (text.empty()) throw ConfigError("scenario file is empty: " + path);
    return parse_scenario_text(text);
}

}  // namespace gndline

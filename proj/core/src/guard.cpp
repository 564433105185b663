#include "gndline/guard.hpp"

#include <cmath>

namespace gndline {

DetectionVerdict detect_cm(const CmChokeDetector& det, Complex i_g, Complex i_s,
                           double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("detect_cm: omega must be > 0");
    const Complex v_sense = Complex{0.0, omega * det.mutual_inductance} * (i_g + i_s);
    const double magnitude = std::abs(v_sense);
    return DetectionVerdict{magnitude, magnitude > det.threshold, omega / (2.0 * M_PI)};
}

DetectionVerdict detect_attack_endtoend(const VictimPipeline& p, const CmChokeDetector& det,
                                        double freq_hz, double vs_volt) {
    CouplingNetwork coupling = p.coupling;
    coupling.source_amplitude = vs_volt;
    const CouplingSolution sol = solve_coupling(coupling, 2.0 * M_PI * freq_hz);
    return detect_cm(det, sol.i_g, sol.i_s, sol.omega);
}

RandomizedSamplingReport evaluate_randomized_sampling(const AdcSampler& adc_fixed,
                                                      const AdcSampler& adc_random,
                                                      const DcAttackDesign& dc_attack,
                                                      double window_s) {
    const double ratio = dc_attack.carrier_freq_hz / adc_fixed.sample_rate_fs;
    if (std::abs(ratio - std::round(ratio)) > 1e-9) {
        throw std::invalid_argument(
            "evaluate_randomized_sampling: carrier must be an integer multiple of the fixed "
            "sample rate (a working DC attack)");
    }

    Waveform carrier;
    carrier.sample_rate = 4.0 * dc_attack.carrier_freq_hz;
    carrier.samples.resize(
        static_cast<std::size_t>(std::llround(window_s * carrier.sample_rate)));
    carrier.analytic = ToneSum{
        0.0, {ToneComponent{dc_attack.carrier_freq_hz, dc_attack.amplitude, dc_attack.phase_rad}}};
    for (std::size_t k = 0; k < carrier.samples.size(); ++k) {
        carrier.samples[k] = carrier.analytic->eval(static_cast<double>(k) / carrier.sample_rate);
    }

    RandomizedSamplingReport report{};
    report.std_fixed = sample_std(sample_adc(adc_fixed, carrier).samples);
    report.std_random = sample_std(sample_adc(adc_random, carrier).samples);
    report.defense_effective = report.std_random > 0.5 * dc_attack.amplitude &&
                               report.std_fixed < 1e-3 * dc_attack.amplitude;
    return report;
}

namespace {

ImpedanceElement element_mean(const ImpedanceElement& a, const ImpedanceElement& b) {
    if (a.capacitance.has_value() != b.capacitance.has_value()) {
        throw std::invalid_argument(
            "symmetry_whatif: cannot average a capacitive element with a shorted one");
    }
    ImpedanceElement m;
    m.resistance = (a.resistance + b.resistance) / 2.0;
    m.inductance = (a.inductance + b.inductance) / 2.0;
    if (a.capacitance) m.capacitance = (*a.capacitance + *b.capacitance) / 2.0;
    return m;
}

}  // namespace

std::vector<SymmetryWhatIfRow> symmetry_whatif(const ConversionNetwork& net,
                                               const FrequencyGrid& grid) {
    struct Variant {
        std::string name;
        ConversionNetwork net;
    };

    ConversionNetwork out_sym = net;
    out_sym.z_1o = out_sym.z_2o = element_mean(net.z_1o, net.z_2o);
    ConversionNetwork line_sym = net;
    line_sym.z_l = line_sym.z_r = element_mean(net.z_l, net.z_r);
    ConversionNetwork in_sym = net;
    in_sym.z_1i = in_sym.z_2i = element_mean(net.z_1i, net.z_2i);
    ConversionNetwork full_sym = out_sym;
    full_sym.z_l = full_sym.z_r = line_sym.z_l;
    full_sym.z_1i = full_sym.z_2i = in_sym.z_1i;

    const std::vector<Variant> variants = {
        {"z_1o/z_2o", out_sym},
        {"z_l/z_r", line_sym},
        {"z_1i/z_2i", in_sym},
        {"all", full_sym},
    };

    std::vector<SymmetryWhatIfRow> rows;
    for (const double f : grid.frequencies()) {
        const double omega = 2.0 * M_PI * f;
        const double before = std::abs(conversion_coefficients(net, omega).k2);
        for (const Variant& v : variants) {
            const double after = std::abs(conversion_coefficients(v.net, omega).k2);
            rows.push_back(SymmetryWhatIfRow{v.name, f, before, after});
        }
    }
    return rows;
}

}  // namespace gndline

#pragma once

#include "gndline/pipeline.hpp"

#include <string>
#include <vector>

namespace gndline {

/// Three-winding common-mode choke used as a CM sensor: two windings sit
/// in the signal/GND lines, the third senses the core flux. Differential
/// currents cancel the flux; common-mode currents do not.
struct CmChokeDetector {
    double mutual_inductance;  // henry, sense-winding coupling M
    double sense_resistance;   // ohm, R_m across the sense winding
    double threshold;          // volt, detection decision level
};

struct DetectionVerdict {
    double sense_voltage_magnitude;  // |j w M (I_g + I_s)|
    bool detected;
    double frequency_hz;
};

/// V_sense = j w M (I_g + I_s); detected iff |V_sense| > threshold.
DetectionVerdict detect_cm(const CmChokeDetector& det, Complex i_g, Complex i_s,
                           double omega);

/// Solves the coupling stage at the attack frequency and feeds the line
/// currents into detect_cm.
DetectionVerdict detect_attack_endtoend(const VictimPipeline& p, const CmChokeDetector& det,
                                        double freq_hz, double vs_volt);

struct RandomizedSamplingReport {
    double std_fixed;   // volt
    double std_random;  // volt
    bool defense_effective;
};

/// Runs a working DC-bias attack against a fixed-rate sampler and a
/// randomized sampler. The defense counts as effective when the
/// randomized std rises above 0.5 * amplitude while the fixed std stays
/// below 1e-3 * amplitude.
RandomizedSamplingReport evaluate_randomized_sampling(const AdcSampler& adc_fixed,
                                                      const AdcSampler& adc_random,
                                                      const DcAttackDesign& dc_attack,
                                                      double window_s);

struct SymmetryWhatIfRow {
    std::string parameter;  // which pair was symmetrized
    double frequency_hz;
    double k2_before;
    double k2_after;
};

/// For each asymmetric pair (z_1o/z_2o, z_l/z_r, z_1i/z_2i) and for full
/// symmetrization, reports |k2| with that pair replaced by its
/// elementwise mean, per grid frequency.
std::vector<SymmetryWhatIfRow> symmetry_whatif(const ConversionNetwork& net,
                                               const FrequencyGrid& grid);

}  // namespace gndline

#pragma once

#include "gndline/conversion.hpp"
#include "gndline/coupling.hpp"
#include "gndline/grid.hpp"
#include "gndline/signal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gndline {

/// Finite-CMRR differential amplifier. CMRR = 2 g_m^2 R_ss / delta_g_m;
/// common-mode feedthrough gain is differential_gain / CMRR.
struct CmrrAmp {
    double g_m;                // siemens, average input transconductance
    double delta_g_m;          // siemens, transconductance mismatch, > 0
    double r_ss;               // ohm, current-source output impedance
    double differential_gain;  // dimensionless
};

double cmrr(const CmrrAmp& amp);

enum class AmpStage { ideal, cmrr, nonlinear };

/// End-to-end victim chain: coupling -> conversion -> amplifier ->
/// optional filter -> optional comparator or ADC.
struct VictimPipeline {
    CouplingNetwork coupling;
    ConversionNetwork conversion;

    AmpStage amp_stage = AmpStage::ideal;
    double ideal_gain = 1.0;                     // for AmpStage::ideal
    CmrrAmp cmrr_amp{1e-3, 1e-5, 1e6, 1.0};     // for AmpStage::cmrr
    NonlinearAmp nonlinear_amp{1.0, 0.0};       // for AmpStage::nonlinear

    std::optional<double> filter_cutoff_hz;
    std::optional<HysteresisComparator> comparator;
    std::optional<AdcSampler> adc;

    /// Baseline sensor reading: a constant plus an optional tone.
    ToneSum legitimate_output;
};

/// One sweep table row. deviation = |attacked - original| /
/// max(|original|, 1e-12), where the metric depends on the final stage:
/// rising edges per second (comparator), mean sampled value (ADC), or the
/// RMS of the disturbance (analog output, baseline metric 0).
struct SweepRow {
    double x;              // frequency hz or amplitude volt
    double output_metric;
    double deviation;
};

struct EndToEndResult {
    Waveform corrupted_output;
    SweepRow metrics;
};

/// Injects a tone attack of amplitude vs_volt at freq_hz: the coupling
/// solve yields I_CM, the conversion solve (pure-CM excitation) yields
/// the DM disturbance V5 - V6 and the CM level (V5 + V6)/2 at the
/// amplifier input; both propagate through the remaining stages as
/// time-domain tones added to the legitimate output.
EndToEndResult run_endtoend(const VictimPipeline& p, double freq_hz, double vs_volt,
                            double duration_s);

/// Frequency sweep at the scenario source amplitude; returns the top_k
/// frequencies by deviation, descending, ties toward lower frequency.
std::vector<SweepRow> find_vulnerable_frequencies(const VictimPipeline& p,
                                                  const FrequencyGrid& grid,
                                                  std::size_t top_k, double duration_s = 0.02);

/// Full deviation table over the grid, in grid order.
std::vector<SweepRow> frequency_sweep(const VictimPipeline& p, const FrequencyGrid& grid,
                                      double duration_s = 0.02);

std::vector<SweepRow> amplitude_response(const VictimPipeline& p, double freq_hz,
                                         const std::vector<double>& amplitudes,
                                         double duration_s = 0.02);

/// |k2 * mu * Vs| per grid frequency: the open-loop DM disturbance FRC.
std::vector<FrcRow> frc_endtoend(const VictimPipeline& p, const FrequencyGrid& grid);

}  // namespace gndline

#pragma once

#include "gndline/guard.hpp"
#include "gndline/pipeline.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace gndline {

/// Raised for any scenario-file problem: syntax, missing key, unknown
/// key, or out-of-range value. The message names the offending key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class AttackMethod { tone, ac, pulse, dc };

struct AcAttackConfig {
    double baseband_freq_hz;
    double carrier_freq_hz;
    double duration_s;
    double sample_rate_hz;
};

struct PulseAttackConfig {
    double target_pulse_rate_hz;
    double jitter_amplitude_volt;
    double duration_s;
    double sample_rate_hz;
};

struct DcAttackConfig {
    double target_bias_volt;
    double band_low_hz;
    double band_high_hz;
};

struct ToneAttackConfig {
    double freq_hz;
    double duration_s;
};

struct AttackConfig {
    AttackMethod method = AttackMethod::tone;
    ToneAttackConfig tone{100e3, 0.02};
    AcAttackConfig ac{};
    PulseAttackConfig pulse{};
    DcAttackConfig dc{};
};

enum class SweepKind { frequency, amplitude };

struct SweepConfig {
    SweepKind kind = SweepKind::frequency;
    FrequencyGrid grid;          // frequency sweeps
    double freq_hz = 100e3;      // amplitude sweeps
    double amp_start_volt = 0.0;
    double amp_stop_volt = 300.0;
    double amp_step_volt = 20.0;

    std::vector<double> amplitudes() const;
};

struct GuardConfig {
    double mutual_inductance_henry = 1e-3;
    double sense_resistance_ohm = 50.0;
    double noise_floor_volt = 1e-6;
    double threshold_volt = 1e-5;  // defaults to 10x the noise floor
    std::optional<double> jitter_span_s;  // defaults to one ADC period
};

struct ScenarioConfig {
    std::string name;
    std::uint64_t seed = 0;
    double vs_volt = 300.0;

    CouplingNetwork coupling;      // source_amplitude mirrors vs_volt
    ConversionNetwork conversion;

    VictimPipeline pipeline;       // networks embedded, seed applied to ADC
    AttackConfig attack;
    SweepConfig sweep;
    GuardConfig guard;
};

/// Loads and validates a scenario file (JSON). Unknown keys are a hard
/// error; so are missing sections and out-of-range element values.
ScenarioConfig parse_scenario(const std::string& path);

/// Same, from an in-memory JSON document.
ScenarioConfig parse_scenario_text(const std::string& json_text);

}  // namespace gndline

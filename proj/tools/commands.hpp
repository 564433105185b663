#pragma once

#include "gndline/scenario.hpp"

#include <optional>
#include <string>

namespace gndline::cli {

/// FRC table for the coupling stage (|I_CM|), the converting stage
/// (|k2|), or the composed chain (|k2 mu Vs|). Throws on invalid input;
/// the output file appears only on success.
void cmd_frc(const ScenarioConfig& cfg, const std::string& which, const std::string& out_path,
             const std::optional<FrequencyGrid>& grid_override = {});

/// Designs the configured attack waveform and writes it plus a metrics
/// table (recovered amplitude / edge count / sampled mean and std).
void cmd_attack(const ScenarioConfig& cfg, const std::string& method,
                const std::string& out_waveform_path, const std::string& out_metrics_path,
                const std::optional<std::string>& out_pcm_path = {});

/// Frequency or amplitude sweep table per the scenario's sweep section.
void cmd_sweep(const ScenarioConfig& cfg, const std::string& out_path,
               const std::optional<FrequencyGrid>& grid_override = {});

/// check is one of: detect (3P-CMC verdict), defense (randomized
/// sampling evaluation), whatif (conversion symmetrization table).
void cmd_guard(const ScenarioConfig& cfg, const std::string& check,
               const std::string& out_path,
               const std::optional<FrequencyGrid>& grid_override = {});

/// Parses "start,stop,points,log|lin".
FrequencyGrid parse_grid_flag(const std::string& text);

}  // namespace gndline::cli

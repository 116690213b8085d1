#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "xxz/scenario.hpp"

namespace xxz {

// Every file opens with the resolved configuration as '#'-prefixed lines,
// followed by a header row. Numbers are written with 17 significant digits.

void write_trace_csv(std::ostream& out, const ScenarioConfig& config, const TimeTrace& trace);
void write_prediction_csv(std::ostream& out, const ScenarioConfig& config, const EffectivePrediction& pred);
void write_summary_csv(std::ostream& out, const ScenarioConfig& config, const Metrics& metrics,
                       const std::vector<std::string>& warnings);
void write_spectrum_csv(std::ostream& out, const ScenarioConfig& config, const SpectralDecomposition& decomp);
void write_sweep_csv(std::ostream& out, const ScenarioConfig& config, const std::string& parameter,
                     const std::vector<SweepRow>& rows);

/// Output file for `kind` ("trace", "prediction", ...) of the configured scenario.
std::filesystem::path output_path(const ScenarioConfig& config, const std::string& kind);

}  // namespace xxz

#include "xxz/csv_output.hpp"

#include <iomanip>
#include <sstream>

#include "xxz/config.hpp"

namespace xxz {

namespace {

void preamble(std::ostream& out, const ScenarioConfig& config) {
  std::istringstream lines(render_config(config));
  std::string line;
  while (std::getline(lines, line)) out << "# " << line << '\n';
  out << std::setprecision(17);
}

}  // namespace

void write_trace_csv(std::ostream& out, const ScenarioConfig& config, const TimeTrace& trace) {
  preamble(out, config);
  out << "T";
  for (const auto& l : trace.probability_labels) out << ',' << l;
  for (const auto& l : trace.fidelity_labels) out << ',' << l;
  for (const auto& l : trace.concurrence_labels) out << ',' << l;
  out << '\n';
  for (Eigen::Index i = 0; i < trace.times.size(); ++i) {
    out << trace.times(i);
    for (Eigen::Index j = 0; j < trace.probabilities.cols(); ++j) out << ',' << trace.probabilities(i, j);
    for (Eigen::Index j = 0; j < trace.fidelities.cols(); ++j) out << ',' << trace.fidelities(i, j);
    for (Eigen::Index j = 0; j < trace.concurrences.cols(); ++j) out << ',' << trace.concurrences(i, j);
    out << '\n';
  }
}

void write_prediction_csv(std::ostream& out, const ScenarioConfig& config, const EffectivePrediction& pred) {
  preamble(out, config);
  for (const auto& w : pred.warnings) out << "# warning: " << w << '\n';
  if (pred.derived) out << "# note: first-order construction, no closed form quoted\n";
  out << "quantity,index,value\n";
  for (std::size_t i = 0; i < pred.energies.size(); ++i) out << "energy," << i << ',' << pred.energies[i] << '\n';
  out << "gap,0," << pred.gap << '\n';
  out << "period,0," << pred.period << '\n';
  for (std::size_t i = 0; i < pred.entanglement_times.size(); ++i) {
    out << "entanglement_time," << i << ',' << pred.entanglement_times[i] << '\n';
  }
}

void write_summary_csv(std::ostream& out, const ScenarioConfig& config, const Metrics& metrics,
                       const std::vector<std::string>& warnings) {
  preamble(out, config);
  for (const auto& w : warnings) out << "# warning: " << w << '\n';
  out << "metric,value\n";
  for (const auto& [name, value] : metrics) out << name << ',' << value << '\n';
}

void write_spectrum_csv(std::ostream& out, const ScenarioConfig& config, const SpectralDecomposition& decomp) {
  preamble(out, config);
  out << "index,energy,dominant_config,dominant_weight\n";
  for (Eigen::Index i = 0; i < decomp.eigenvalues.size(); ++i) {
    Eigen::Index row = 0;
    const double weight = decomp.eigenvectors.col(i).cwiseAbs2().maxCoeff(&row);
    out << i << ',' << decomp.eigenvalues(i) << ','
        << (decomp.basis ? config_label(decomp.basis->config(static_cast<std::size_t>(row))) : std::to_string(row))
        << ',' << weight << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const ScenarioConfig& config, const std::string& parameter,
                     const std::vector<SweepRow>& rows) {
  preamble(out, config);
  out << parameter << ",predicted_gap,measured_gap,relative_error,peak_fidelity\n";
  for (const auto& r : rows) {
    out << r.value << ',' << r.predicted_gap << ',' << r.measured_gap << ',' << r.relative_error << ','
        << r.peak_fidelity << '\n';
  }
}

std::filesystem::path output_path(const ScenarioConfig& config, const std::string& kind) {
  return std::filesystem::path(config.output_dir) / (to_string(config.scenario) + "_" + kind + ".csv");
}

}  // namespace xxz

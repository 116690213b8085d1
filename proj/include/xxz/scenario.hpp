#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xxz/dynamics.hpp"
#include "xxz/effective.hpp"

namespace xxz {

/// Detune `sites` by `detuning` at time `at` (or at the first predicted entanglement instant).
struct QuenchInstruction {
  std::optional<double> at;
  double detuning = 20.0;
  std::vector<int> sites;
};

/**
 * Everything needed to run one protocol. Energies are in units of B (the
 * coupling is fixed to 1), so times are reported as T = B t.
 */
struct ScenarioConfig {
  Scenario scenario = Scenario::kWFourDefects;
  int n_sites = 12;
  double anisotropy = 10.0;
  double base_spacing = 50.0;
  int n0 = 3;
  int mu = 0;
  double g = 10.0;

  // custom scenario only
  std::map<int, double> defects;
  int n_excitations = 1;
  std::vector<Config> tracked;
  std::optional<TargetKind> target;

  std::optional<Config> initial;
  std::optional<double> t_max;
  int samples = kDefaultSamples;
  int n_times = kDefaultEntanglementTimes;
  std::optional<QuenchInstruction> quench;
  std::string output_dir = ".";
};

/// Paper parameter sets; w-four-defects is the 12-site figure setup.
ScenarioConfig preset(Scenario scenario);

/// Everything derived from a config before any diagonalization.
struct ScenarioSetup {
  ChainSpec chain;
  BasisPtr basis;
  Config initial;
  std::vector<Config> tracked;
  std::optional<TargetState> target;
  std::optional<std::pair<int, int>> pair;  ///< qubits whose concurrence is reported
  std::optional<EffectivePrediction> prediction;
  std::vector<std::string> warnings;
  double t_max = 0.0;
  std::optional<double> quench_time;
};

/// Validates placement constraints; throws ConfigError naming the violated one.
ScenarioSetup setup_scenario(const ScenarioConfig& config);

/// Schedule implied by the setup (single segment when there is no quench).
QuenchSchedule schedule_for(const ScenarioConfig& config, const ScenarioSetup& setup);

/// Splitting of the exact eigenstates that dominate the given components.
struct MeasuredGap {
  double gap = 0.0;
  double min_weight = 0.0;              ///< smallest weight of a selected state on the components
  std::vector<Eigen::Index> states;     ///< eigenstate indices, ascending energy
  std::vector<double> energies;
};

/// Picks the components.size() eigenstates with the largest weight on the components.
MeasuredGap measured_gap(const SpectralDecomposition& decomp, const std::vector<Config>& components);

/// Sign of the adjacent-doublet second-order shift that best matches exact diagonalization.
SecondOrderShift match_shift_sign(const ChainSpec& chain, int n0);

/// Time of the first maximum of an oscillation starting near 1, after a full dip
/// (hysteresis at a quarter of the swing). Empty if the trace never dips below 1/2.
std::optional<double> first_return_time(const Eigen::VectorXd& times, const Eigen::VectorXd& p);

using Metrics = std::vector<std::pair<std::string, double>>;

double metric(const Metrics& metrics, const std::string& name);

struct ScenarioRun {
  ScenarioSetup setup;
  SpectralDecomposition spectrum;  ///< of the unquenched chain
  TimeTrace trace;
  Metrics summary;
};

ScenarioRun run_scenario(const ScenarioConfig& config);

struct SweepRow {
  double value = 0.0;
  double predicted_gap = 0.0;  ///< NaN when no closed form exists
  double measured_gap = 0.0;
  double relative_error = 0.0;
  double peak_fidelity = 0.0;
};

/// Parameters accepted by run_compare_sweep.
inline const std::vector<std::string> kSweepParameters = {"g", "delta", "mu", "n_sites"};

std::vector<SweepRow> run_compare_sweep(const ScenarioConfig& base, const std::string& parameter,
                                        const std::vector<double>& values);

}  // namespace xxz

#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "xxz/chain.hpp"
#include "xxz/entanglement.hpp"
#include "xxz/spectral.hpp"

namespace xxz {

/// One piece of a piecewise-constant protocol.
struct QuenchSegment {
  ChainSpec chain;
  double duration = 0.0;
};

/**
 * Instantaneous-quench protocol. Segments share N, B, Delta and eps0 and
 * differ only in defect offsets. The last segment is open-ended: samples past
 * the summed durations keep evolving under it.
 */
struct QuenchSchedule {
  std::vector<QuenchSegment> segments;

  void validate() const;
  /// Start time of every segment.
  std::vector<double> boundaries() const;
};

/// What to record at each sample time.
struct TraceRequest {
  std::vector<Config> tracked;
  std::vector<TargetState> targets;
  bool phase_maximized = true;
  std::vector<std::pair<int, int>> concurrence_pairs;
  bool check_closure = false;  ///< verify sum over the full basis is 1 within 1e-9
};

/// Rows are sample times; columns follow the label vectors.
struct TimeTrace {
  Eigen::VectorXd times;
  Eigen::MatrixXd probabilities;
  std::vector<std::string> probability_labels;
  Eigen::MatrixXd fidelities;
  std::vector<std::string> fidelity_labels;
  Eigen::MatrixXd concurrences;
  std::vector<std::string> concurrence_labels;
  Eigen::VectorXd total_probability;  ///< filled when closure was requested

  Eigen::Index column_of(const Config& config) const;
};

/// Default number of uniform samples per window.
inline constexpr int kDefaultSamples = 2000;

/// n uniform points covering [t_begin, t_end] inclusive.
Eigen::VectorXd uniform_times(double t_begin, double t_end, int n = kDefaultSamples);

TimeTrace sample_trace(const SpectralDecomposition& decomp, const StateVector& psi0,
                       const TraceRequest& request, const Eigen::VectorXd& sample_times);

/// |<config|psi(t)>|^2 for each tracked configuration.
TimeTrace probability_trace(const SpectralDecomposition& decomp, const StateVector& psi0,
                            const std::vector<Config>& tracked, const Eigen::VectorXd& sample_times);

/// State after the whole schedule has run up to time t.
StateVector evolve_schedule_state(const QuenchSchedule& schedule, const StateVector& psi0, double t);

TimeTrace evolve_schedule(const QuenchSchedule& schedule, const StateVector& psi0,
                          const TraceRequest& request, const Eigen::VectorXd& sample_times);

}  // namespace xxz

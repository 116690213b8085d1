#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "xxz/spectral.hpp"

namespace xxz {

enum class TargetKind { kEprPlus, kEprMinus, kW };

std::string to_string(TargetKind kind);

/// Equal-modulus superposition of two (EPR) or three (W) sector configurations.
struct TargetState {
  TargetKind kind = TargetKind::kEprPlus;
  std::vector<Config> components;

  /// Reference amplitudes (1/sqrt(2) with sign for EPR, 1/sqrt(3) for W).
  std::vector<double> amplitudes() const;
  std::string label() const;
};

TargetState epr_target(const Config& a, const Config& b, bool plus = true);
TargetState w_target(const Config& a, const Config& b, const Config& c);

/**
 * Reduced density matrix of an ordered qubit subset.
 *
 * Local ordering per qubit is (up, down); the first listed qubit is the most
 * significant, so |up up> is index 0.
 */
struct ReducedDensityMatrix {
  std::vector<int> qubits;
  Eigen::MatrixXcd matrix;
};

/// Largest subset accepted by reduce().
inline constexpr std::size_t kMaxReducedQubits = 4;

/// Partial trace over all sites outside `qubits`, computed within the sector.
ReducedDensityMatrix reduce(const StateVector& psi, const std::vector<int>& qubits);

/// Reduced-matrix eigenvalues in [kPositivityFloor, 0) are rounding noise and are
/// clipped to zero; lower values raise NumericError.
inline constexpr double kPositivityFloor = -1e-12;

/// Number of eigenvalues clipped so far in this process.
std::size_t clipped_eigenvalue_count();

/// Wootters concurrence of a two-qubit density matrix.
double concurrence(const ReducedDensityMatrix& rho);

/// Concurrence of the pair (a, b) in psi.
double pair_concurrence(const StateVector& psi, int a, int b);

/**
 * Overlap of psi with the target.
 *
 * Plain: |<target|psi>|^2. Phase-maximized: the same overlap maximized over
 * independent phases of the target components, (sum_i |a_i| / sqrt(m))^2.
 */
double fidelity_to_target(const StateVector& psi, const TargetState& target, bool phase_maximized);

/// Sites on which the two configurations differ (the qubits an EPR pair of them entangles).
std::vector<int> differing_sites(const Config& a, const Config& b);

}  // namespace xxz

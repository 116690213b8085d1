#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "xxz/chain.hpp"
#include "xxz/sector_basis.hpp"

namespace xxz {

enum class Scenario {
  kEprOneExcitation,
  kEprBoundPair,
  kEprFirstOrder,
  kWFourDefects,
  kWTwoDefects,
  kCustom,
};

std::string to_string(Scenario scenario);
/// Throws ConfigError for unknown names.
Scenario scenario_from_string(const std::string& name);

/**
 * Sign of the second-order level shift B^2 / [4 (g + B/2)] applied to both
 * members of an adjacent one-excitation defect doublet. kRaise is what exact
 * diagonalization selects (virtual hops into the band below push the doublet up).
 */
enum class SecondOrderShift { kRaise, kLower };

/// Default number of entanglement instants reported.
inline constexpr int kDefaultEntanglementTimes = 4;

/**
 * Closed-form perturbative prediction for one protocol.
 *
 * Two-level predictions carry (E-, E+); the W prediction carries E1 < E2 < E3.
 * `gap` is the splitting that drives the populations (E+ - E- or E3 - E1) and
 * `period` = 2 pi / gap.
 */
struct EffectivePrediction {
  Scenario scenario = Scenario::kCustom;
  int n_levels = 2;
  std::vector<Config> components;      ///< effective-model basis, in matrix order
  std::size_t initial_component = 0;   ///< component the protocol starts from
  std::vector<double> energies;        ///< ascending; empty when not defined
  double gap = 0.0;
  double period = 0.0;
  std::vector<double> entanglement_times;
  std::optional<Eigen::MatrixXd> effective_matrix;
  std::vector<std::string> warnings;
  bool derived = false;                ///< built from first-order reasoning, no closed form to quote
};

/**
 * Excitation oscillating between equal defects at n0 < m0 with mu = m0 - n0 - 1
 * sites in between. Energies are defined for mu = 0 and mu = 1 only.
 */
EffectivePrediction one_excitation_pair(const ChainSpec& chain, int n0, int m0,
                                        SecondOrderShift shift = SecondOrderShift::kRaise,
                                        int n_times = kDefaultEntanglementTimes);

/// (p_stay, p_transfer) of a two-level prediction.
std::pair<double, double> two_level_probabilities(const EffectivePrediction& pred, double t);

/// Bound pair straddling a single defect at n0: phi(n0-1, n0) <-> phi(n0, n0+1).
EffectivePrediction bound_pair_single_defect(const ChainSpec& chain, int n0,
                                             int n_times = kDefaultEntanglementTimes);

/// Offsets (g, g, g + B Delta) on n0..n0+2: phi(n0, n0+1) <-> phi(n0, n0+2) at first order.
EffectivePrediction first_order_epr(const ChainSpec& chain, int n0,
                                    int n_times = kDefaultEntanglementTimes);

/// Four equal defects on n0..n0+3: three bound pairs forming a W state.
EffectivePrediction w_four_defects(const ChainSpec& chain, int n0,
                                   int n_times = kDefaultEntanglementTimes);

/// (p_center, p_side) of the W prediction; p_side applies to each edge pair.
std::pair<double, double> w_probabilities(const EffectivePrediction& pred, double t);

/// Eigenvalues of the effective matrix, ascending. Throws if none is defined.
Eigen::VectorXd effective_eigenvalues(const EffectivePrediction& pred);

/// Parameters of the W effective matrix.
struct WBlockParameters {
  double r = 0.0;        ///< B / (4 Delta)
  double s = 0.0;        ///< B^2 / [4 (B Delta + g)]
  double origin = 0.0;   ///< 2 E1 + B Delta + 2 g
  double u = 0.0;        ///< sqrt(8 B^2 Delta^2 + 16 B Delta g + 9 g^2)
};

WBlockParameters w_block_parameters(double coupling, double anisotropy, double g, double one_magnon);

/// Closed-form E1, E2, E3 of the W block (ascending).
std::vector<double> w_closed_form_energies(double coupling, double anisotropy, double g, double one_magnon);

/// The 3x3 tridiagonal W block.
Eigen::Matrix3d w_effective_matrix(double coupling, double anisotropy, double g, double one_magnon);

}  // namespace xxz

#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "xxz/hamiltonian.hpp"
#include "xxz/sector_basis.hpp"

namespace xxz {

using Complex = std::complex<double>;

/// Eigenpairs of a real symmetric matrix, eigenvalues ascending, eigenvectors in columns.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  Eigen::Index source_dimension = 0;
  BasisPtr basis;  ///< may be null for bare matrices
};

/// Solver tolerance used for the residual and orthonormality contracts.
inline constexpr double kSpectralTolerance = 1e-10;

/**
 * Dense symmetric eigendecomposition.
 *
 * Throws DomainError for non-finite or non-symmetric input and NumericError
 * when the solver fails or the result misses the residual
 * (<= 1e-10 max(1, |H|_inf)) or orthonormality (<= 1e-10) contract.
 */
SpectralDecomposition decompose(const Eigen::Ref<const Eigen::MatrixXd>& matrix, BasisPtr basis = nullptr);
SpectralDecomposition decompose(const SectorHamiltonian& h);

/// Normalized complex amplitudes over a sector basis.
class StateVector {
 public:
  StateVector(BasisPtr basis, Eigen::VectorXcd amplitudes);

  const BasisPtr& basis() const { return basis_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Complex amplitude(const Config& config) const;
  double probability(const Config& config) const { return std::norm(amplitude(config)); }
  double norm() const { return amplitudes_.norm(); }

 private:
  BasisPtr basis_;
  Eigen::VectorXcd amplitudes_;
};

StateVector basis_state(BasisPtr basis, const Config& config);

/// Normalizes the given combination; throws if it vanishes or repeats a config.
StateVector superposition(BasisPtr basis, const std::vector<std::pair<Config, Complex>>& terms);

/// psi(t) = V exp(-i Lambda t) V^T psi(0).
StateVector evolve(const SpectralDecomposition& decomp, const StateVector& psi0, double t);

/**
 * Evolution from a fixed initial state with the eigenbasis projection cached,
 * for sampling many times. The decomposition must outlive the propagator.
 */
class Propagator {
 public:
  Propagator(const SpectralDecomposition& decomp, const StateVector& psi0);
  StateVector at(double t) const;

 private:
  const SpectralDecomposition* decomp_;
  StateVector psi0_;
  Eigen::VectorXcd coefficients_;
};

/// <psi|H|psi> for a real symmetric H.
double expectation(const Eigen::MatrixXd& h, const StateVector& psi);

}  // namespace xxz

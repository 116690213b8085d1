#include "xxz/spectral.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "xxz/errors.hpp"

namespace xxz {

namespace {

void check_dimension(const SpectralDecomposition& decomp, const StateVector& psi) {
  if (psi.amplitudes().size() != decomp.eigenvalues.size()) {
    throw DomainError("state dimension " + std::to_string(psi.amplitudes().size()) +
                      " does not match decomposition dimension " +
                      std::to_string(decomp.eigenvalues.size()));
  }
  if (decomp.basis && psi.basis() && decomp.basis != psi.basis() &&
      decomp.basis->configs() != psi.basis()->configs()) {
    throw DomainError("state and decomposition use different bases");
  }
}

}  // namespace

SpectralDecomposition decompose(const Eigen::Ref<const Eigen::MatrixXd>& matrix, BasisPtr basis) {
  if (matrix.rows() != matrix.cols()) throw DomainError("matrix is not square");
  if (!matrix.allFinite()) throw DomainError("matrix has non-finite entries");
  if (!is_exactly_symmetric(matrix)) throw DomainError("matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix);
  if (solver.info() != Eigen::Success) {
    throw NumericError("symmetric eigensolver did not converge (dimension " +
                       std::to_string(matrix.rows()) + ")");
  }
  SpectralDecomposition out{solver.eigenvalues(), solver.eigenvectors(), matrix.rows(),
                            std::move(basis)};
  if (out.source_dimension == 0) return out;

  const double scale = std::max(1.0, matrix.cwiseAbs().rowwise().sum().maxCoeff());
  const Eigen::MatrixXd residual =
      matrix * out.eigenvectors - out.eigenvectors * out.eigenvalues.asDiagonal();
  const double worst_residual = residual.cwiseAbs().maxCoeff();
  const double worst_ortho =
      (out.eigenvectors.transpose() * out.eigenvectors -
       Eigen::MatrixXd::Identity(matrix.rows(), matrix.rows()))
          .cwiseAbs()
          .maxCoeff();
  if (worst_residual > kSpectralTolerance * scale || worst_ortho > kSpectralTolerance) {
    std::ostringstream msg;
    msg << "eigendecomposition misses accuracy contract: residual " << worst_residual
        << " (limit " << kSpectralTolerance * scale << "), orthonormality " << worst_ortho;
    throw NumericError(msg.str());
  }
  return out;
}

SpectralDecomposition decompose(const SectorHamiltonian& h) { return decompose(h.matrix, h.basis); }

StateVector::StateVector(BasisPtr basis, Eigen::VectorXcd amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (!basis_) throw DomainError("null basis");
  if (static_cast<std::size_t>(amplitudes_.size()) != basis_->size()) {
    throw DomainError("amplitude vector does not match basis dimension");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-10) throw DomainError("state is not normalized");
}

Complex StateVector::amplitude(const Config& config) const {
  return amplitudes_(static_cast<Eigen::Index>(basis_->index_of(config)));
}

StateVector basis_state(BasisPtr basis, const Config& config) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->size()));
  amps(static_cast<Eigen::Index>(basis->index_of(config))) = 1.0;
  return StateVector(std::move(basis), std::move(amps));
}

StateVector superposition(BasisPtr basis, const std::vector<std::pair<Config, Complex>>& terms) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->size()));
  std::set<std::size_t> seen;
  for (const auto& [config, coeff] : terms) {
    const std::size_t idx = basis->index_of(config);
    if (!seen.insert(idx).second) throw DomainError("repeated component " + to_string(config));
    amps(static_cast<Eigen::Index>(idx)) = coeff;
  }
  const double norm = amps.norm();
  if (norm == 0.0) throw DomainError("superposition has zero norm");
  return StateVector(std::move(basis), amps / norm);
}

Propagator::Propagator(const SpectralDecomposition& decomp, const StateVector& psi0)
    : decomp_(&decomp), psi0_(psi0) {
  check_dimension(decomp, psi0);
  coefficients_ = decomp.eigenvectors.transpose().cast<Complex>() * psi0.amplitudes();
}

StateVector Propagator::at(double t) const {
  if (t == 0.0) return psi0_;
  Eigen::VectorXcd phased(coefficients_.size());
  for (Eigen::Index i = 0; i < phased.size(); ++i) {
    phased(i) = std::polar(1.0, -decomp_->eigenvalues(i) * t) * coefficients_(i);
  }
  return StateVector(psi0_.basis(), decomp_->eigenvectors.cast<Complex>() * phased);
}

StateVector evolve(const SpectralDecomposition& decomp, const StateVector& psi0, double t) {
  return Propagator(decomp, psi0).at(t);
}

double expectation(const Eigen::MatrixXd& h, const StateVector& psi) {
  const Eigen::VectorXcd& a = psi.amplitudes();
  return (a.adjoint() * h.cast<Complex>() * a)(0, 0).real();
}

}  // namespace xxz

#include "xxz/entanglement.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <set>

#include <Eigen/Eigenvalues>

#include "xxz/errors.hpp"

namespace xxz {

namespace {

std::atomic<std::size_t> clipped_count{0};

// Square root of a density matrix whose exact spectrum is non-negative.
// Rounding leaves zero eigenvalues slightly negative; those above the floor
// are clipped (and counted), anything below it is a genuine failure.
Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint()));
  if (es.info() != Eigen::Success) throw NumericError("eigensolver failed on a reduced density matrix");
  Eigen::VectorXd ev = es.eigenvalues();
  for (double& v : ev) {
    if (v >= 0.0) continue;
    if (v < kPositivityFloor) {
      throw NumericError("reduced density matrix has eigenvalue " + std::to_string(v) + " below the positivity floor");
    }
    v = 0.0;
    clipped_count.fetch_add(1, std::memory_order_relaxed);
  }
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

std::size_t clipped_eigenvalue_count() { return clipped_count.load(std::memory_order_relaxed); }

std::string to_string(TargetKind kind) {
  switch (kind) {
    case TargetKind::kEprPlus: return "epr-plus";
    case TargetKind::kEprMinus: return "epr-minus";
    case TargetKind::kW: return "w";
  }
  return "unknown";
}

std::vector<double> TargetState::amplitudes() const {
  const double m = static_cast<double>(components.size());
  std::vector<double> out(components.size(), 1.0 / std::sqrt(m));
  if (kind == TargetKind::kEprMinus && out.size() == 2) out[1] = -out[1];
  return out;
}

std::string TargetState::label() const {
  return to_string(kind);
}

TargetState epr_target(const Config& a, const Config& b, bool plus) {
  if (a == b) throw DomainError("EPR components must be distinct");
  return {plus ? TargetKind::kEprPlus : TargetKind::kEprMinus, {a, b}};
}

TargetState w_target(const Config& a, const Config& b, const Config& c) {
  if (a == b || b == c || a == c) throw DomainError("W components must be distinct");
  return {TargetKind::kW, {a, b, c}};
}

ReducedDensityMatrix reduce(const StateVector& psi, const std::vector<int>& qubits) {
  const SectorBasis& basis = *psi.basis();
  if (qubits.empty() || qubits.size() > kMaxReducedQubits) {
    throw DomainError("reduce() supports 1.." + std::to_string(kMaxReducedQubits) + " qubits");
  }
  SiteMask selected = 0;
  for (int q : qubits) {
    if (q < 1 || q > basis.n_sites()) throw DomainError("qubit " + std::to_string(q) + " out of range");
    const SiteMask bit = SiteMask{1} << (q - 1);
    if (selected & bit) throw DomainError("repeated qubit " + std::to_string(q));
    selected |= bit;
  }
  const int m = static_cast<int>(qubits.size());

  // Configurations sharing the pattern outside the subset interfere in the same block.
  std::map<SiteMask, std::vector<std::pair<Eigen::Index, Complex>>> blocks;
  const Eigen::VectorXcd& amps = psi.amplitudes();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Complex a = amps(static_cast<Eigen::Index>(i));
    if (a == Complex(0.0)) continue;
    const SiteMask mask = basis.mask(i);
    Eigen::Index local = 0;
    for (int j = 0; j < m; ++j) {
      const bool down = !((mask >> (qubits[j] - 1)) & 1U);
      if (down) local |= Eigen::Index{1} << (m - 1 - j);
    }
    blocks[mask & ~selected].emplace_back(local, a);
  }

  const Eigen::Index dim = Eigen::Index{1} << m;
  ReducedDensityMatrix rho{qubits, Eigen::MatrixXcd::Zero(dim, dim)};
  for (const auto& [rest, entries] : blocks) {
    for (const auto& [la, aa] : entries)
      for (const auto& [lb, ab] : entries) rho.matrix(la, lb) += aa * std::conj(ab);
  }
  return rho;
}

double concurrence(const ReducedDensityMatrix& rho) {
  if (rho.matrix.rows() != 4 || rho.matrix.cols() != 4) {
    throw DomainError("concurrence needs a two-qubit density matrix");
  }
  Eigen::Matrix2cd y;
  y << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  const Eigen::MatrixXcd yy = kron(y, y);
  const Eigen::MatrixXcd flipped = yy * rho.matrix.conjugate() * yy;

  // rho * flipped shares its spectrum with the Hermitian sqrt(rho) flipped sqrt(rho).
  const Eigen::MatrixXcd root = psd_sqrt(rho.matrix);
  Eigen::MatrixXcd r = root * flipped * root;
  r = 0.5 * (r + r.adjoint()).eval();
  Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(r, Eigen::EigenvaluesOnly).eigenvalues();

  std::vector<double> lambda(4);
  for (int i = 0; i < 4; ++i) lambda[i] = std::sqrt(std::max(0.0, ev(i)));
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return std::clamp(lambda[0] - lambda[1] - lambda[2] - lambda[3], 0.0, 1.0);
}

double pair_concurrence(const StateVector& psi, int a, int b) {
  return concurrence(reduce(psi, {a, b}));
}

double fidelity_to_target(const StateVector& psi, const TargetState& target, bool phase_maximized) {
  const auto ref = target.amplitudes();
  const double m = static_cast<double>(target.components.size());
  if (phase_maximized) {
    double sum = 0.0;
    for (const auto& c : target.components) sum += std::abs(psi.amplitude(c));
    return std::min(1.0, sum * sum / m);
  }
  Complex overlap = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) overlap += ref[i] * psi.amplitude(target.components[i]);
  return std::min(1.0, std::norm(overlap));
}

std::vector<int> differing_sites(const Config& a, const Config& b) {
  std::vector<int> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace xxz

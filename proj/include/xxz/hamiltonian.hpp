#pragma once

#include <functional>

#include <Eigen/Dense>

#include "xxz/chain.hpp"
#include "xxz/sector_basis.hpp"

namespace xxz {

/**
 * Normalization of the exchange (hop) term.
 *
 * kHalfCoupling gives the hop matrix element B/2, consistent with the
 * one-magnon band E1 +- B and every perturbative result built on it. kLiteral
 * evaluates the operator expression with sigma^{+-} = (sigma^x +- i sigma^y)/2,
 * which gives B/4. The Ising term is (B Delta / 4) sz sz in both.
 */
enum class HopConvention { kHalfCoupling, kLiteral };

double hop_amplitude(const ChainSpec& chain, HopConvention convention = HopConvention::kHalfCoupling);

/// Hamiltonian restricted to one excitation sector, shifted so the all-down state sits at 0.
struct SectorHamiltonian {
  BasisPtr basis;
  Eigen::MatrixXd matrix;
  double energy_origin = 0.0;  ///< subtracted ground-state energy E0
};

/// -sum_n eps_n / 2 + (N-1) B Delta / 4.
double ground_energy(const ChainSpec& chain);

/// Unshifted on-site plus Ising energy of a spin pattern.
double diagonal_energy(const ChainSpec& chain, SiteMask up_sites);

SectorHamiltonian build_sector_hamiltonian(const ChainSpec& chain, BasisPtr basis,
                                           HopConvention convention = HopConvention::kHalfCoupling);

/**
 * Full 2^N Hamiltonian assembled term by term from Kronecker products of
 * Pauli matrices. Not shifted by E0. Index bit (n-1) is the state of site n
 * (1 = up). Refuses N > max_sites.
 */
Eigen::MatrixXd build_full_hamiltonian(const ChainSpec& chain, int max_sites = 10,
                                       HopConvention convention = HopConvention::kHalfCoupling);

using SectorBuilder = std::function<SectorHamiltonian(const ChainSpec&, BasisPtr)>;

struct CrosscheckReport {
  bool block_diagonal = false;
  double max_deviation = 0.0;  ///< worst |full block - (sector + E0)| entry
  double scale = 0.0;          ///< max |entry| of the full matrix
  bool passed = false;
};

CrosscheckReport full_space_crosscheck_report(const ChainSpec& chain, int max_sites,
                                              const SectorBuilder& builder = {});

/// True iff every sector block of the full matrix matches the sector builder to 1e-12 relative.
bool full_space_crosscheck(const ChainSpec& chain, int max_sites, const SectorBuilder& builder = {});

template <typename Derived>
bool is_exactly_symmetric(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = j + 1; i < m.rows(); ++i)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                                               a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace xxz

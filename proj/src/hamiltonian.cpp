#include "xxz/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "xxz/errors.hpp"

namespace xxz {

namespace {

// Prefactor c in (B/2) * (c/2) * (s+s- + s-s+).
double hop_operator_weight(HopConvention convention) {
  return convention == HopConvention::kHalfCoupling ? 2.0 : 1.0;
}

Eigen::MatrixXd site_operator(const Eigen::Matrix2d& op, int site, int n_sites) {
  const Eigen::MatrixXd left = Eigen::MatrixXd::Identity(Eigen::Index{1} << (n_sites - site),
                                                         Eigen::Index{1} << (n_sites - site));
  const Eigen::MatrixXd right = Eigen::MatrixXd::Identity(Eigen::Index{1} << (site - 1),
                                                          Eigen::Index{1} << (site - 1));
  return kron(kron(left, op), right);
}

SectorHamiltonian default_builder(const ChainSpec& chain, BasisPtr basis) {
  return build_sector_hamiltonian(chain, std::move(basis));
}

}  // namespace

double hop_amplitude(const ChainSpec& chain, HopConvention convention) {
  return 0.25 * chain.coupling * hop_operator_weight(convention);
}

double diagonal_energy(const ChainSpec& chain, SiteMask up_sites) {
  auto spin = [&](int site) { return (up_sites >> (site - 1)) & 1U ? 1.0 : -1.0; };
  double onsite = 0.0;
  for (int n = 1; n <= chain.n_sites; ++n) onsite += spin(n) * chain.spacing(n) / 2.0;
  const double ising = chain.coupling * chain.anisotropy / 4.0;
  double bonds = 0.0;
  for (int n = 1; n < chain.n_sites; ++n) bonds += ising * spin(n) * spin(n + 1);
  return onsite + bonds;
}

double ground_energy(const ChainSpec& chain) {
  chain.validate();
  return diagonal_energy(chain, 0);
}

SectorHamiltonian build_sector_hamiltonian(const ChainSpec& chain, BasisPtr basis,
                                           HopConvention convention) {
  chain.validate();
  if (!basis) throw DomainError("null basis");
  if (basis->n_sites() != chain.n_sites) {
    throw DomainError("basis has " + std::to_string(basis->n_sites()) + " sites, chain has " +
                      std::to_string(chain.n_sites));
  }
  const auto dim = static_cast<Eigen::Index>(basis->size());
  const double e0 = ground_energy(chain);
  const double hop = hop_amplitude(chain, convention);

  SectorHamiltonian h{basis, Eigen::MatrixXd::Zero(dim, dim), e0};
  for (Eigen::Index i = 0; i < dim; ++i) {
    const SiteMask mask = basis->mask(static_cast<std::size_t>(i));
    h.matrix(i, i) = diagonal_energy(chain, mask) - e0;
    // Move one excitation to an empty right neighbour; the mirror entry covers left moves.
    for (int site = 1; site < chain.n_sites; ++site) {
      const SiteMask here = SiteMask{1} << (site - 1);
      const SiteMask next = here << 1;
      if ((mask & here) && !(mask & next)) {
        const auto j = static_cast<Eigen::Index>(*basis->find_mask((mask & ~here) | next));
        h.matrix(i, j) = hop;
        h.matrix(j, i) = hop;
      }
    }
  }
  return h;
}

Eigen::MatrixXd build_full_hamiltonian(const ChainSpec& chain, int max_sites,
                                       HopConvention convention) {
  chain.validate();
  if (chain.n_sites > max_sites) {
    throw DomainError("full-space construction refused for N=" + std::to_string(chain.n_sites) +
                      " > " + std::to_string(max_sites));
  }
  const int n = chain.n_sites;
  const Eigen::Index dim = Eigen::Index{1} << n;

  // Local basis: index 0 = down, 1 = up.
  Eigen::Matrix2d sz, sp, sm;
  sz << -1, 0, 0, 1;
  sp << 0, 0, 1, 0;
  sm = sp.transpose();

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int site = 1; site <= n; ++site) {
    h += chain.spacing(site) / 2.0 * site_operator(sz, site, n);
  }
  const double b = chain.coupling;
  const double c = hop_operator_weight(convention);
  for (int site = 1; site < n; ++site) {
    const Eigen::MatrixXd zz = site_operator(sz, site, n) * site_operator(sz, site + 1, n);
    const Eigen::MatrixXd hop = site_operator(sp, site, n) * site_operator(sm, site + 1, n) +
                                site_operator(sm, site, n) * site_operator(sp, site + 1, n);
    h += b / 2.0 * (chain.anisotropy / 2.0 * zz + c / 2.0 * hop);
  }
  return h;
}

CrosscheckReport full_space_crosscheck_report(const ChainSpec& chain, int max_sites,
                                              const SectorBuilder& builder) {
  const SectorBuilder& build = builder ? builder : SectorBuilder(default_builder);
  const Eigen::MatrixXd full = build_full_hamiltonian(chain, max_sites);
  const Eigen::Index dim = full.rows();

  CrosscheckReport report;
  report.scale = full.cwiseAbs().maxCoeff();
  report.block_diagonal = true;
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      if (full(i, j) != 0.0 &&
          std::popcount(static_cast<SiteMask>(i)) != std::popcount(static_cast<SiteMask>(j)))
        report.block_diagonal = false;

  for (int k = 0; k <= chain.n_sites; ++k) {
    const SectorHamiltonian sector = build(chain, enumerate_sector(chain.n_sites, k));
    const auto& basis = *sector.basis;
    const auto sdim = static_cast<Eigen::Index>(basis.size());
    for (Eigen::Index a = 0; a < sdim; ++a) {
      const auto fa = static_cast<Eigen::Index>(basis.mask(static_cast<std::size_t>(a)));
      for (Eigen::Index b = 0; b < sdim; ++b) {
        const auto fb = static_cast<Eigen::Index>(basis.mask(static_cast<std::size_t>(b)));
        const double shifted = sector.matrix(a, b) + (a == b ? sector.energy_origin : 0.0);
        report.max_deviation = std::max(report.max_deviation, std::abs(full(fa, fb) - shifted));
      }
    }
  }
  report.passed = report.block_diagonal && report.max_deviation <= 1e-12 * report.scale;
  return report;
}

bool full_space_crosscheck(const ChainSpec& chain, int max_sites, const SectorBuilder& builder) {
  return full_space_crosscheck_report(chain, max_sites, builder).passed;
}

}  // namespace xxz

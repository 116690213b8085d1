#pragma once

#include <map>

namespace xxz {

/**
 * Physical parameters of an open XXZ chain with on-site defects.
 *
 * Site n has level spacing base_spacing + defects[n] (offset 0 when absent).
 * coupling (B), anisotropy (Delta) and base_spacing must be strictly positive.
 */
struct ChainSpec {
  int n_sites = 0;
  double coupling = 1.0;
  double anisotropy = 1.0;
  double base_spacing = 1.0;
  std::map<int, double> defects;

  double offset(int site) const;
  double spacing(int site) const { return base_spacing + offset(site); }

  /// Throws DomainError when an invariant is violated.
  void validate() const;

  /// Copy with `delta` added to the offset of `site`.
  ChainSpec detuned(int site, double delta) const;

  /// True when N, B, Delta and eps0 agree (defect offsets may differ).
  bool same_medium(const ChainSpec& other) const;
};

/// eps0 - B*Delta: centre of the one-magnon band.
double one_magnon_center(const ChainSpec& chain);

}  // namespace xxz

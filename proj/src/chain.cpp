#include "xxz/chain.hpp"

#include <cmath>
#include <string>

#include "xxz/errors.hpp"

namespace xxz {

double ChainSpec::offset(int site) const {
  auto it = defects.find(site);
  return it == defects.end() ? 0.0 : it->second;
}

void ChainSpec::validate() const {
  if (n_sites < 1) throw DomainError("n_sites must be positive");
  if (!(coupling > 0.0) || !std::isfinite(coupling)) throw DomainError("coupling B must be positive");
  if (!(anisotropy > 0.0) || !std::isfinite(anisotropy)) {
    throw DomainError("anisotropy Delta must be positive");
  }
  if (!(base_spacing > 0.0) || !std::isfinite(base_spacing)) {
    throw DomainError("base spacing eps0 must be positive");
  }
  for (const auto& [site, value] : defects) {
    if (site < 1 || site > n_sites) {
      throw DomainError("defect site " + std::to_string(site) + " outside 1.." +
                        std::to_string(n_sites));
    }
    if (!std::isfinite(value)) throw DomainError("defect offset must be finite");
  }
}

ChainSpec ChainSpec::detuned(int site, double delta) const {
  ChainSpec copy = *this;
  copy.defects[site] = offset(site) + delta;
  copy.validate();
  return copy;
}

bool ChainSpec::same_medium(const ChainSpec& other) const {
  return n_sites == other.n_sites && coupling == other.coupling &&
         anisotropy == other.anisotropy && base_spacing == other.base_spacing;
}

double one_magnon_center(const ChainSpec& chain) {
  return chain.base_spacing - chain.coupling * chain.anisotropy;
}

}  // namespace xxz

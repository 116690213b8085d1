#include "xxz/sector_basis.hpp"

#include <sstream>

#include "xxz/errors.hpp"

namespace xxz {

namespace {

std::size_t binomial_checked(int n, int k, std::size_t limit) {
  if (k > n - k) k = n - k;
  long double value = 1.0L;
  for (int i = 1; i <= k; ++i) {
    value = value * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (value > static_cast<long double>(limit)) {
      throw DomainError("sector dimension exceeds " + std::to_string(limit));
    }
  }
  return static_cast<std::size_t>(value + 0.5L);
}

}  // namespace

SiteMask mask_of(const Config& config) {
  SiteMask mask = 0;
  for (int site : config) mask |= SiteMask{1} << (site - 1);
  return mask;
}

std::string to_string(const Config& config) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (i) out << ',';
    out << config[i];
  }
  out << ')';
  return out.str();
}

std::string config_label(const Config& config) {
  std::string out;
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (i) out += '_';
    out += std::to_string(config[i]);
  }
  return out;
}

SectorBasis::SectorBasis(int n_sites, int n_excitations)
    : n_sites_(n_sites), n_excitations_(n_excitations) {
  if (n_sites < 1 || n_sites > kMaxSites) {
    throw DomainError("n_sites must lie in 1.." + std::to_string(kMaxSites));
  }
  if (n_excitations < 0 || n_excitations > n_sites) {
    throw DomainError("n_excitations must lie in 0..n_sites");
  }
  const std::size_t dim = binomial_checked(n_sites, n_excitations, kMaxDimension);
  configs_.reserve(dim);
  masks_.reserve(dim);
  index_.reserve(dim);

  // Lexicographic successor: bump the rightmost position that still has room.
  Config current(n_excitations);
  for (int i = 0; i < n_excitations; ++i) current[i] = i + 1;
  while (true) {
    index_.emplace(mask_of(current), configs_.size());
    masks_.push_back(mask_of(current));
    configs_.push_back(current);
    int i = n_excitations - 1;
    while (i >= 0 && current[i] == n_sites - n_excitations + i + 1) --i;
    if (i < 0) break;
    ++current[i];
    for (int j = i + 1; j < n_excitations; ++j) current[j] = current[j - 1] + 1;
  }
}

void SectorBasis::check_config(const Config& config) const {
  if (static_cast<int>(config.size()) != n_excitations_) {
    throw DomainError("configuration " + to_string(config) + " has wrong excitation count");
  }
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (config[i] < 1 || config[i] > n_sites_) {
      throw DomainError("configuration " + to_string(config) + " has a site out of range");
    }
    if (i && config[i] <= config[i - 1]) {
      throw DomainError("configuration " + to_string(config) + " is not strictly increasing");
    }
  }
}

std::optional<std::size_t> SectorBasis::find(const Config& config) const {
  check_config(config);
  return find_mask(mask_of(config));
}

std::optional<std::size_t> SectorBasis::find_mask(SiteMask mask) const {
  auto it = index_.find(mask);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t SectorBasis::index_of(const Config& config) const {
  auto found = find(config);
  if (!found) throw DomainError("configuration " + to_string(config) + " not in sector");
  return *found;
}

BasisPtr enumerate_sector(int n_sites, int n_excitations) {
  return std::make_shared<const SectorBasis>(n_sites, n_excitations);
}

std::size_t index_of(const SectorBasis& basis, const Config& config) {
  return basis.index_of(config);
}

}  // namespace xxz

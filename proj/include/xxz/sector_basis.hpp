#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace xxz {

/// Positions of the up spins, 1-based and strictly increasing.
using Config = std::vector<int>;

/// Bit (n-1) set <=> site n is up.
using SiteMask = std::uint64_t;

SiteMask mask_of(const Config& config);
std::string to_string(const Config& config);
/// Separator-safe form for CSV headers: (4,5) -> "4_5".
std::string config_label(const Config& config);

/**
 * All configurations of an N-site chain with exactly k up spins, in
 * lexicographic order of their position tuples.
 *
 * Immutable after construction. Ordinals are 0-based, sites 1-based.
 */
class SectorBasis {
 public:
  static constexpr int kMaxSites = 64;
  static constexpr std::size_t kMaxDimension = std::size_t{1} << 24;

  SectorBasis(int n_sites, int n_excitations);

  int n_sites() const { return n_sites_; }
  int n_excitations() const { return n_excitations_; }
  std::size_t size() const { return configs_.size(); }

  const Config& config(std::size_t ordinal) const { return configs_.at(ordinal); }
  SiteMask mask(std::size_t ordinal) const { return masks_.at(ordinal); }
  const std::vector<Config>& configs() const { return configs_; }

  /// Throws DomainError for malformed or absent configurations.
  std::size_t index_of(const Config& config) const;
  std::optional<std::size_t> find(const Config& config) const;
  std::optional<std::size_t> find_mask(SiteMask mask) const;

 private:
  void check_config(const Config& config) const;

  int n_sites_;
  int n_excitations_;
  std::vector<Config> configs_;
  std::vector<SiteMask> masks_;
  std::unordered_map<SiteMask, std::size_t> index_;
};

using BasisPtr = std::shared_ptr<const SectorBasis>;

BasisPtr enumerate_sector(int n_sites, int n_excitations);
std::size_t index_of(const SectorBasis& basis, const Config& config);

}  // namespace xxz

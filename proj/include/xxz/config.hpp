#pragma once

#include <istream>
#include <string>

#include "xxz/scenario.hpp"

namespace xxz {

/**
 * Flat key-value scenario file with section headers:
 *
 *   [scenario]  name, n0, mu, g
 *   [chain]     n_sites, anisotropy, base_spacing, defects = "3:10, 4:10", n_excitations
 *   [dynamics]  initial = "4,5", tracked = "3,4 | 4,5", target, t_max, samples, entanglement_times
 *   [quench]    at (time or "t0"), detuning, sites = "4"
 *   [output]    dir
 *
 * Values start from the named preset. Lines starting with '#' or ';' are
 * comments. Unknown sections or keys raise ConfigError.
 */
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::string& path);

/// Resolved configuration in the same format (round-trips through parse_config).
std::string render_config(const ScenarioConfig& config);

Config parse_config_tuple(const std::string& text);

}  // namespace xxz

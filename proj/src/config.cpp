#include "xxz/config.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "xxz/errors.hpp"

namespace xxz {

namespace {

namespace pt = boost::property_tree;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (trim(text.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("'" + key + "' expects a number, got '" + text + "'");
}

int to_int(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (v != static_cast<double>(static_cast<int>(v))) {
    throw ConfigError("'" + key + "' expects an integer, got '" + text + "'");
  }
  return static_cast<int>(v);
}

std::vector<int> to_sites(const std::string& key, const std::string& text) {
  std::vector<int> out;
  std::string normalized = text;
  for (char& ch : normalized)
    if (ch == ',') ch = ' ';
  for (const auto& item : split(normalized, ' ')) out.push_back(to_int(key, item));
  return out;
}

std::string format(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

std::string join_sites(const std::vector<int>& sites) {
  std::string out;
  for (std::size_t i = 0; i < sites.size(); ++i) out += (i ? "," : "") + std::to_string(sites[i]);
  return out;
}

TargetKind target_from_string(const std::string& text) {
  for (auto k : {TargetKind::kEprPlus, TargetKind::kEprMinus, TargetKind::kW})
    if (to_string(k) == text) return k;
  throw ConfigError("unknown target '" + text + "' (expected epr-plus, epr-minus or w)");
}

}  // namespace

Config parse_config_tuple(const std::string& text) { return to_sites("configuration", text); }

ScenarioConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  std::string name = "w-four-defects";
  if (auto s = tree.get_child_optional("scenario")) {
    if (auto n = s->get_optional<std::string>("name")) name = trim(*n);
  }
  ScenarioConfig c = preset(scenario_from_string(name));

  for (const auto& [section, body] : tree) {
    if (!body.data().empty() && body.empty()) {
      throw ConfigError("key '" + section + "' must appear inside a [section]");
    }
    for (const auto& [key, node] : body) {
      const std::string value = trim(node.data());
      const std::string where = section + "." + key;
      if (section == "scenario") {
        if (key == "name") continue;
        if (key == "n0") c.n0 = to_int(where, value);
        else if (key == "mu") c.mu = to_int(where, value);
        else if (key == "g") c.g = to_double(where, value);
        else throw ConfigError("unknown key '" + where + "'");
      } else if (section == "chain") {
        if (key == "n_sites") c.n_sites = to_int(where, value);
        else if (key == "anisotropy") c.anisotropy = to_double(where, value);
        else if (key == "base_spacing") c.base_spacing = to_double(where, value);
        else if (key == "n_excitations") c.n_excitations = to_int(where, value);
        else if (key == "defects") {
          c.defects.clear();
          for (const auto& item : split(value, ',')) {
            const auto parts = split(item, ':');
            if (parts.size() != 2) throw ConfigError("'" + where + "' entries must be site:offset");
            c.defects[to_int(where, parts[0])] = to_double(where, parts[1]);
          }
        } else throw ConfigError("unknown key '" + where + "'");
      } else if (section == "dynamics") {
        if (key == "initial") c.initial = to_sites(where, value);
        else if (key == "tracked") {
          c.tracked.clear();
          for (const auto& item : split(value, '|')) c.tracked.push_back(to_sites(where, item));
        } else if (key == "target") {
          if (value == "none") c.target.reset();
          else c.target = target_from_string(value);
        } else if (key == "t_max") c.t_max = to_double(where, value);
        else if (key == "samples") c.samples = to_int(where, value);
        else if (key == "entanglement_times") c.n_times = to_int(where, value);
        else throw ConfigError("unknown key '" + where + "'");
      } else if (section == "quench") {
        if (!c.quench) c.quench.emplace();
        if (key == "at") {
          if (value == "t0") c.quench->at.reset();
          else c.quench->at = to_double(where, value);
        } else if (key == "detuning") c.quench->detuning = to_double(where, value);
        else if (key == "sites") c.quench->sites = to_sites(where, value);
        else throw ConfigError("unknown key '" + where + "'");
      } else if (section == "output") {
        if (key == "dir") c.output_dir = value;
        else throw ConfigError("unknown key '" + where + "'");
      } else {
        throw ConfigError("unknown section [" + section + "]");
      }
    }
  }
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::string render_config(const ScenarioConfig& c) {
  std::ostringstream out;
  out << "[scenario]\n"
      << "name = " << to_string(c.scenario) << "\n"
      << "n0 = " << c.n0 << "\n"
      << "mu = " << c.mu << "\n"
      << "g = " << format(c.g) << "\n"
      << "[chain]\n"
      << "n_sites = " << c.n_sites << "\n"
      << "anisotropy = " << format(c.anisotropy) << "\n"
      << "base_spacing = " << format(c.base_spacing) << "\n";
  if (c.scenario == Scenario::kCustom) {
    out << "n_excitations = " << c.n_excitations << "\n";
    std::string defects;
    for (const auto& [site, offset] : c.defects) {
      defects += (defects.empty() ? "" : ", ") + std::to_string(site) + ":" + format(offset);
    }
    if (!defects.empty()) out << "defects = " << defects << "\n";
  }
  out << "[dynamics]\n";
  if (c.initial) out << "initial = " << join_sites(*c.initial) << "\n";
  if (!c.tracked.empty()) {
    out << "tracked = ";
    for (std::size_t i = 0; i < c.tracked.size(); ++i) out << (i ? " | " : "") << join_sites(c.tracked[i]);
    out << "\n";
  }
  if (c.target) out << "target = " << to_string(*c.target) << "\n";
  if (c.t_max) out << "t_max = " << format(*c.t_max) << "\n";
  out << "samples = " << c.samples << "\n"
      << "entanglement_times = " << c.n_times << "\n";
  if (c.quench) {
    out << "[quench]\n"
        << "at = " << (c.quench->at ? format(*c.quench->at) : std::string("t0")) << "\n"
        << "detuning = " << format(c.quench->detuning) << "\n";
    if (!c.quench->sites.empty()) out << "sites = " << join_sites(c.quench->sites) << "\n";
  }
  out << "[output]\n"
      << "dir = " << c.output_dir << "\n";
  return out.str();
}

}  // namespace xxz

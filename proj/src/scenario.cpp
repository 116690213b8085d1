#include "xxz/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "xxz/errors.hpp"
#include "xxz/hamiltonian.hpp"

namespace xxz {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require(bool condition, const ScenarioConfig& config, const std::string& constraint) {
  if (!condition) throw ConfigError(to_string(config.scenario) + ": " + constraint);
}

void require_sites(const ScenarioConfig& config, int lowest, int highest, const std::string& what) {
  require(lowest >= 1 && highest <= config.n_sites, config,
          what + " need sites " + std::to_string(lowest) + ".." + std::to_string(highest) +
              " inside 1.." + std::to_string(config.n_sites));
}

ChainSpec base_chain(const ScenarioConfig& config) {
  ChainSpec chain;
  chain.n_sites = config.n_sites;
  chain.coupling = 1.0;
  chain.anisotropy = config.anisotropy;
  chain.base_spacing = config.base_spacing;
  return chain;
}

double max_abs_over(const Eigen::VectorXd& times, double t_limit,
                    const std::function<double(Eigen::Index)>& deviation) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < times.size() && times(i) <= t_limit; ++i) {
    worst = std::max(worst, std::abs(deviation(i)));
  }
  return worst;
}

}  // namespace

ScenarioConfig preset(Scenario scenario) {
  ScenarioConfig c;
  c.scenario = scenario;
  switch (scenario) {
    case Scenario::kEprOneExcitation:
      c.n_sites = 10;
      c.n0 = 4;
      c.mu = 0;
      c.g = 100.0;
      break;
    case Scenario::kEprBoundPair:
      c.n_sites = 12;
      c.n0 = 6;
      c.g = 10.0;
      break;
    case Scenario::kEprFirstOrder:
      c.n_sites = 10;
      c.n0 = 4;
      c.g = 20.0;
      break;
    case Scenario::kWFourDefects:
      c.n_sites = 12;
      c.n0 = 3;
      c.g = 10.0;
      break;
    case Scenario::kWTwoDefects:
      // g = 3 B Delta keeps clear of the B Delta resonance.
      c.n_sites = 12;
      c.n0 = 5;
      c.g = 30.0;
      c.t_max = 300.0;
      break;
    case Scenario::kCustom:
      c.n_sites = 12;
      c.n0 = 0;
      c.g = 0.0;
      break;
  }
  return c;
}

ScenarioSetup setup_scenario(const ScenarioConfig& config) {
  require(config.n_sites >= 2, config, "n_sites must be at least 2");
  require(config.samples >= 1, config, "samples must be positive");
  require(config.n_times >= 1, config, "entanglement time count must be positive");

  ScenarioSetup s;
  s.chain = base_chain(config);
  const int n0 = config.n0;
  int k = 2;
  try {
    switch (config.scenario) {
      case Scenario::kEprOneExcitation: {
        require(config.mu >= 0, config, "mu must be nonnegative");
        const int m0 = n0 + config.mu + 1;
        require_sites(config, n0, m0, "defects n0 and n0+mu+1");
        s.chain.defects = {{n0, config.g}, {m0, config.g}};
        k = 1;
        s.initial = {n0};
        s.tracked = {{n0}, {m0}};
        s.target = epr_target({n0}, {m0});
        s.pair = {n0, m0};
        s.prediction = one_excitation_pair(s.chain, n0, m0, SecondOrderShift::kRaise, config.n_times);
        break;
      }
      case Scenario::kEprBoundPair:
        require_sites(config, n0 - 1, n0 + 1, "bound pairs around the defect");
        s.chain.defects = {{n0, config.g}};
        s.initial = {n0 - 1, n0};
        s.tracked = {{n0 - 1, n0}, {n0, n0 + 1}};
        s.target = epr_target(s.tracked[0], s.tracked[1]);
        s.pair = {n0 - 1, n0 + 1};
        s.prediction = bound_pair_single_defect(s.chain, n0, config.n_times);
        break;
      case Scenario::kEprFirstOrder:
        require_sites(config, n0, n0 + 2, "defects (g, g, g + B Delta)");
        s.chain.defects = {{n0, config.g}, {n0 + 1, config.g}, {n0 + 2, config.g + config.anisotropy}};
        s.initial = {n0, n0 + 1};
        s.tracked = {{n0, n0 + 1}, {n0, n0 + 2}};
        s.target = epr_target(s.tracked[0], s.tracked[1]);
        s.pair = {n0 + 1, n0 + 2};
        s.prediction = first_order_epr(s.chain, n0, config.n_times);
        break;
      case Scenario::kWFourDefects:
        require_sites(config, n0, n0 + 3, "four consecutive equal defects");
        for (int i = 0; i < 4; ++i) s.chain.defects[n0 + i] = config.g;
        s.initial = {n0 + 1, n0 + 2};
        s.tracked = {{n0 + 1, n0 + 2}, {n0, n0 + 1}, {n0 + 2, n0 + 3}};
        s.target = w_target(s.tracked[1], s.tracked[0], s.tracked[2]);
        s.prediction = w_four_defects(s.chain, n0, config.n_times);
        break;
      case Scenario::kWTwoDefects:
        require_sites(config, n0 - 1, n0 + 4, "defects at n0-1 and n0+4");
        s.chain.defects = {{n0 - 1, config.g}, {n0 + 4, config.g}};
        s.initial = {n0 + 1, n0 + 2};
        s.tracked = {{n0 + 1, n0 + 2}, {n0, n0 + 1}, {n0 + 2, n0 + 3}};
        s.target = w_target(s.tracked[1], s.tracked[0], s.tracked[2]);
        if (std::abs(config.g - config.anisotropy) < 2.0) {
          s.warnings.push_back("g within 2 B of B Delta: resonance with single-excitation-on-defect states");
        }
        break;
      case Scenario::kCustom:
        k = config.n_excitations;
        s.chain.defects = config.defects;
        require(config.initial.has_value(), config, "custom scenario needs an initial configuration");
        require(!config.tracked.empty(), config, "custom scenario needs tracked configurations");
        s.initial = *config.initial;
        s.tracked = config.tracked;
        if (config.target) {
          if (*config.target == TargetKind::kW) {
            require(s.tracked.size() >= 3, config, "a W target needs three tracked configurations");
            s.target = w_target(s.tracked[0], s.tracked[1], s.tracked[2]);
          } else {
            require(s.tracked.size() >= 2, config, "an EPR target needs two tracked configurations");
            s.target = epr_target(s.tracked[0], s.tracked[1], *config.target == TargetKind::kEprPlus);
            const auto sites = differing_sites(s.tracked[0], s.tracked[1]);
            if (sites.size() == 2) s.pair = {sites[0], sites[1]};
          }
        }
        break;
    }
    if (config.initial && config.scenario != Scenario::kCustom) s.initial = *config.initial;
    s.chain.validate();
    s.basis = enumerate_sector(config.n_sites, k);
    s.basis->index_of(s.initial);
    for (const auto& c : s.tracked) s.basis->index_of(c);
  } catch (const DomainError& e) {
    throw ConfigError(to_string(config.scenario) + ": " + e.what());
  }

  if (s.prediction) {
    for (const auto& w : s.prediction->warnings) s.warnings.push_back(w);
  }

  if (config.t_max) {
    s.t_max = *config.t_max;
  } else if (s.prediction) {
    s.t_max = 1.1 * s.prediction->entanglement_times.back();
  } else {
    throw ConfigError(to_string(config.scenario) + ": no closed form to size the window; set t_max");
  }
  require(s.t_max > 0.0 && std::isfinite(s.t_max), config, "t_max must be positive");

  if (config.quench) {
    if (config.quench->at) {
      s.quench_time = *config.quench->at;
    } else {
      require(s.prediction.has_value(), config, "quench time must be given when no closed form exists");
      s.quench_time = s.prediction->entanglement_times.front();
    }
    require(*s.quench_time >= 0.0 && *s.quench_time <= s.t_max, config,
            "quench time must lie inside [0, t_max]");
    require(!config.quench->sites.empty() || s.pair.has_value(), config,
            "quench needs explicit sites for this scenario");
    for (int site : config.quench->sites) require_sites(config, site, site, "quench sites");
  }
  return s;
}

QuenchSchedule schedule_for(const ScenarioConfig& config, const ScenarioSetup& setup) {
  QuenchSchedule schedule;
  if (!setup.quench_time) {
    schedule.segments.push_back({setup.chain, setup.t_max});
    return schedule;
  }
  ChainSpec detuned = setup.chain;
  std::vector<int> sites = config.quench->sites;
  if (sites.empty()) sites = {setup.pair->first};
  for (int site : sites) detuned = detuned.detuned(site, config.quench->detuning);
  schedule.segments.push_back({setup.chain, *setup.quench_time});
  schedule.segments.push_back({detuned, setup.t_max - *setup.quench_time});
  return schedule;
}

MeasuredGap measured_gap(const SpectralDecomposition& decomp, const std::vector<Config>& components) {
  if (!decomp.basis) throw DomainError("measured_gap needs a decomposition with a basis");
  const auto m = static_cast<Eigen::Index>(components.size());
  if (m < 2 || m > decomp.eigenvalues.size()) throw DomainError("measured_gap needs at least two components");

  Eigen::VectorXd weight = Eigen::VectorXd::Zero(decomp.eigenvalues.size());
  for (const auto& c : components) {
    const auto row = static_cast<Eigen::Index>(decomp.basis->index_of(c));
    weight += decomp.eigenvectors.row(row).transpose().cwiseAbs2();
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(weight.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return weight(a) > weight(b); });

  MeasuredGap out;
  out.states.assign(order.begin(), order.begin() + m);
  std::sort(out.states.begin(), out.states.end());
  out.min_weight = 1.0;
  for (auto i : out.states) {
    out.energies.push_back(decomp.eigenvalues(i));
    out.min_weight = std::min(out.min_weight, weight(i));
  }
  out.gap = out.energies.back() - out.energies.front();
  return out;
}

SecondOrderShift match_shift_sign(const ChainSpec& chain, int n0) {
  const auto decomp = decompose(build_sector_hamiltonian(chain, enumerate_sector(chain.n_sites, 1)));
  const auto exact = measured_gap(decomp, {{n0}, {n0 + 1}});
  auto error = [&](SecondOrderShift sign) {
    const auto pred = one_excitation_pair(chain, n0, n0 + 1, sign);
    return std::abs(pred.energies[0] - exact.energies[0]) + std::abs(pred.energies[1] - exact.energies[1]);
  };
  return error(SecondOrderShift::kRaise) <= error(SecondOrderShift::kLower) ? SecondOrderShift::kRaise
                                                                              : SecondOrderShift::kLower;
}

std::optional<double> first_return_time(const Eigen::VectorXd& times, const Eigen::VectorXd& p) {
  const Eigen::Index n = std::min(times.size(), p.size());
  if (n == 0) return std::nullopt;
  // Hysteresis band at a quarter of the swing, so small fast wiggles riding on
  // the slow oscillation never count as a dip or a return.
  const double lo_p = p.head(n).minCoeff();
  const double hi_p = p.head(n).maxCoeff();
  const double low = lo_p + 0.25 * (hi_p - lo_p);
  const double high = hi_p - 0.25 * (hi_p - lo_p);
  if (!(low < 0.5 && high > 0.5)) return std::nullopt;  // never dips below 1/2
  Eigen::Index i = 0;
  while (i < n && p(i) >= low) ++i;  // leave the initial state
  while (i < n && p(i) <= high) ++i;  // come back
  if (i >= n) return std::nullopt;
  Eigen::Index best = i;
  while (i < n && p(i) > low) {
    if (p(i) > p(best)) best = i;
    ++i;
  }
  if (i >= n) return std::nullopt;  // peak not bracketed
  return times(best);
}

double metric(const Metrics& metrics, const std::string& name) {
  for (const auto& [key, value] : metrics)
    if (key == name) return value;
  throw DomainError("no metric named " + name);
}

ScenarioRun run_scenario(const ScenarioConfig& config) {
  ScenarioRun run;
  run.setup = setup_scenario(config);
  const std::size_t clipped_before = clipped_eigenvalue_count();
  const ScenarioSetup& s = run.setup;

  run.spectrum = decompose(build_sector_hamiltonian(s.chain, s.basis));
  const StateVector psi0 = basis_state(s.basis, s.initial);

  TraceRequest request;
  request.tracked = s.tracked;
  if (s.target) request.targets = {*s.target};
  if (s.pair) request.concurrence_pairs = {*s.pair};
  request.check_closure = true;

  const Eigen::VectorXd times = uniform_times(0.0, s.t_max, config.samples);
  const QuenchSchedule schedule = schedule_for(config, s);
  run.trace = s.quench_time ? evolve_schedule(schedule, psi0, request, times)
                            : sample_trace(run.spectrum, psi0, request, times);

  Metrics& m = run.summary;
  const double compare_until = s.quench_time.value_or(s.t_max);
  const TimeTrace& tr = run.trace;

  if (s.prediction) {
    const EffectivePrediction& pred = *s.prediction;
    const auto exact = measured_gap(run.spectrum, pred.components);
    m.emplace_back("predicted_gap", pred.gap);
    m.emplace_back("measured_gap", exact.gap);
    m.emplace_back("gap_relative_error", std::abs(exact.gap - pred.gap) / pred.gap);
    m.emplace_back("min_state_weight", exact.min_weight);

    if (pred.n_levels == 2) {
      m.emplace_back("max_dev_initial", max_abs_over(tr.times, compare_until, [&](Eigen::Index i) {
                       return tr.probabilities(i, 0) - two_level_probabilities(pred, tr.times(i)).first;
                     }));
      m.emplace_back("max_dev_partner", max_abs_over(tr.times, compare_until, [&](Eigen::Index i) {
                       return tr.probabilities(i, 1) - two_level_probabilities(pred, tr.times(i)).second;
                     }));
    } else {
      m.emplace_back("max_dev_center", max_abs_over(tr.times, compare_until, [&](Eigen::Index i) {
                       return tr.probabilities(i, 0) - w_probabilities(pred, tr.times(i)).first;
                     }));
      m.emplace_back("max_dev_side", max_abs_over(tr.times, compare_until, [&](Eigen::Index i) {
                       const double side = w_probabilities(pred, tr.times(i)).second;
                       return std::max(std::abs(tr.probabilities(i, 1) - side),
                                       std::abs(tr.probabilities(i, 2) - side));
                     }));
      m.emplace_back("side_asymmetry", max_abs_over(tr.times, compare_until, [&](Eigen::Index i) {
                       return tr.probabilities(i, 1) - tr.probabilities(i, 2);
                     }));
    }

    const double t0 = pred.entanglement_times.front();
    m.emplace_back("t0", t0);
    const StateVector at_t0 = evolve_schedule_state(schedule, psi0, t0);
    if (s.target) m.emplace_back("fidelity_at_t0", fidelity_to_target(at_t0, *s.target, true));
    if (s.pair) m.emplace_back("concurrence_at_t0", pair_concurrence(at_t0, s.pair->first, s.pair->second));
  } else if (s.tracked.size() >= 2) {
    m.emplace_back("measured_gap", measured_gap(run.spectrum, s.tracked).gap);
  }

  if (s.target) {
    Eigen::Index best = 0;
    tr.fidelities.col(0).maxCoeff(&best);
    m.emplace_back("peak_fidelity", tr.fidelities(best, 0));
    m.emplace_back("peak_fidelity_time", tr.times(best));
  }

  if (s.quench_time) {
    const StateVector at_quench = evolve_schedule_state(schedule, psi0, *s.quench_time);
    double drift = 0.0;
    double from_half = 0.0;
    for (Eigen::Index i = 0; i < tr.times.size(); ++i) {
      if (tr.times(i) < *s.quench_time) continue;
      for (std::size_t j = 0; j < s.tracked.size(); ++j) {
        const double p = tr.probabilities(i, static_cast<Eigen::Index>(j));
        drift = std::max(drift, std::abs(p - at_quench.probability(s.tracked[j])));
        from_half = std::max(from_half, std::abs(p - 0.5));
      }
    }
    m.emplace_back("quench_time", *s.quench_time);
    m.emplace_back("post_quench_max_drift", drift);
    if (s.tracked.size() == 2) m.emplace_back("post_quench_max_dev_from_half", from_half);
  }
  if (const std::size_t clipped = clipped_eigenvalue_count() - clipped_before; clipped > 0) {
    run.setup.warnings.push_back(std::to_string(clipped) +
                                 " reduced-matrix eigenvalues within rounding of zero were clipped");
  }
  return run;
}

std::vector<SweepRow> run_compare_sweep(const ScenarioConfig& base, const std::string& parameter,
                                        const std::vector<double>& values) {
  if (std::find(kSweepParameters.begin(), kSweepParameters.end(), parameter) == kSweepParameters.end()) {
    throw ConfigError("sweep parameter must be one of g, delta, mu, n_sites (got '" + parameter + "')");
  }
  if (parameter == "mu" && base.scenario != Scenario::kEprOneExcitation) {
    throw ConfigError("mu sweeps apply to epr-one-excitation only");
  }
  std::vector<SweepRow> rows;
  for (double value : values) {
    ScenarioConfig c = base;
    c.quench.reset();
    if (parameter == "g") c.g = value;
    else if (parameter == "delta") c.anisotropy = value;
    else if (parameter == "mu") c.mu = static_cast<int>(std::lround(value));
    else c.n_sites = static_cast<int>(std::lround(value));
    c.t_max.reset();
    if (base.scenario == Scenario::kWTwoDefects || base.scenario == Scenario::kCustom) c.t_max = base.t_max;

    ScenarioSetup s = setup_scenario(c);
    if (s.prediction) s.t_max = 2.0 * s.prediction->entanglement_times.front();
    const auto decomp = decompose(build_sector_hamiltonian(s.chain, s.basis));

    SweepRow row;
    row.value = value;
    const std::vector<Config>& comps = s.prediction ? s.prediction->components : s.tracked;
    row.measured_gap = measured_gap(decomp, comps).gap;
    row.predicted_gap = s.prediction ? s.prediction->gap : kNaN;
    row.relative_error = s.prediction ? std::abs(row.measured_gap - row.predicted_gap) / row.predicted_gap : kNaN;
    if (s.target) {
      TraceRequest request;
      request.targets = {*s.target};
      const auto tr = sample_trace(decomp, basis_state(s.basis, s.initial), request,
                                   uniform_times(0.0, s.t_max, c.samples));
      row.peak_fidelity = tr.fidelities.col(0).maxCoeff();
    } else {
      row.peak_fidelity = kNaN;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace xxz

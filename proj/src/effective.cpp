#include "xxz/effective.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "xxz/errors.hpp"

namespace xxz {

namespace {

constexpr double kPi = std::numbers::pi;

void check_site(const ChainSpec& chain, int site) {
  if (site < 1 || site > chain.n_sites) {
    throw DomainError("site " + std::to_string(site) + " outside 1.." + std::to_string(chain.n_sites));
  }
}

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

// Common offset g of the listed sites; every one must carry the same positive offset.
double common_offset(const ChainSpec& chain, const std::vector<int>& sites) {
  for (int s : sites) check_site(chain, s);
  const double g = chain.offset(sites.front());
  for (int s : sites) {
    if (!nearly_equal(chain.offset(s), g)) {
      throw DomainError("defects on the protocol sites must carry equal offsets (site " +
                        std::to_string(s) + " has " + std::to_string(chain.offset(s)) + ", expected " +
                        std::to_string(g) + ")");
    }
  }
  if (!(g > 0.0)) throw DomainError("defect offset g must be positive");
  return g;
}

void warn_if(EffectivePrediction& pred, bool condition, const std::string& message) {
  if (condition) pred.warnings.push_back(message);
}

void warn_edges(EffectivePrediction& pred, const ChainSpec& chain, int lowest, int highest) {
  warn_if(pred, lowest < 3 || highest > chain.n_sites - 2,
          "protocol sites closer than 2 sites to a chain edge; bulk formulas may not apply");
}

void fill_two_level_times(EffectivePrediction& pred, int n_times) {
  pred.period = 2.0 * kPi / pred.gap;
  for (int k = 0; k < n_times; ++k) pred.entanglement_times.push_back((kPi / 2.0 + k * kPi) / pred.gap);
}

Eigen::MatrixXd symmetric_pair(double diagonal, double coupling) {
  Eigen::MatrixXd m(2, 2);
  m << diagonal, coupling, coupling, diagonal;
  return m;
}

}  // namespace

std::string to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::kEprOneExcitation: return "epr-one-excitation";
    case Scenario::kEprBoundPair: return "epr-bound-pair";
    case Scenario::kEprFirstOrder: return "epr-first-order";
    case Scenario::kWFourDefects: return "w-four-defects";
    case Scenario::kWTwoDefects: return "w-two-defects";
    case Scenario::kCustom: return "custom";
  }
  return "custom";
}

Scenario scenario_from_string(const std::string& name) {
  for (auto s : {Scenario::kEprOneExcitation, Scenario::kEprBoundPair, Scenario::kEprFirstOrder,
                 Scenario::kWFourDefects, Scenario::kWTwoDefects, Scenario::kCustom}) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown scenario '" + name + "'");
}

EffectivePrediction one_excitation_pair(const ChainSpec& chain, int n0, int m0, SecondOrderShift shift,
                                        int n_times) {
  chain.validate();
  if (m0 <= n0) throw DomainError("one_excitation_pair needs n0 < m0");
  const double g = common_offset(chain, {n0, m0});
  const double b = chain.coupling;
  const double e1 = one_magnon_center(chain);
  const int mu = m0 - n0 - 1;

  EffectivePrediction pred;
  pred.scenario = Scenario::kEprOneExcitation;
  pred.components = {{n0}, {m0}};
  warn_if(pred, g < 10.0 * b, "g < 10 B: defect levels are not well separated from the band");
  warn_edges(pred, chain, n0, m0);

  pred.gap = b * std::pow(b / (2.0 * g), mu);
  if (mu == 0) {
    const double sign = shift == SecondOrderShift::kRaise ? 1.0 : -1.0;
    const double centre = e1 + g + sign * b * b / (4.0 * (g + b / 2.0));
    pred.effective_matrix = symmetric_pair(centre, b / 2.0);
    pred.energies = {centre - b / 2.0, centre + b / 2.0};
  } else if (mu == 1) {
    const double centre = e1 + g + b * b / (2.0 * g);
    const double coupling = b * b / (4.0 * g);
    pred.effective_matrix = symmetric_pair(centre, coupling);
    pred.energies = {e1 + g + b * b / (4.0 * g), e1 + g + 3.0 * b * b / (4.0 * g)};
  }
  fill_two_level_times(pred, n_times);
  return pred;
}

std::pair<double, double> two_level_probabilities(const EffectivePrediction& pred, double t) {
  if (pred.n_levels != 2) throw DomainError("two_level_probabilities needs a two-level prediction");
  const double c = std::cos(pred.gap * t);
  return {(1.0 + c) / 2.0, (1.0 - c) / 2.0};
}

EffectivePrediction bound_pair_single_defect(const ChainSpec& chain, int n0, int n_times) {
  chain.validate();
  check_site(chain, n0 - 1);
  check_site(chain, n0 + 1);
  const double g = common_offset(chain, {n0});
  const double b = chain.coupling;
  const double d = chain.anisotropy;
  const double e1 = one_magnon_center(chain);

  EffectivePrediction pred;
  pred.scenario = Scenario::kEprBoundPair;
  pred.components = {{n0 - 1, n0}, {n0, n0 + 1}};
  warn_if(pred, g < 10.0 * b / (2.0 * d), "g < 10 B/(2 Delta): defect pairs overlap the bound-pair band");
  warn_edges(pred, chain, n0 - 1, n0 + 1);

  const double s = b * b / (4.0 * (b * d + g));
  const double centre = 2.0 * e1 + g + b * d + b / (4.0 * d) + s;
  pred.effective_matrix = symmetric_pair(centre, s);
  pred.energies = {centre - s, centre + s};
  pred.gap = 2.0 * s;
  fill_two_level_times(pred, n_times);
  return pred;
}

EffectivePrediction first_order_epr(const ChainSpec& chain, int n0, int n_times) {
  chain.validate();
  check_site(chain, n0 + 2);
  const double g = common_offset(chain, {n0, n0 + 1});
  const double b = chain.coupling;
  const double d = chain.anisotropy;
  if (!nearly_equal(chain.offset(n0 + 2), g + b * d)) {
    throw DomainError("first_order_epr needs offset g + B Delta on site " + std::to_string(n0 + 2));
  }
  const double e1 = one_magnon_center(chain);

  EffectivePrediction pred;
  pred.scenario = Scenario::kEprFirstOrder;
  pred.derived = true;
  pred.components = {{n0, n0 + 1}, {n0, n0 + 2}};
  warn_if(pred, g < 10.0 * b, "g < 10 B: first-order resonance is not isolated");
  warn_edges(pred, chain, n0, n0 + 2);

  const double centre = 2.0 * e1 + b * d + 2.0 * g;
  pred.effective_matrix = symmetric_pair(centre, b / 2.0);
  pred.energies = {centre - b / 2.0, centre + b / 2.0};
  pred.gap = b;
  fill_two_level_times(pred, n_times);
  return pred;
}

WBlockParameters w_block_parameters(double coupling, double anisotropy, double g, double one_magnon) {
  const double b = coupling;
  const double d = anisotropy;
  return {b / (4.0 * d), b * b / (4.0 * (b * d + g)), 2.0 * one_magnon + b * d + 2.0 * g,
          std::sqrt(8.0 * b * b * d * d + 16.0 * b * d * g + 9.0 * g * g)};
}

std::vector<double> w_closed_form_energies(double coupling, double anisotropy, double g, double one_magnon) {
  const double b = coupling;
  const double d = anisotropy;
  const auto p = w_block_parameters(b, d, g, one_magnon);
  const double denom = 8.0 * d * (b * d + g);
  return {p.origin + (4.0 * b * b * d + 3.0 * b * g - b * p.u) / denom,
          p.origin + b * (2.0 * b * d + g) / (4.0 * d * (b * d + g)),
          p.origin + (4.0 * b * b * d + 3.0 * b * g + b * p.u) / denom};
}

Eigen::Matrix3d w_effective_matrix(double coupling, double anisotropy, double g, double one_magnon) {
  const auto p = w_block_parameters(coupling, anisotropy, g, one_magnon);
  Eigen::Matrix3d m;
  m << p.origin + p.r + p.s, p.r, 0.0,
       p.r, p.origin + 2.0 * p.r, p.r,
       0.0, p.r, p.origin + p.r + p.s;
  return m;
}

EffectivePrediction w_four_defects(const ChainSpec& chain, int n0, int n_times) {
  chain.validate();
  const double g = common_offset(chain, {n0, n0 + 1, n0 + 2, n0 + 3});
  const double b = chain.coupling;
  const double d = chain.anisotropy;
  const double e1 = one_magnon_center(chain);

  EffectivePrediction pred;
  pred.scenario = Scenario::kWFourDefects;
  pred.n_levels = 3;
  pred.components = {{n0, n0 + 1}, {n0 + 1, n0 + 2}, {n0 + 2, n0 + 3}};
  pred.initial_component = 1;
  warn_if(pred, g < 10.0 * b / (2.0 * d), "g < 10 B/(2 Delta): defect pairs overlap the bound-pair band");
  warn_edges(pred, chain, n0, n0 + 3);

  pred.effective_matrix = Eigen::MatrixXd(w_effective_matrix(b, d, g, e1));
  pred.energies = w_closed_form_energies(b, d, g, e1);
  const auto p = w_block_parameters(b, d, g, e1);
  pred.gap = b * p.u / (4.0 * d * (b * d + g));
  pred.period = 2.0 * kPi / pred.gap;
  // Solutions of cos(gap t) = -1/3 in increasing order.
  const double x = std::acos(-1.0 / 3.0);
  for (int k = 0; k < n_times; ++k) {
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    pred.entanglement_times.push_back((sign * x + 2.0 * kPi * (k - k / 2)) / pred.gap);
  }
  return pred;
}

std::pair<double, double> w_probabilities(const EffectivePrediction& pred, double t) {
  if (pred.n_levels != 3) throw DomainError("w_probabilities needs a W prediction");
  const double c = std::cos(pred.gap * t);
  return {(1.0 + c) / 2.0, (1.0 - c) / 4.0};
}

Eigen::VectorXd effective_eigenvalues(const EffectivePrediction& pred) {
  if (!pred.effective_matrix) throw DomainError("prediction has no effective matrix");
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(*pred.effective_matrix, Eigen::EigenvaluesOnly)
      .eigenvalues();
}

}  // namespace xxz

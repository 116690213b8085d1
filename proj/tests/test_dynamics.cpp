#include <doctest.h>

#include <cmath>

#include "xxz/dynamics.hpp"
#include "xxz/effective.hpp"
#include "xxz/errors.hpp"

using namespace xxz;

namespace {

ChainSpec chain(int n, std::map<int, double> defects = {}) {
  return ChainSpec{n, 1.0, 10.0, 50.0, std::move(defects)};
}

ChainSpec figure_chain() { return chain(12, {{3, 10.0}, {4, 10.0}, {5, 10.0}, {6, 10.0}}); }

}  // namespace

TEST_CASE("figure setup: initial probabilities") {
  const auto basis = enumerate_sector(12, 2);
  const auto d = decompose(build_sector_hamiltonian(figure_chain(), basis));
  const auto tr = probability_trace(d, basis_state(basis, {4, 5}), {{4, 5}, {3, 4}, {5, 6}},
                                    uniform_times(0.0, 100.0, 501));
  CHECK(tr.probabilities(0, 0) == 1.0);
  CHECK(tr.probabilities(0, 1) == 0.0);
  CHECK(tr.probabilities(0, 2) == 0.0);
  CHECK(tr.probability_labels == std::vector<std::string>{"P_4_5", "P_3_4", "P_5_6"});
}

TEST_CASE("figure setup: edge pairs share their probability") {
  const auto basis = enumerate_sector(12, 2);
  const auto d = decompose(build_sector_hamiltonian(figure_chain(), basis));
  const auto tr = probability_trace(d, basis_state(basis, {4, 5}), {{3, 4}, {5, 6}}, uniform_times(0.0, 200.0));
  CHECK((tr.probabilities.col(0) - tr.probabilities.col(1)).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("figure setup: equal thirds at the first W instant") {
  const auto c = figure_chain();
  const auto basis = enumerate_sector(12, 2);
  const auto d = decompose(build_sector_hamiltonian(c, basis));
  const auto pred = w_four_defects(c, 3);
  const auto psi = evolve(d, basis_state(basis, {4, 5}), pred.entanglement_times[0]);
  for (const Config& cfg : {Config{4, 5}, Config{3, 4}, Config{5, 6}}) {
    CHECK(std::abs(psi.probability(cfg) - 1.0 / 3.0) < 0.05);
  }
}

TEST_CASE("trace closure over the full basis") {
  const auto basis = enumerate_sector(12, 2);
  const auto d = decompose(build_sector_hamiltonian(figure_chain(), basis));
  TraceRequest req;
  req.tracked = {{4, 5}};
  req.check_closure = true;
  const auto tr = sample_trace(d, basis_state(basis, {4, 5}), req, uniform_times(0.0, 1000.0, 300));
  CHECK((tr.total_probability.array() - 1.0).abs().maxCoeff() <= 1e-9);
  for (Eigen::Index i = 0; i < tr.probabilities.size(); ++i) {
    CHECK(tr.probabilities(i) >= 0.0);
    CHECK(tr.probabilities(i) <= 1.0);
  }
}

TEST_CASE("trace rejects unknown configurations and bad sample times") {
  const auto basis = enumerate_sector(6, 1);
  const auto d = decompose(build_sector_hamiltonian(chain(6), basis));
  const auto psi = basis_state(basis, {2});
  CHECK_THROWS_AS(probability_trace(d, psi, {{7}}, uniform_times(0.0, 1.0, 5)), DomainError);
  CHECK_THROWS_AS(probability_trace(d, psi, {{2, 3}}, uniform_times(0.0, 1.0, 5)), DomainError);
  Eigen::VectorXd backwards(2);
  backwards << 1.0, 0.5;
  CHECK_THROWS_AS(probability_trace(d, psi, {{2}}, backwards), DomainError);
  CHECK_THROWS_AS(probability_trace(d, psi, {{2}}, Eigen::VectorXd::Constant(1, -1.0)), DomainError);
}

TEST_CASE("single-segment schedule is plain evolution") {
  const auto c = chain(8, {{3, 6.0}, {4, 6.0}});
  const auto basis = enumerate_sector(8, 1);
  const auto psi0 = basis_state(basis, {3});
  const auto d = decompose(build_sector_hamiltonian(c, basis));
  const QuenchSchedule s{{{c, 100.0}}};
  TraceRequest req;
  req.tracked = {{3}, {4}};
  const auto times = uniform_times(0.0, 40.0, 81);
  const auto a = evolve_schedule(s, psi0, req, times);
  const auto b = sample_trace(d, psi0, req, times);
  CHECK((a.probabilities - b.probabilities).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("zero-duration first segment equals starting in the second") {
  const auto c = chain(8, {{3, 6.0}, {4, 6.0}});
  const auto other = c.detuned(3, 2.5);
  const auto basis = enumerate_sector(8, 1);
  const auto psi0 = basis_state(basis, {3});
  TraceRequest req;
  req.tracked = {{3}, {4}, {5}};
  const auto times = uniform_times(0.0, 30.0, 61);
  const auto a = evolve_schedule(QuenchSchedule{{{c, 0.0}, {other, 30.0}}}, psi0, req, times);
  const auto b = evolve_schedule(QuenchSchedule{{{other, 30.0}}}, psi0, req, times);
  CHECK((a.probabilities - b.probabilities).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("state is continuous across a segment boundary") {
  const auto c = chain(8, {{3, 6.0}, {4, 6.0}});
  const auto basis = enumerate_sector(8, 1);
  const auto psi0 = basis_state(basis, {3});
  const QuenchSchedule s{{{c, 2.0}, {c.detuned(3, 30.0), 10.0}}};
  const auto before = evolve(decompose(build_sector_hamiltonian(c, basis)), psi0, 2.0);
  const auto at = evolve_schedule_state(s, psi0, 2.0);
  CHECK((before.amplitudes() - at.amplitudes()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("detuning at the EPR instant freezes populations to the two-level bound") {
  const auto c = chain(10, {{4, 100.0}, {5, 100.0}});
  const auto basis = enumerate_sector(10, 1);
  const auto pred = one_excitation_pair(c, 4, 5);
  const double t0 = pred.entanglement_times[0];
  const double detuning = 20.0;
  const QuenchSchedule s{{{c, t0}, {c.detuned(4, detuning), 0.0}}};
  TraceRequest req;
  req.tracked = {{4}, {5}};
  const auto tr = evolve_schedule(s, basis_state(basis, {4}), req, uniform_times(t0, t0 + 20.0 * M_PI, 4000));

  // Two-level oracle: Bloch vector perpendicular to the (2V, 0, detuning) axis, V = B/2.
  const double bound = 0.5 / std::sqrt(detuning * detuning + 1.0);
  const double worst = (tr.probabilities.array() - 0.5).abs().maxCoeff();
  CHECK(worst <= bound + 2e-3);
  CHECK(worst >= bound - 2e-3);

  // Without the quench the excitation keeps swapping.
  const auto free = evolve(decompose(build_sector_hamiltonian(c, basis)), basis_state(basis, {4}), 2.0 * t0);
  CHECK(free.probability({5}) > 0.99);
}

TEST_CASE("schedules validate their segments") {
  const auto basis = enumerate_sector(8, 1);
  const auto psi0 = basis_state(basis, {3});
  TraceRequest req;
  req.tracked = {{3}};
  const auto times = uniform_times(0.0, 1.0, 3);
  CHECK_THROWS_AS(evolve_schedule(QuenchSchedule{}, psi0, req, times), DomainError);
  CHECK_THROWS_AS(evolve_schedule(QuenchSchedule{{{chain(8), 1.0}, {chain(9), 1.0}}}, psi0, req, times),
                  DomainError);
  CHECK_THROWS_AS(evolve_schedule(QuenchSchedule{{{chain(8), -1.0}}}, psi0, req, times), DomainError);
  CHECK_THROWS_AS(evolve_schedule(QuenchSchedule{{{chain(9), 1.0}}}, psi0, req, times), DomainError);
}

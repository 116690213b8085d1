#include "xxz/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "xxz/errors.hpp"
#include "xxz/hamiltonian.hpp"

namespace xxz {

namespace {

void check_sample_times(const Eigen::VectorXd& times) {
  for (Eigen::Index i = 0; i < times.size(); ++i) {
    if (!(times(i) >= 0.0)) throw DomainError("sample times must be nonnegative");
    if (i && times(i) < times(i - 1)) throw DomainError("sample times must be ascending");
  }
}

class TraceRecorder {
 public:
  TraceRecorder(const TraceRequest& request, const Eigen::VectorXd& times, const SectorBasis& basis)
      : request_(request) {
    const Eigen::Index n = times.size();
    trace_.times = times;
    trace_.probabilities.resize(n, static_cast<Eigen::Index>(request.tracked.size()));
    trace_.fidelities.resize(n, static_cast<Eigen::Index>(request.targets.size()));
    trace_.concurrences.resize(n, static_cast<Eigen::Index>(request.concurrence_pairs.size()));
    for (const auto& c : request.tracked) {
      basis.index_of(c);
      trace_.probability_labels.push_back("P_" + config_label(c));
    }
    for (const auto& t : request.targets) {
      for (const auto& c : t.components) basis.index_of(c);
      trace_.fidelity_labels.push_back("F_" + t.label());
    }
    for (const auto& [a, b] : request.concurrence_pairs) {
      trace_.concurrence_labels.push_back("C_" + std::to_string(a) + "_" + std::to_string(b));
    }
    if (request.check_closure) trace_.total_probability.resize(n);
  }

  void record(Eigen::Index row, const StateVector& psi) {
    for (std::size_t j = 0; j < request_.tracked.size(); ++j) {
      trace_.probabilities(row, static_cast<Eigen::Index>(j)) =
          std::clamp(psi.probability(request_.tracked[j]), 0.0, 1.0);
    }
    for (std::size_t j = 0; j < request_.targets.size(); ++j) {
      trace_.fidelities(row, static_cast<Eigen::Index>(j)) =
          fidelity_to_target(psi, request_.targets[j], request_.phase_maximized);
    }
    for (std::size_t j = 0; j < request_.concurrence_pairs.size(); ++j) {
      const auto [a, b] = request_.concurrence_pairs[j];
      trace_.concurrences(row, static_cast<Eigen::Index>(j)) = pair_concurrence(psi, a, b);
    }
    if (request_.check_closure) {
      const double total = psi.amplitudes().squaredNorm();
      if (std::abs(total - 1.0) > 1e-9) {
        throw NumericError("probability closure violated at t=" + std::to_string(trace_.times(row)) +
                           ": sum=" + std::to_string(total));
      }
      trace_.total_probability(row) = total;
    }
  }

  TimeTrace take() { return std::move(trace_); }

 private:
  const TraceRequest& request_;
  TimeTrace trace_;
};

}  // namespace

Eigen::Index TimeTrace::column_of(const Config& config) const {
  const std::string label = "P_" + config_label(config);
  auto it = std::find(probability_labels.begin(), probability_labels.end(), label);
  if (it == probability_labels.end()) throw DomainError("configuration " + to_string(config) + " not tracked");
  return static_cast<Eigen::Index>(it - probability_labels.begin());
}

void QuenchSchedule::validate() const {
  if (segments.empty()) throw DomainError("quench schedule is empty");
  for (const auto& seg : segments) {
    seg.chain.validate();
    if (!(seg.duration >= 0.0) || !std::isfinite(seg.duration)) {
      throw DomainError("segment durations must be finite and nonnegative");
    }
    if (!seg.chain.same_medium(segments.front().chain)) {
      throw DomainError("schedule segments must share N, B, Delta and eps0");
    }
  }
}

std::vector<double> QuenchSchedule::boundaries() const {
  std::vector<double> out;
  double t = 0.0;
  for (const auto& seg : segments) {
    out.push_back(t);
    t += seg.duration;
  }
  return out;
}

Eigen::VectorXd uniform_times(double t_begin, double t_end, int n) {
  if (n < 1) throw DomainError("sample count must be positive");
  if (n == 1) return Eigen::VectorXd::Constant(1, t_begin);
  return Eigen::VectorXd::LinSpaced(n, t_begin, t_end);
}

TimeTrace sample_trace(const SpectralDecomposition& decomp, const StateVector& psi0,
                       const TraceRequest& request, const Eigen::VectorXd& sample_times) {
  check_sample_times(sample_times);
  TraceRecorder recorder(request, sample_times, *psi0.basis());
  const Propagator prop(decomp, psi0);
  for (Eigen::Index i = 0; i < sample_times.size(); ++i) recorder.record(i, prop.at(sample_times(i)));
  return recorder.take();
}

TimeTrace probability_trace(const SpectralDecomposition& decomp, const StateVector& psi0,
                            const std::vector<Config>& tracked, const Eigen::VectorXd& sample_times) {
  TraceRequest request;
  request.tracked = tracked;
  return sample_trace(decomp, psi0, request, sample_times);
}

namespace {

// Walks the schedule forward, building each segment's decomposition once.
class ScheduleRunner {
 public:
  ScheduleRunner(const QuenchSchedule& schedule, const StateVector& psi0)
      : schedule_(schedule), starts_(schedule.boundaries()), state_(psi0) {
    schedule.validate();
    const SectorBasis& basis = *psi0.basis();
    if (basis.n_sites() != schedule.segments.front().chain.n_sites) {
      throw DomainError("initial state basis does not match the schedule's chain");
    }
    enter(0);
  }

  StateVector at(double t) {
    if (t < starts_[segment_]) throw DomainError("schedule sampled backwards in time");
    while (segment_ + 1 < starts_.size() && t >= starts_[segment_ + 1]) {
      state_ = propagator_->at(starts_[segment_ + 1] - starts_[segment_]);
      enter(segment_ + 1);
    }
    return propagator_->at(t - starts_[segment_]);
  }

 private:
  void enter(std::size_t index) {
    segment_ = index;
    propagator_.reset();
    decomp_ = decompose(build_sector_hamiltonian(schedule_.segments[index].chain, state_.basis()));
    propagator_.emplace(decomp_, state_);
  }

  const QuenchSchedule& schedule_;
  std::vector<double> starts_;
  std::size_t segment_ = 0;
  StateVector state_;
  SpectralDecomposition decomp_;
  std::optional<Propagator> propagator_;
};

}  // namespace

StateVector evolve_schedule_state(const QuenchSchedule& schedule, const StateVector& psi0, double t) {
  if (!(t >= 0.0)) throw DomainError("time must be nonnegative");
  return ScheduleRunner(schedule, psi0).at(t);
}

TimeTrace evolve_schedule(const QuenchSchedule& schedule, const StateVector& psi0,
                          const TraceRequest& request, const Eigen::VectorXd& sample_times) {
  check_sample_times(sample_times);
  TraceRecorder recorder(request, sample_times, *psi0.basis());
  ScheduleRunner runner(schedule, psi0);
  for (Eigen::Index i = 0; i < sample_times.size(); ++i) recorder.record(i, runner.at(sample_times(i)));
  return recorder.take();
}

}  // namespace xxz

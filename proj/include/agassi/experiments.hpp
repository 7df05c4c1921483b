#pragma once

// Time-series and sweep experiments on the j = 1 model: Trotter fidelity,
// survival probability, the connected sigma^z(12) correlator and its Rabi
// amplitude as a probe of the two phases.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <future>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "agassi/errors.hpp"
#include "agassi/ion_compiler.hpp"
#include "agassi/model.hpp"
#include "agassi/statevector.hpp"
#include "agassi/trotter.hpp"

namespace agassi {

enum class ExperimentKind { fidelity_vs_time, fidelity_vs_steps, survival, correlation, phase_sweep, compile_report };

inline std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::fidelity_vs_time: return "fidelity-time";
    case ExperimentKind::fidelity_vs_steps: return "fidelity-steps";
    case ExperimentKind::survival: return "survival";
    case ExperimentKind::correlation: return "correlation";
    case ExperimentKind::phase_sweep: return "phase-sweep";
    case ExperimentKind::compile_report: return "compile-report";
  }
  return "?";
}

inline ExperimentKind experiment_from_string(std::string_view s) {
  for (auto k : {ExperimentKind::fidelity_vs_time, ExperimentKind::fidelity_vs_steps, ExperimentKind::survival,
                 ExperimentKind::correlation, ExperimentKind::phase_sweep, ExperimentKind::compile_report}) {
    if (s == to_string(k)) return k;
  }
  // also accept the underscore spellings
  if (s == "fidelity_vs_time") return ExperimentKind::fidelity_vs_time;
  if (s == "fidelity_vs_nT" || s == "fidelity_vs_steps") return ExperimentKind::fidelity_vs_steps;
  if (s == "phase_sweep") return ExperimentKind::phase_sweep;
  if (s == "compile_report") return ExperimentKind::compile_report;
  throw input_error("unknown experiment '" + std::string(s) + "'");
}

struct SweepSpec {
  double start = 0.0;
  double stop = 1.0;
  int points = 101;

  double at(int k) const { return points == 1 ? start : start + (stop - start) * k / (points - 1); }
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::correlation;
  ModelParams params{1.0, 1.0, 1.0, 1};
  int trotter_steps = 5;
  double t_final = 10.0;
  int samples = 201;
  std::string initial_state = "ddUU";
  bool trotter = true;  // also produce the Trotterized series where applicable
  SweepSpec sweep;
  double e1 = 1e-4;  // single-qubit gate error
  double e2 = 1e-3;  // two-qubit gate error
  int rabi_periods = 2;
  int samples_per_period = 200;
  std::string output;

  void validate() const {
    params.validate();
    if (samples < 2) throw input_error("samples must be >= 2");
    if (trotter_steps < 1) throw input_error("n_T must be >= 1");
    const bool timed = experiment != ExperimentKind::phase_sweep && experiment != ExperimentKind::compile_report;
    if (timed && !(t_final > 0.0)) throw input_error("t_final must be > 0");
    if (timed && detail::parse_spin_pattern(initial_state).size() != params.num_qubits()) {
      throw input_error("initial state '" + initial_state + "' does not have " +
                        std::to_string(params.num_qubits()) + " spins");
    }
    if (sweep.points < 1) throw input_error("sweep needs at least one point");
    if (rabi_periods < 2) throw input_error("amplitude window must cover at least two Rabi periods");
    if (samples_per_period < 200) throw input_error("amplitude grid needs >= 200 samples per period");
  }

  std::vector<double> time_grid() const {
    std::vector<double> t(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) t[static_cast<std::size_t>(k)] = t_final * k / (samples - 1);
    return t;
  }
};

/// sigma^z(12) = <Z1 Z2> - <Z1><Z2>.
inline double correlation_z12(const StateVector& psi) {
  const std::size_t n = psi.num_qubits();
  if (n < 2) throw input_error("correlation needs at least two qubits");
  const auto z1 = PauliSum(PauliString::single(n, 1, Pauli::Z));
  const auto z2 = PauliSum(PauliString::single(n, 2, Pauli::Z));
  auto zz = PauliString::single(n, 1, Pauli::Z);
  zz.set(2, Pauli::Z);
  return expectation(psi, PauliSum(zz)) - expectation(psi, z1) * expectation(psi, z2);
}

/// |<psi0|psi>|^2.
inline double survival_probability(const StateVector& psi0, const StateVector& psi) { return fidelity(psi0, psi); }

/// Period of the two-level Rabi oscillation pi / sqrt(eps^2 + (g+V)^2).
inline double rabi_period(const ModelParams& p) {
  return std::numbers::pi / std::hypot(p.epsilon, p.control());
}

// ---------------------------------------------------------------------------
// Extremum search on sampled curves

struct Extremum {
  double time = 0.0;
  double value = 0.0;
};

/// Maximum of f over a uniform grid, refined by Brent's method on the two
/// grid cells around the best sample.
inline Extremum refined_maximum(const std::function<double(double)>& f, const std::vector<double>& grid) {
  if (grid.empty()) throw input_error("empty grid");
  std::size_t best = 0;
  std::vector<double> values(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    values[k] = f(grid[k]);
    if (values[k] > values[best]) best = k;
  }
  Extremum e{grid[best], values[best]};
  if (grid.size() < 2) return e;
  const double lo = grid[best == 0 ? 0 : best - 1];
  const double hi = grid[std::min(best + 1, grid.size() - 1)];
  boost::uintmax_t iters = 200;
  const auto [t, neg] = boost::math::tools::brent_find_minima([&](double x) { return -f(x); }, lo, hi,
                                                              std::numeric_limits<double>::digits / 2, iters);
  if (-neg > e.value) e = {t, -neg};
  return e;
}

inline Extremum refined_minimum(const std::function<double(double)>& f, const std::vector<double>& grid) {
  const auto e = refined_maximum([&](double t) { return -f(t); }, grid);
  return {e.time, -e.value};
}

// ---------------------------------------------------------------------------
// Series

struct CorrelationSeries {
  TimeSeries exact;
  TimeSeries trotter;  // empty unless requested
};

/// Trotterized states on a uniform grid, advancing n_T steps per sampling interval.
inline std::vector<StateVector> trotter_states_on_grid(const StateVector& psi0, const ModelParams& p,
                                                       const std::vector<double>& grid, int steps_per_interval) {
  const TrotterStepper stepper(build_schedule(p, 0.0, 1));
  std::vector<StateVector> out;
  out.reserve(grid.size());
  StateVector psi = psi0;
  double t = 0.0;
  for (double target : grid) {
    const double dt = (target - t) / steps_per_interval;
    if (dt > 0.0) {
      for (int k = 0; k < steps_per_interval; ++k) stepper.step(psi, dt);
    }
    t = target;
    out.push_back(psi);
  }
  return out;
}

/// sigma^z(12) under exact evolution and, when cfg.trotter is set, under
/// Trotter evolution with n_T steps between consecutive samples.
inline CorrelationSeries correlation_series(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto psi0 = basis_state(cfg.initial_state);
  const ExactPropagator prop(build_hamiltonian(cfg.params));
  const auto grid = cfg.time_grid();
  CorrelationSeries out;
  for (double t : grid) out.exact.push_back(t, correlation_z12(prop.evolve(psi0, t)));
  if (cfg.trotter) {
    const auto states = trotter_states_on_grid(psi0, cfg.params, grid, cfg.trotter_steps);
    for (std::size_t k = 0; k < grid.size(); ++k) out.trotter.push_back(grid[k], correlation_z12(states[k]));
  }
  return out;
}

inline TimeSeries survival_series(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto psi0 = basis_state(cfg.initial_state);
  const ExactPropagator prop(build_hamiltonian(cfg.params));
  TimeSeries out;
  for (double t : cfg.time_grid()) out.push_back(t, survival_probability(psi0, prop.evolve(psi0, t)));
  return out;
}

/// Minimum survival probability over the configured window, refined off-grid.
inline double survival_minimum(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto psi0 = basis_state(cfg.initial_state);
  const ExactPropagator prop(build_hamiltonian(cfg.params));
  return refined_minimum([&](double t) { return survival_probability(psi0, prop.evolve(psi0, t)); },
                         cfg.time_grid())
      .value;
}

/// Fidelity between exact and Trotterized states at each sample time; the
/// Trotter state at time t uses n_T steps over [0, t].
inline TimeSeries fidelity_time_series(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto psi0 = basis_state(cfg.initial_state);
  const ExactPropagator prop(build_hamiltonian(cfg.params));
  TimeSeries out;
  for (double t : cfg.time_grid()) {
    out.push_back(t, fidelity(prop.evolve(psi0, t), trotter_evolve(psi0, cfg.params, t, cfg.trotter_steps)));
  }
  return out;
}

struct StepFidelity {
  int steps = 1;
  double fidelity = 1.0;
};

/// Fidelity at t_final for n_T = 1 .. cfg.trotter_steps.
inline std::vector<StepFidelity> fidelity_vs_steps(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto psi0 = basis_state(cfg.initial_state);
  const auto exact = exact_evolve(psi0, build_hamiltonian(cfg.params), cfg.t_final);
  std::vector<StepFidelity> out;
  for (int n = 1; n <= cfg.trotter_steps; ++n) {
    out.push_back({n, fidelity(exact, trotter_evolve(psi0, cfg.params, cfg.t_final, n))});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rabi amplitude of sigma^z(12)

namespace detail {

inline std::vector<double> amplitude_grid(const ExperimentConfig& cfg) {
  const double period = rabi_period(cfg.params);
  const int n = cfg.rabi_periods * cfg.samples_per_period;
  std::vector<double> grid(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) grid[static_cast<std::size_t>(k)] = period * k / cfg.samples_per_period;
  return grid;
}

}  // namespace detail

/// Maximum over time of the exact sigma^z(12) series. The window covers
/// cfg.rabi_periods Rabi periods sampled at cfg.samples_per_period, and the
/// best sample is refined off-grid.
inline double amplitude(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.params.control() == 0.0) return 0.0;
  const auto psi0 = basis_state(cfg.initial_state);
  const ExactPropagator prop(build_hamiltonian(cfg.params));
  const auto e = refined_maximum([&](double t) { return correlation_z12(prop.evolve(psi0, t)); },
                                 detail::amplitude_grid(cfg));
  return std::clamp(e.value, 0.0, 1.0);
}

/// Same window as amplitude(), for the Trotterized curve at a fixed step
/// size of (grid spacing) / n_T.
inline double trotter_amplitude(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.params.control() == 0.0) return 0.0;
  const auto psi0 = basis_state(cfg.initial_state);
  const auto grid = detail::amplitude_grid(cfg);
  const double dt = (grid[1] - grid[0]) / cfg.trotter_steps;
  const auto states = trotter_states_on_grid(psi0, cfg.params, grid, cfg.trotter_steps);
  std::size_t best = 0;
  std::vector<double> values(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    values[k] = correlation_z12(states[k]);
    if (values[k] > values[best]) best = k;
  }
  // Refine inside the two cells around the best sample, starting from the
  // stored state at the left edge of the bracket.
  const std::size_t left = best == 0 ? 0 : best - 1;
  const std::size_t right = std::min(best + 1, grid.size() - 1);
  const TrotterStepper stepper(build_schedule(cfg.params, 0.0, 1));
  auto f = [&](double t) {
    StateVector psi = states[left];
    double rest = t - grid[left];
    while (rest > dt) {
      stepper.step(psi, dt);
      rest -= dt;
    }
    if (rest > 0.0) stepper.step(psi, rest);
    return correlation_z12(psi);
  };
  double value = values[best];
  if (right > left) {
    boost::uintmax_t iters = 200;
    const auto [t, neg] = boost::math::tools::brent_find_minima([&](double x) { return -f(x); }, grid[left],
                                                                grid[right], std::numeric_limits<double>::digits / 2,
                                                                iters);
    value = std::max(value, -neg);
  }
  return std::clamp(value, 0.0, 1.0);
}

/// Amplitude within this distance of one counts as saturated.
inline constexpr double kSaturationTol = 1e-6;

inline Phase classify_amplitude(double amp) {
  return amp >= 1.0 - kSaturationTol ? Phase::broken_symmetry : Phase::symmetric;
}

struct SweepPoint {
  double control = 0.0;  // g = V, in units of eps
  double amplitude = 0.0;
  Phase phase = Phase::symmetric;
};

struct SweepResult {
  std::vector<SweepPoint> points;
};

/// Amplitude along g = V over cfg.sweep; points run in parallel.
inline SweepResult phase_sweep(const ExperimentConfig& cfg, bool use_trotter = false) {
  cfg.validate();
  SweepResult out;
  out.points.resize(static_cast<std::size_t>(cfg.sweep.points));
  auto work = [&](std::size_t k) {
    ExperimentConfig point = cfg;
    const double x = cfg.sweep.at(static_cast<int>(k));
    point.params.g = x;
    point.params.V = x;
    const double a = use_trotter ? trotter_amplitude(point) : amplitude(point);
    out.points[k] = {x, a, classify_amplitude(a)};
  };
  const std::size_t workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t k = w; k < out.points.size(); k += workers) work(k);
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

// ---------------------------------------------------------------------------
// Gate report

struct CompileReport {
  GateSequence sequence;
  GateCounts counts;
  ErrorBudget budget;
};

inline CompileReport compile_report(const ExperimentConfig& cfg) {
  cfg.validate();
  CompileReport r;
  r.sequence = compile_schedule(build_schedule(cfg.params, cfg.t_final, cfg.trotter_steps));
  r.counts = count_gates(r.sequence);
  r.budget = error_budget(r.counts, cfg.e1, cfg.e2, cfg.trotter_steps);
  return r;
}

}  // namespace agassi

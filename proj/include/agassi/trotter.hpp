#pragma once

// First-order Lie-Trotter evolution of the j = 1 Agassi Hamiltonian.
//
// One step of size dt is the operator product exp[-i(H1+H2)dt] exp[-iH3 dt],
// so the eight commuting four-body exponentials act on the state first and
// the diagonal phases second. StepOrder::diagonal_first swaps the blocks.

#include <cmath>
#include <string>
#include <vector>

#include "agassi/errors.hpp"
#include "agassi/model.hpp"
#include "agassi/pauli.hpp"
#include "agassi/statevector.hpp"

namespace agassi {

enum class StepOrder { interaction_first, diagonal_first };

/// exp(-i rate dt P) for a unit-coefficient string P.
struct InteractionTerm {
  PauliString string;
  double rate = 0.0;  // coefficient of the string in H3

  double angle(double dt) const { return rate * dt; }
};

struct TrotterSchedule {
  PauliSum diagonal_block;                        // h1 + h2
  std::vector<InteractionTerm> interaction_layer;  // listing order, pairwise commuting
  int steps = 1;
  double time = 0.0;
  StepOrder order = StepOrder::interaction_first;

  double step_size() const { return time / steps; }
};

inline TrotterSchedule build_schedule(const ModelParams& p, double t, int steps,
                                      StepOrder order = StepOrder::interaction_first) {
  p.validate();
  if (p.j != 1) throw unsupported_error("Trotter schedules are implemented for j = 1 only");
  if (steps < 1) throw input_error("number of Trotter steps must be >= 1");
  if (!(t >= 0.0) || !std::isfinite(t)) throw input_error("evolution time must be finite and >= 0");

  const auto split = build_split_j1(p);
  TrotterSchedule s;
  s.diagonal_block = split.diagonal();
  s.steps = steps;
  s.time = t;
  s.order = order;
  for (const auto& term : kInteractionStrings) {
    const auto letters = PauliString::from_letters(term.letters);
    const double rate = split.h3.coefficient(letters).real();
    if (rate != 0.0) s.interaction_layer.push_back({letters, rate});
  }
  return s;
}

/// Applies single steps of a schedule; the diagonal phase table is built once.
class TrotterStepper {
 public:
  explicit TrotterStepper(const TrotterSchedule& schedule)
      : schedule_(schedule), energies_(diagonal_energies(schedule.diagonal_block)) {}

  void step(StateVector& psi, double dt) const {
    if (schedule_.order == StepOrder::diagonal_first) {
      apply_diagonal_phases(psi, energies_, dt);
      apply_interaction(psi, dt);
    } else {
      apply_interaction(psi, dt);
      apply_diagonal_phases(psi, energies_, dt);
    }
  }

  void apply_interaction(StateVector& psi, double dt) const {
    for (const auto& term : schedule_.interaction_layer) {
      apply_pauli_exponential_inplace(psi, term.string, term.angle(dt));
    }
  }

  void run(StateVector& psi) const {
    const double dt = schedule_.step_size();
    for (int k = 0; k < schedule_.steps; ++k) step(psi, dt);
  }

  const TrotterSchedule& schedule() const { return schedule_; }

 private:
  TrotterSchedule schedule_;
  std::vector<double> energies_;
};

inline StateVector run_schedule(const StateVector& psi0, const TrotterSchedule& s) {
  StateVector psi = psi0;
  TrotterStepper(s).run(psi);
  return psi;
}

inline StateVector trotter_evolve(const StateVector& psi0, const ModelParams& p, double t, int steps,
                                  StepOrder order = StepOrder::interaction_first) {
  return run_schedule(psi0, build_schedule(p, t, steps, order));
}

/// Trotter evolution with a fixed step size: floor(t/dt) full steps followed
/// by one partial step covering the remainder.
inline StateVector trotter_evolve_fixed_step(const StateVector& psi0, const ModelParams& p, double t,
                                             double dt, StepOrder order = StepOrder::interaction_first) {
  if (!(dt > 0.0)) throw input_error("Trotter step size must be positive");
  const TrotterStepper stepper(build_schedule(p, t, 1, order));
  StateVector psi = psi0;
  const auto full = static_cast<long>(std::floor(t / dt));
  for (long k = 0; k < full; ++k) stepper.step(psi, dt);
  const double rest = t - static_cast<double>(full) * dt;
  if (rest > 0.0) stepper.step(psi, rest);
  return psi;
}

/// 1 - |<exact(t)|trotter(t)>|^2.
inline double digital_error(const StateVector& psi0, const ModelParams& p, double t, int steps,
                            StepOrder order = StepOrder::interaction_first) {
  const auto exact = exact_evolve(psi0, build_hamiltonian(p), t);
  const auto digital = trotter_evolve(psi0, p, t, steps, order);
  return std::max(0.0, 1.0 - fidelity(exact, digital));
}

}  // namespace agassi

#pragma once

// Agassi two-level pairing-plus-monopole Hamiltonian on 4j qubits.

#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "agassi/errors.hpp"
#include "agassi/pauli.hpp"

namespace agassi {

struct ModelParams {
  double epsilon = 1.0;  // level splitting, sets the energy unit
  double g = 0.0;        // pairing strength
  double V = 0.0;        // monopole strength
  int j = 1;             // half-degeneracy, Omega = 2j

  std::size_t num_qubits() const { return static_cast<std::size_t>(4 * j); }

  /// Effective control parameter of the j = 1 interaction term.
  double control() const { return g + V; }

  void validate() const {
    if (j < 1) throw input_error("j must be >= 1, got " + std::to_string(j));
    if (4 * static_cast<std::size_t>(j) > kMaxQubits) throw capacity_error("j too large");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw input_error("epsilon must be positive and finite");
    if (!std::isfinite(g) || !std::isfinite(V)) throw input_error("g and V must be finite");
  }
};

/// Qubit index of the single-particle state (level, m), level in {+1, -1},
/// m in {+-1, ..., +-j}. The +1 level occupies qubits 1..2j and the -1 level
/// 2j+1..4j; within a level the time-reversed partners (m, -m) are adjacent,
/// ordered m = 1, -1, 2, -2, ... For j = 1 this is (1,1)->1, (1,-1)->2,
/// (-1,1)->3, (-1,-1)->4.
inline std::size_t mode_index(int level, int m, int j) {
  if (level != 1 && level != -1) throw input_error("level must be +1 or -1");
  if (m == 0 || std::abs(m) > j) throw input_error("magnetic quantum number out of range");
  const std::size_t base = level == 1 ? 0 : static_cast<std::size_t>(2 * j);
  return base + 2 * static_cast<std::size_t>(std::abs(m) - 1) + (m > 0 ? 1 : 2);
}

struct CollectiveOps {
  PauliSum j_plus;
  PauliSum j_zero;
  PauliSum j_minus;
  PauliSum a1_dag;   // A^dagger_{+1}
  PauliSum a1;
  PauliSum am1_dag;  // A^dagger_{-1}
  PauliSum am1;
  PauliSum number;
};

/// Quasi-spin, pair and number operators, each a sum of Jordan-Wigner images.
inline CollectiveOps build_collective_ops(int j) {
  ModelParams{1.0, 0.0, 0.0, j}.validate();
  const std::size_t n = 4 * static_cast<std::size_t>(j);
  CollectiveOps ops{PauliSum(n), PauliSum(n), PauliSum(n), PauliSum(n),
                    PauliSum(n), PauliSum(n), PauliSum(n), PauliSum(n)};

  for (int am = 1; am <= j; ++am) {
    for (int m : {am, -am}) {
      const auto up = mode_index(1, m, j);
      const auto down = mode_index(-1, m, j);
      ops.j_plus += jw_map({create(up), annihilate(down)}, n);
      const auto n_up = jw_map({create(up), annihilate(up)}, n);
      const auto n_down = jw_map({create(down), annihilate(down)}, n);
      ops.j_zero += 0.5 * (n_up - n_down);
      ops.number += n_up + n_down;
    }
    const auto p_up = mode_index(1, am, j);
    const auto p_up_bar = mode_index(1, -am, j);
    const auto p_down = mode_index(-1, am, j);
    const auto p_down_bar = mode_index(-1, -am, j);
    ops.a1_dag += jw_map({create(p_up), create(p_up_bar)}, n);
    ops.am1_dag += jw_map({create(p_down), create(p_down_bar)}, n);
  }
  ops.j_minus = ops.j_plus.adjoint();
  ops.a1 = ops.a1_dag.adjoint();
  ops.am1 = ops.am1_dag.adjoint();
  return ops;
}

/// Whether build_hamiltonian keeps the constant (identity) component.
/// Dropping it only changes the global phase of time evolution; the closed
/// j = 1 split form carries no identity term.
enum class IdentityTerm { drop, keep };

/// H = eps J0 - g sum_{s,s'} A^dag_s A_s' - (V/2) (J+^2 + J-^2).
inline PauliSum build_hamiltonian(const ModelParams& p, IdentityTerm identity = IdentityTerm::drop) {
  p.validate();
  const auto ops = build_collective_ops(p.j);
  const auto pairs_dag = ops.a1_dag + ops.am1_dag;
  const auto pairs = ops.a1 + ops.am1;
  PauliSum h = p.epsilon * ops.j_zero;
  h -= p.g * (pairs_dag * pairs);
  h -= (0.5 * p.V) * (ops.j_plus * ops.j_plus + ops.j_minus * ops.j_minus);
  h.prune();
  if (identity == IdentityTerm::drop) h = h.traceless();
  return h;
}

struct InteractionString {
  std::string_view letters;
  int sign;  // sign inside the bracket multiplying -(g+V)/8
};

/// The eight four-body strings of the j = 1 interaction term, in listing order.
inline constexpr std::array<InteractionString, 8> kInteractionStrings{{
    {"XXXX", +1},
    {"XYXY", +1},
    {"XYYX", +1},
    {"YXXY", +1},
    {"YXYX", +1},
    {"YYYY", +1},
    {"YYXX", -1},
    {"XXYY", -1},
}};

struct SplitHamiltonian {
  PauliSum h1;  // single-Z terms
  PauliSum h2;  // ZZ pair terms
  PauliSum h3;  // four-body pair transfer

  PauliSum total() const { return h1 + h2 + h3; }
  PauliSum diagonal() const { return h1 + h2; }
};

/// Closed form for j = 1, coded independently of the Jordan-Wigner path.
inline SplitHamiltonian build_split_j1(const ModelParams& p) {
  p.validate();
  if (p.j != 1) throw unsupported_error("closed split form exists only for j = 1");
  constexpr std::size_t n = 4;
  SplitHamiltonian s{PauliSum(n), PauliSum(n), PauliSum(n)};

  const double upper = (p.epsilon - p.g) / 4.0;
  const double lower = -(p.epsilon + p.g) / 4.0;
  s.h1.add(PauliString::from_letters("ZIII", upper));
  s.h1.add(PauliString::from_letters("IZII", upper));
  s.h1.add(PauliString::from_letters("IIZI", lower));
  s.h1.add(PauliString::from_letters("IIIZ", lower));

  s.h2.add(PauliString::from_letters("ZZII", -p.g / 4.0));
  s.h2.add(PauliString::from_letters("IIZZ", -p.g / 4.0));

  const double scale = -(p.g + p.V) / 8.0;
  for (const auto& term : kInteractionStrings) {
    s.h3.add(PauliString::from_letters(term.letters, scale * term.sign));
  }
  return s;
}

/// h3 in its ladder-operator form -(g+V)(s1+ s2+ s3- s4- + h.c.), expanded by
/// multiplying the sigma^+- sums. Used to cross-check the expanded strings.
inline PauliSum h3_ladder_form(const ModelParams& p) {
  constexpr std::size_t n = 4;
  auto ladder = [](std::size_t q, bool raise) {
    PauliSum s(PauliString::single(n, q, Pauli::X, 0.5));
    s.add(PauliString::single(n, q, Pauli::Y, raise ? complex(0.0, 0.5) : complex(0.0, -0.5)));
    return s;
  };
  const auto forward = ladder(1, true) * ladder(2, true) * ladder(3, false) * ladder(4, false);
  return -(p.g + p.V) * (forward + forward.adjoint());
}

enum class Phase { symmetric, broken_symmetry };

inline std::string_view to_string(Phase ph) { return ph == Phase::symmetric ? "SP" : "BSP"; }

/// j = 1 phase label from the critical line g + V = eps; the boundary is BSP.
inline Phase critical_line(const ModelParams& p) {
  p.validate();
  if (p.j != 1) throw unsupported_error("critical line is only known for j = 1");
  return (p.g + p.V) / p.epsilon < 1.0 ? Phase::symmetric : Phase::broken_symmetry;
}

}  // namespace agassi

#pragma once

// Compilation of j = 1 Trotter schedules to a trapped-ion gate set:
// single-qubit rotations and Molmer-Sorensen (MS) entangling gates.
//
// Gate definitions (angles in radians):
//   R(axis, a, q)   exp(-i (a/2) sigma^axis_q)
//   MS(a, axis, S)  exp(-i (a/4) (sum_{q in S} sigma^axis_q)^2)
//   PHASE(a)        multiplies the state by exp(+i a)
//
// Text format, one gate per line:
//   R <axis> <angle> <qubit>
//   MS <angle> <axis> <q1>,<q2>[,<q3>,...]
//   PHASE <angle>
// Text after '#' is a comment; a "# qubits <n> steps <k>" line carries the
// register size and Trotter step count.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "agassi/errors.hpp"
#include "agassi/pauli.hpp"
#include "agassi/statevector.hpp"
#include "agassi/trotter.hpp"

namespace agassi {

enum class Axis { x, y, z };

inline char to_char(Axis a) { return a == Axis::x ? 'x' : a == Axis::y ? 'y' : 'z'; }

inline Pauli to_pauli(Axis a) { return a == Axis::x ? Pauli::X : a == Axis::y ? Pauli::Y : Pauli::Z; }

inline Axis axis_from_string(std::string_view s) {
  if (s == "x" || s == "X") return Axis::x;
  if (s == "y" || s == "Y") return Axis::y;
  if (s == "z" || s == "Z") return Axis::z;
  throw input_error("invalid axis '" + std::string(s) + "'");
}

struct Rotation {
  Axis axis = Axis::z;
  double angle = 0.0;
  std::size_t qubit = 1;
};

struct MolmerSorensen {
  double angle = 0.0;
  Axis axis = Axis::x;
  std::vector<std::size_t> qubits;
};

struct GlobalPhase {
  double angle = 0.0;
};

using NativeGate = std::variant<Rotation, MolmerSorensen, GlobalPhase>;

struct GateSequence {
  std::size_t num_qubits = 4;
  int steps = 1;
  std::vector<NativeGate> gates;
};

struct GateTally {
  long single_qubit = 0;
  long two_qubit_equivalent = 0;  // native 2-qubit MS + (|S|-1) per collective MS
  long collective_ms = 0;         // MS gates on more than two ions

  bool operator==(const GateTally&) const = default;
};

struct GateCounts {
  GateTally total;
  GateTally per_trotter_step;
  int steps = 1;
};

inline GateCounts count_gates(const GateSequence& seq) {
  GateCounts c;
  c.steps = seq.steps;
  for (const auto& gate : seq.gates) {
    if (std::holds_alternative<Rotation>(gate)) {
      ++c.total.single_qubit;
    } else if (const auto* ms = std::get_if<MolmerSorensen>(&gate)) {
      const auto k = static_cast<long>(ms->qubits.size());
      if (k > 2) ++c.total.collective_ms;
      c.total.two_qubit_equivalent += k - 1;
    }
  }
  const long s = std::max(1, seq.steps);
  c.per_trotter_step = {c.total.single_qubit / s, c.total.two_qubit_equivalent / s,
                        c.total.collective_ms / s};
  return c;
}

namespace detail {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

class Emitter {
 public:
  explicit Emitter(std::vector<NativeGate>& out) : out_(out) {}

  void rotation(Axis axis, double angle, std::size_t q) { out_.push_back(Rotation{axis, angle, q}); }
  void ms(double angle, std::vector<std::size_t> qubits) {
    out_.push_back(MolmerSorensen{angle, Axis::x, std::move(qubits)});
  }
  void phase(double angle) { out_.push_back(GlobalPhase{angle}); }

  // exp(-i phi Z_a Z_b): rotate z -> x on both ions, one two-ion MS, rotate back.
  void zz(double phi, std::size_t a, std::size_t b) {
    rotation(Axis::y, kHalfPi, a);
    rotation(Axis::y, kHalfPi, b);
    ms(2.0 * phi, {a, b});
    phase(phi);
    rotation(Axis::y, -kHalfPi, a);
    rotation(Axis::y, -kHalfPi, b);
  }

  // exp(-i phi P) for a four-letter X/Y string. The collective MS sandwich
  // MS(pi/2) Rz_1(2 phi) MS(-pi/2) realizes exp(-i phi Y1 X2 X3 X4); z-rotations
  // map the string's letters onto that frame and back.
  void four_body(const PauliString& p, double phi) {
    if (p.num_qubits() != 4 || p.weight() != 4 || p.count(Pauli::Z) != 0) {
      throw compilation_error("unsupported interaction string " + p.letters());
    }
    std::vector<std::pair<std::size_t, double>> frame;  // (qubit, rotation angle)
    if (p.letter(1) == Pauli::X) frame.emplace_back(1, -kHalfPi);
    for (std::size_t q = 2; q <= 4; ++q) {
      if (p.letter(q) == Pauli::Y) frame.emplace_back(q, kHalfPi);
    }
    for (const auto& [q, a] : frame) rotation(Axis::z, -a, q);
    ms(-kHalfPi, {1, 2, 3, 4});
    rotation(Axis::z, 2.0 * phi * unit_sign(p), 1);
    ms(kHalfPi, {1, 2, 3, 4});
    for (const auto& [q, a] : frame) rotation(Axis::z, a, q);
  }

 private:
  std::vector<NativeGate>& out_;
};

inline void emit_diagonal(Emitter& em, const PauliSum& diag, double dt) {
  static const char* kSingles[] = {"ZIII", "IZII", "IIZI", "IIIZ"};
  static const char* kPairs[] = {"ZZII", "IIZZ"};
  std::size_t seen = 0;
  for (std::size_t q = 0; q < 4; ++q) {
    const auto c = diag.coefficient(kSingles[q]);
    seen += c != complex{} ? 1 : 0;
    em.rotation(Axis::z, 2.0 * c.real() * dt, q + 1);
  }
  for (std::size_t k = 0; k < 2; ++k) {
    const auto c = diag.coefficient(kPairs[k]);
    seen += c != complex{} ? 1 : 0;
    em.zz(c.real() * dt, 2 * k + 1, 2 * k + 2);
  }
  if (seen != diag.size()) {
    throw compilation_error("diagonal block has terms outside single-Z and (12),(34) ZZ pairs");
  }
}

}  // namespace detail

/// Native-gate program whose unitary equals the schedule's Trotter product.
inline GateSequence compile_schedule(const TrotterSchedule& s) {
  if (s.diagonal_block.num_qubits() != 4) throw compilation_error("compiler handles 4-qubit (j = 1) schedules");
  if (!s.diagonal_block.is_hermitian()) throw compilation_error("diagonal block is not Hermitian");
  GateSequence seq;
  seq.num_qubits = 4;
  seq.steps = s.steps;
  detail::Emitter em(seq.gates);
  const double dt = s.step_size();

  auto interaction = [&] {
    for (const auto& term : s.interaction_layer) em.four_body(term.string, term.angle(dt));
  };
  for (int k = 0; k < s.steps; ++k) {
    if (s.order == StepOrder::diagonal_first) {
      detail::emit_diagonal(em, s.diagonal_block, dt);
      interaction();
    } else {
      interaction();
      detail::emit_diagonal(em, s.diagonal_block, dt);
    }
  }
  return seq;
}

inline void apply_gate(StateVector& psi, const NativeGate& gate) {
  const std::size_t n = psi.num_qubits();
  auto check = [n](std::size_t q) {
    if (q < 1 || q > n) throw input_error("gate qubit " + std::to_string(q) + " outside 1.." + std::to_string(n));
  };
  if (const auto* r = std::get_if<Rotation>(&gate)) {
    check(r->qubit);
    apply_pauli_exponential_inplace(psi, PauliString::single(n, r->qubit, to_pauli(r->axis)), r->angle / 2.0);
  } else if (const auto* ms = std::get_if<MolmerSorensen>(&gate)) {
    if (ms->qubits.size() < 2) throw input_error("MS gate needs at least two qubits");
    for (auto q : ms->qubits) check(q);
    // (sum s)^2 = |S| + 2 sum_{a<b} s_a s_b, and all pair terms commute.
    const auto letter = to_pauli(ms->axis);
    for (std::size_t a = 0; a < ms->qubits.size(); ++a) {
      for (std::size_t b = a + 1; b < ms->qubits.size(); ++b) {
        if (ms->qubits[a] == ms->qubits[b]) throw input_error("MS gate repeats a qubit");
        PauliString pair(n);
        pair.set(ms->qubits[a], letter);
        pair.set(ms->qubits[b], letter);
        apply_pauli_exponential_inplace(psi, pair, ms->angle / 2.0);
      }
    }
    const auto phase = std::polar(1.0, -ms->angle * static_cast<double>(ms->qubits.size()) / 4.0);
    for (auto& amp : psi.amplitudes()) amp *= phase;
  } else {
    const auto phase = std::polar(1.0, std::get<GlobalPhase>(gate).angle);
    for (auto& amp : psi.amplitudes()) amp *= phase;
  }
}

inline StateVector simulate_sequence(const StateVector& psi0, const GateSequence& seq) {
  StateVector psi = psi0;
  for (const auto& gate : seq.gates) apply_gate(psi, gate);
  return psi;
}

struct ErrorBudget {
  double e1 = 0.0;
  double e2 = 0.0;
  int steps = 1;
  GateTally per_step;
  double total = 0.0;

  /// 1 - total, when the linear estimate is still below one.
  std::optional<double> projected_fidelity() const {
    if (total < 1.0) return 1.0 - total;
    return std::nullopt;
  }
};

/// steps * (single-qubit gates per step * e1 + two-qubit-equivalent gates per step * e2).
inline ErrorBudget error_budget(const GateTally& per_step, double e1, double e2, int steps) {
  if (!(e1 >= 0.0 && e1 <= 1.0) || !(e2 >= 0.0 && e2 <= 1.0)) {
    throw input_error("gate error rates must lie in [0, 1]");
  }
  if (steps < 1) throw input_error("number of Trotter steps must be >= 1");
  ErrorBudget b{e1, e2, steps, per_step, 0.0};
  b.total = steps * (static_cast<double>(per_step.single_qubit) * e1 +
                     static_cast<double>(per_step.two_qubit_equivalent) * e2);
  return b;
}

inline ErrorBudget error_budget(const GateCounts& counts, double e1, double e2, int steps) {
  return error_budget(counts.per_trotter_step, e1, e2, steps);
}

// ---------------------------------------------------------------------------
// Text serialization

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw input_error("line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

inline std::size_t parse_qubit(std::string_view s, std::size_t line) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || v == 0) {
    throw input_error("line " + std::to_string(line) + ": bad qubit '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace detail

inline std::string to_text(const GateSequence& seq) {
  std::ostringstream os;
  os << "# qubits " << seq.num_qubits << " steps " << seq.steps << '\n';
  for (const auto& gate : seq.gates) {
    if (const auto* r = std::get_if<Rotation>(&gate)) {
      os << "R " << to_char(r->axis) << ' ' << detail::format_double(r->angle) << ' ' << r->qubit << '\n';
    } else if (const auto* ms = std::get_if<MolmerSorensen>(&gate)) {
      os << "MS " << detail::format_double(ms->angle) << ' ' << to_char(ms->axis) << ' ';
      for (std::size_t k = 0; k < ms->qubits.size(); ++k) os << (k ? "," : "") << ms->qubits[k];
      os << '\n';
    } else {
      os << "PHASE " << detail::format_double(std::get<GlobalPhase>(gate).angle) << '\n';
    }
  }
  return os.str();
}

inline GateSequence parse_gate_program(std::string_view text) {
  GateSequence seq;
  std::size_t max_qubit = 0;
  bool sized = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0].starts_with('#')) {
      if (tok.size() == 5 && tok[1] == "qubits" && tok[3] == "steps") {
        seq.num_qubits = detail::parse_qubit(tok[2], line_no);
        seq.steps = static_cast<int>(detail::parse_qubit(tok[4], line_no));
        sized = true;
      }
      continue;
    }
    if (const auto hash = std::find_if(tok.begin(), tok.end(), [](const std::string& t) { return t.starts_with('#'); });
        hash != tok.end()) {
      tok.erase(hash, tok.end());  // trailing comment
    }
    if (tok[0] == "R" && tok.size() == 4) {
      Rotation r{axis_from_string(tok[1]), detail::parse_double(tok[2], line_no),
                 detail::parse_qubit(tok[3], line_no)};
      max_qubit = std::max(max_qubit, r.qubit);
      seq.gates.emplace_back(r);
    } else if (tok[0] == "MS" && tok.size() == 4) {
      MolmerSorensen ms{detail::parse_double(tok[1], line_no), axis_from_string(tok[2]), {}};
      std::string_view list = tok[3];
      while (!list.empty()) {
        const auto comma = list.find(',');
        ms.qubits.push_back(detail::parse_qubit(list.substr(0, comma), line_no));
        max_qubit = std::max(max_qubit, ms.qubits.back());
        list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
      }
      if (ms.qubits.size() < 2) throw input_error("line " + std::to_string(line_no) + ": MS needs >= 2 qubits");
      seq.gates.emplace_back(std::move(ms));
    } else if (tok[0] == "PHASE" && tok.size() == 2) {
      seq.gates.emplace_back(GlobalPhase{detail::parse_double(tok[1], line_no)});
    } else {
      throw input_error("line " + std::to_string(line_no) + ": unrecognized gate '" + raw + "'");
    }
  }
  if (!sized) seq.num_qubits = std::max<std::size_t>(max_qubit, 1);
  if (max_qubit > seq.num_qubits) throw input_error("gate qubit exceeds declared register size");
  return seq;
}

}  // namespace agassi

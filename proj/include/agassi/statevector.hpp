#pragma once

// Dense state vectors, Pauli-string application and exact propagation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Eigenvalues>

#include "agassi/errors.hpp"
#include "agassi/pauli.hpp"

namespace agassi {

/// Unitarity and hermiticity checks.
inline constexpr double kUnitaryTol = 1e-10;

class StateVector {
 public:
  StateVector() = default;

  /// |down ... down>, i.e. basis index 0.
  explicit StateVector(std::size_t num_qubits) : n_(num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxDenseQubits) {
      throw capacity_error("state vectors limited to 1.." + std::to_string(kMaxDenseQubits) +
                           " qubits");
    }
    amp_.assign(std::size_t{1} << num_qubits, complex{});
    amp_[0] = 1.0;
  }

  StateVector(std::size_t num_qubits, std::vector<complex> amplitudes)
      : n_(num_qubits), amp_(std::move(amplitudes)) {
    if (num_qubits == 0 || num_qubits > kMaxDenseQubits || amp_.size() != (std::size_t{1} << n_)) {
      throw input_error("amplitude count does not match 2^n");
    }
  }

  std::size_t num_qubits() const { return n_; }
  std::size_t dimension() const { return amp_.size(); }

  complex& operator[](std::size_t i) { return amp_[i]; }
  const complex& operator[](std::size_t i) const { return amp_[i]; }

  std::span<complex> amplitudes() { return amp_; }
  std::span<const complex> amplitudes() const { return amp_; }

  double norm() const {
    double s = 0.0;
    for (const auto& a : amp_) s += std::norm(a);
    return std::sqrt(s);
  }

  void normalize() {
    const double nrm = norm();
    if (nrm == 0.0) throw input_error("cannot normalize the zero vector");
    for (auto& a : amp_) a /= nrm;
  }

  double probability(std::size_t index) const { return std::norm(amp_.at(index)); }

  void check_same_size(const StateVector& other) const {
    if (n_ != other.n_) {
      throw input_error("state size mismatch: " + std::to_string(n_) + " vs " +
                        std::to_string(other.n_) + " qubits");
    }
  }

 private:
  std::size_t n_ = 0;
  std::vector<complex> amp_;
};

namespace detail {

// Splits a UTF-8 pattern into spin labels. Accepts u/U/1/+ and the up arrow
// for spin up, d/D/0/- and the down arrow for spin down.
inline std::vector<int> parse_spin_pattern(std::string_view pattern) {
  std::vector<int> bits;
  for (std::size_t i = 0; i < pattern.size();) {
    const auto c = static_cast<unsigned char>(pattern[i]);
    if (c == 0xE2 && i + 2 < pattern.size() && static_cast<unsigned char>(pattern[i + 1]) == 0x86) {
      const auto last = static_cast<unsigned char>(pattern[i + 2]);
      if (last == 0x91) bits.push_back(1);       // U+2191
      else if (last == 0x93) bits.push_back(0);  // U+2193
      else throw input_error("invalid spin label in '" + std::string(pattern) + "'");
      i += 3;
      continue;
    }
    switch (c) {
      case 'u': case 'U': case '1': case '+': bits.push_back(1); break;
      case 'd': case 'D': case '0': case '-': bits.push_back(0); break;
      case ' ': case '_': case ',': break;
      default:
        throw input_error("invalid spin label '" + std::string(1, static_cast<char>(c)) + "' in '" +
                          std::string(pattern) + "'");
    }
    ++i;
  }
  if (bits.empty()) throw input_error("empty spin pattern");
  return bits;
}

}  // namespace detail

/// Basis index of a spin pattern such as "ddUU" or the arrow form; the first
/// label is qubit 1 and lands on the most significant bit, up = 1.
inline std::uint64_t basis_index(std::string_view pattern) {
  std::uint64_t index = 0;
  for (int b : detail::parse_spin_pattern(pattern)) index = (index << 1) | static_cast<std::uint64_t>(b);
  return index;
}

inline StateVector basis_state(std::string_view pattern) {
  const auto bits = detail::parse_spin_pattern(pattern);
  StateVector psi(bits.size());
  psi[0] = 0.0;
  psi[basis_index(pattern)] = 1.0;
  return psi;
}

inline complex inner(const StateVector& a, const StateVector& b) {
  a.check_same_size(b);
  complex s{};
  for (std::size_t i = 0; i < a.dimension(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

/// |<a|b>|^2, symmetric in its arguments.
inline double fidelity(const StateVector& a, const StateVector& b) {
  return std::min(1.0, std::norm(inner(a, b)));
}

namespace detail {

inline void check_operator_size(const StateVector& psi, std::size_t n) {
  if (psi.num_qubits() != n) {
    throw input_error("operator acts on " + std::to_string(n) + " qubits, state has " +
                      std::to_string(psi.num_qubits()));
  }
}

}  // namespace detail

/// Returns P|psi>, coefficient included.
inline StateVector apply_pauli_string(const StateVector& psi, const PauliString& p) {
  detail::check_operator_size(psi, p.num_qubits());
  StateVector out = psi;
  for (std::uint64_t i = 0; i < psi.dimension(); ++i) {
    out[i ^ p.x_mask()] = p.coefficient() * p.phase_on(i) * psi[i];
  }
  return out;
}

inline StateVector apply(const StateVector& psi, const PauliSum& op) {
  detail::check_operator_size(psi, op.num_qubits());
  StateVector out = psi;
  for (auto& a : out.amplitudes()) a = 0.0;
  op.for_each([&](const PauliString& p) {
    for (std::uint64_t i = 0; i < psi.dimension(); ++i) {
      out[i ^ p.x_mask()] += p.coefficient() * p.phase_on(i) * psi[i];
    }
  });
  return out;
}

/// Sign (+1 or -1) of a real unit coefficient; anything else is rejected.
inline double unit_sign(const PauliString& p) {
  const complex c = p.coefficient();
  if (std::abs(c.imag()) > kUnitaryTol || std::abs(std::abs(c.real()) - 1.0) > kUnitaryTol) {
    throw input_error("Pauli exponential needs a real unit coefficient, got (" +
                      std::to_string(c.real()) + "," + std::to_string(c.imag()) + ")");
  }
  return c.real() > 0.0 ? 1.0 : -1.0;
}

/// In place psi <- exp(-i theta P) psi = cos(theta) psi - i sin(theta) P psi.
/// A coefficient of -1 on P flips the sign of theta.
inline void apply_pauli_exponential_inplace(StateVector& psi, const PauliString& p, double theta) {
  detail::check_operator_size(psi, p.num_qubits());
  const double angle = unit_sign(p) * theta;
  const double c = std::cos(angle);
  const complex minus_i_s(0.0, -std::sin(angle));
  const auto flip = p.x_mask();
  if (flip == 0) {
    for (std::uint64_t i = 0; i < psi.dimension(); ++i) psi[i] *= c + minus_i_s * p.phase_on(i);
    return;
  }
  // Pairs (i, i ^ flip) mix only with each other.
  for (std::uint64_t i = 0; i < psi.dimension(); ++i) {
    const auto k = i ^ flip;
    if (k < i) continue;
    const complex a = psi[i];
    const complex b = psi[k];
    psi[i] = c * a + minus_i_s * p.phase_on(k) * b;
    psi[k] = c * b + minus_i_s * p.phase_on(i) * a;
  }
}

inline StateVector apply_pauli_exponential(const StateVector& psi, const PauliString& p, double theta) {
  StateVector out = psi;
  apply_pauli_exponential_inplace(out, p, theta);
  return out;
}

/// Per-index energies of an all-Z (diagonal) sum.
inline std::vector<double> diagonal_energies(const PauliSum& h) {
  if (!h.is_hermitian()) throw input_error("diagonal block must be Hermitian");
  const std::uint64_t dim = std::uint64_t{1} << h.num_qubits();
  std::vector<double> e(dim, 0.0);
  h.for_each([&](const PauliString& p) {
    if (!p.is_diagonal()) throw input_error("diagonal block contains off-diagonal string " + p.letters());
    for (std::uint64_t i = 0; i < dim; ++i) e[i] += (p.coefficient() * p.phase_on(i)).real();
  });
  return e;
}

/// psi_i <- exp(-i E_i dt) psi_i.
inline void apply_diagonal_phases(StateVector& psi, std::span<const double> energies, double dt) {
  if (energies.size() != psi.dimension()) throw input_error("energy table size mismatch");
  for (std::size_t i = 0; i < energies.size(); ++i) psi[i] *= std::polar(1.0, -energies[i] * dt);
}

/// <psi|O|psi> for Hermitian O.
inline double expectation(const StateVector& psi, const PauliSum& op) {
  if (!op.is_hermitian()) throw input_error("expectation needs a Hermitian observable");
  const complex v = inner(psi, apply(psi, op));
  return v.real();
}

/// exp(-iHt) through one Hermitian eigendecomposition, reusable for many t.
class ExactPropagator {
 public:
  explicit ExactPropagator(const PauliSum& h) : n_(h.num_qubits()) {
    if (h.num_qubits() > kMaxDenseQubits) {
      throw capacity_error("exact evolution limited to " + std::to_string(kMaxDenseQubits) + " qubits");
    }
    if (!h.is_hermitian(kUnitaryTol)) throw input_error("exact evolution needs a Hermitian Hamiltonian");
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(to_matrix(h));
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    energies_ = solver.eigenvalues();
    vectors_ = solver.eigenvectors();
  }

  std::size_t num_qubits() const { return n_; }
  const Eigen::VectorXd& eigenvalues() const { return energies_; }

  StateVector evolve(const StateVector& psi0, double t) const {
    detail::check_operator_size(psi0, n_);
    const auto dim = static_cast<Eigen::Index>(psi0.dimension());
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = psi0[static_cast<std::size_t>(i)];
    Eigen::VectorXcd coeffs = vectors_.adjoint() * v;
    for (Eigen::Index k = 0; k < dim; ++k) coeffs(k) *= std::polar(1.0, -energies_(k) * t);
    v = vectors_ * coeffs;
    std::vector<complex> amps(v.data(), v.data() + dim);
    return StateVector(n_, std::move(amps));
  }

 private:
  std::size_t n_;
  Eigen::VectorXd energies_;
  DenseMatrix vectors_;
};

inline StateVector exact_evolve(const StateVector& psi0, const PauliSum& h, double t) {
  return ExactPropagator(h).evolve(psi0, t);
}

/// Sampled real observable; times strictly increasing.
struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;

  void push_back(double t, double v) {
    if (!times.empty() && !(t > times.back())) throw input_error("time samples must be strictly increasing");
    times.push_back(t);
    values.push_back(v);
  }

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
};

}  // namespace agassi

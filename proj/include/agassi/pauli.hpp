#pragma once

// Pauli strings, sums of Pauli strings, and the Jordan-Wigner map.
//
// Qubits are labelled 1..n. Qubit 1 is the leftmost tensor factor and the
// most significant bit of a basis index. Bit value 1 is spin up (Z = +1),
// bit value 0 is spin down (Z = -1). In this ordering the single-qubit
// matrices are
//
//   X = [[0, 1], [1, 0]]   Y = [[0, i], [-i, 0]]   Z = diag(-1, +1)
//
// with rows/columns indexed (down, up). They obey XY = iZ and the usual
// cyclic relations, and sigma^+ = (X + iY)/2 = |up><down|.

#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "agassi/errors.hpp"

namespace agassi {

using complex = std::complex<double>;

/// Coefficients below this magnitude are dropped from a PauliSum.
inline constexpr double kPruneThreshold = 1e-14;

/// Largest qubit count a PauliString can hold.
inline constexpr std::size_t kMaxQubits = 64;

/// Largest qubit count accepted by to_matrix().
inline constexpr std::size_t kMaxDenseQubits = 12;

/// Encoded as (z << 1) | x.
enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline char to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

inline Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default: break;
  }
  throw input_error(std::string("invalid Pauli letter '") + c + "'");
}

/// Product of two single-site letters: a * b = phase * result.
inline std::pair<complex, Pauli> multiply_letters(Pauli a, Pauli b) {
  const auto ua = static_cast<std::uint8_t>(a);
  const auto ub = static_cast<std::uint8_t>(b);
  const auto result = static_cast<Pauli>(ua ^ ub);
  if (a == Pauli::I || b == Pauli::I || a == b) return {complex(1.0, 0.0), result};
  // cyclic order X -> Y -> Z -> X gives +i
  const bool cyclic = (a == Pauli::X && b == Pauli::Y) || (a == Pauli::Y && b == Pauli::Z) ||
                      (a == Pauli::Z && b == Pauli::X);
  return {cyclic ? complex(0.0, 1.0) : complex(0.0, -1.0), result};
}

/// Weighted tensor product of single-site Pauli letters.
///
/// Letters are stored as x/z bit masks aligned with basis indices: qubit q
/// occupies bit (n - q).
class PauliString {
 public:
  PauliString() = default;

  explicit PauliString(std::size_t num_qubits, complex coefficient = 1.0)
      : n_(num_qubits), coeff_(coefficient) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
      throw input_error("PauliString qubit count must be in 1.." + std::to_string(kMaxQubits));
    }
  }

  /// Parses a letter sequence such as "XIZY"; the first letter acts on qubit 1.
  static PauliString from_letters(std::string_view letters, complex coefficient = 1.0) {
    PauliString s(letters.size(), coefficient);
    for (std::size_t q = 1; q <= letters.size(); ++q) s.set(q, pauli_from_char(letters[q - 1]));
    return s;
  }

  /// Single letter `p` on qubit `q`, identity elsewhere.
  static PauliString single(std::size_t num_qubits, std::size_t q, Pauli p,
                            complex coefficient = 1.0) {
    PauliString s(num_qubits, coefficient);
    s.set(q, p);
    return s;
  }

  std::size_t num_qubits() const { return n_; }
  complex coefficient() const { return coeff_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }

  std::uint64_t bit(std::size_t q) const {
    check_qubit(q);
    return std::uint64_t{1} << (n_ - q);
  }

  Pauli letter(std::size_t q) const {
    const auto b = bit(q);
    return static_cast<Pauli>(((z_ & b) ? 2 : 0) | ((x_ & b) ? 1 : 0));
  }

  void set(std::size_t q, Pauli p) {
    const auto b = bit(q);
    const auto code = static_cast<std::uint8_t>(p);
    x_ = (code & 1) ? (x_ | b) : (x_ & ~b);
    z_ = (code & 2) ? (z_ | b) : (z_ & ~b);
  }

  PauliString with_coefficient(complex c) const {
    PauliString s = *this;
    s.coeff_ = c;
    return s;
  }

  /// Number of non-identity letters.
  int weight() const { return std::popcount(x_ | z_); }

  int count(Pauli p) const {
    int k = 0;
    for (std::size_t q = 1; q <= n_; ++q) k += letter(q) == p ? 1 : 0;
    return k;
  }

  bool is_identity() const { return (x_ | z_) == 0; }

  /// True when every letter is I or Z.
  bool is_diagonal() const { return x_ == 0; }

  /// Letters only, coefficient ignored.
  std::string letters() const {
    std::string out;
    out.reserve(n_);
    for (std::size_t q = 1; q <= n_; ++q) out.push_back(to_char(letter(q)));
    return out;
  }

  bool commutes_with(const PauliString& other) const {
    check_same_size(other);
    const int anti = std::popcount((x_ & other.z_) ^ (z_ & other.x_));
    return anti % 2 == 0;
  }

  bool same_letters(const PauliString& other) const {
    return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
  }

  std::pair<std::uint64_t, std::uint64_t> key() const { return {x_, z_}; }

  /// Action on a basis index: P|index> = phase * |index ^ x_mask>.
  complex phase_on(std::uint64_t index) const {
    static constexpr complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const int y_count = std::popcount(x_ & z_);
    const int down_hits = std::popcount(z_ & ~index);
    return kIPow[(y_count + 2 * down_hits) % 4];
  }

  void check_same_size(const PauliString& other) const {
    if (n_ != other.n_) {
      throw input_error("qubit count mismatch: " + std::to_string(n_) + " vs " +
                        std::to_string(other.n_));
    }
  }

 private:
  void check_qubit(std::size_t q) const {
    if (q < 1 || q > n_) {
      throw input_error("qubit index " + std::to_string(q) + " outside 1.." + std::to_string(n_));
    }
  }

  std::size_t n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  complex coeff_{1.0, 0.0};
};

/// Sitewise product with accumulated phase.
inline PauliString multiply(const PauliString& a, const PauliString& b) {
  a.check_same_size(b);
  PauliString out(a.num_qubits());
  complex phase = a.coefficient() * b.coefficient();
  for (std::size_t q = 1; q <= a.num_qubits(); ++q) {
    const auto [ph, p] = multiply_letters(a.letter(q), b.letter(q));
    phase *= ph;
    out.set(q, p);
  }
  return out.with_coefficient(phase);
}

inline PauliString operator*(const PauliString& a, const PauliString& b) { return multiply(a, b); }

/// Sum of Pauli strings over a common qubit count, kept in canonical form:
/// one entry per letter sequence, entries below kPruneThreshold removed.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(std::size_t num_qubits) : n_(num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
      throw input_error("PauliSum qubit count must be in 1.." + std::to_string(kMaxQubits));
    }
  }
  PauliSum(const PauliString& s) : PauliSum(s.num_qubits()) { add(s); }  // NOLINT

  static PauliSum identity(std::size_t num_qubits, complex c = 1.0) {
    return PauliSum(PauliString(num_qubits, c));
  }

  std::size_t num_qubits() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  void add(const PauliString& s) {
    check_size(s.num_qubits());
    auto [it, inserted] = terms_.try_emplace(s.key(), s.coefficient());
    if (!inserted) it->second += s.coefficient();
    if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
  }

  /// Coefficient of the given letter sequence (zero when absent).
  complex coefficient(const PauliString& letters) const {
    const auto it = terms_.find(letters.key());
    return it == terms_.end() ? complex{} : it->second;
  }
  complex coefficient(std::string_view letters) const {
    return coefficient(PauliString::from_letters(letters));
  }

  std::vector<PauliString> terms() const {
    std::vector<PauliString> out;
    out.reserve(terms_.size());
    for (const auto& [key, c] : terms_) out.push_back(make_string(key, c));
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (const auto& [key, c] : terms_) f(make_string(key, c));
  }

  /// Drops entries with |coefficient| < threshold.
  PauliSum& prune(double threshold = kPruneThreshold) {
    std::erase_if(terms_, [threshold](const auto& kv) { return std::abs(kv.second) < threshold; });
    return *this;
  }

  PauliSum adjoint() const {
    PauliSum out(n_);
    for (const auto& [key, c] : terms_) out.terms_.emplace(key, std::conj(c));
    return out;
  }

  /// Pauli strings are Hermitian, so the sum is iff every coefficient is real.
  bool is_hermitian(double tol = 1e-10) const {
    for (const auto& [key, c] : terms_) {
      if (std::abs(c.imag()) > tol) return false;
    }
    return true;
  }

  /// Identity-free part (the trace-zero component of the operator).
  PauliSum traceless() const {
    PauliSum out = *this;
    out.terms_.erase({0, 0});
    return out;
  }

  double max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& [key, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

  PauliSum& operator+=(const PauliSum& o) {
    check_size(o.n_);
    for (const auto& [key, c] : o.terms_) add(make_string(key, c));
    return *this;
  }
  PauliSum& operator-=(const PauliSum& o) {
    check_size(o.n_);
    for (const auto& [key, c] : o.terms_) add(make_string(key, -c));
    return *this;
  }
  PauliSum& operator*=(complex s) {
    for (auto& [key, c] : terms_) c *= s;
    return prune();
  }

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, complex s) { return a *= s; }
  friend PauliSum operator*(complex s, PauliSum a) { return a *= s; }
  friend PauliSum operator*(double s, PauliSum a) { return a *= complex(s, 0.0); }
  friend PauliSum operator-(PauliSum a) { return a *= complex(-1.0, 0.0); }

  friend PauliSum operator*(const PauliSum& a, const PauliSum& b) {
    a.check_size(b.n_);
    PauliSum out(a.n_);
    for (const auto& [ka, ca] : a.terms_) {
      const PauliString sa = make_string(ka, ca, a.n_);
      for (const auto& [kb, cb] : b.terms_) out.add(multiply(sa, make_string(kb, cb, b.n_)));
    }
    return out.prune();
  }

  bool operator==(const PauliSum& o) const { return n_ == o.n_ && terms_ == o.terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [key, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + std::to_string(c.real()) + (c.imag() < 0 ? "-" : "+") +
             std::to_string(std::abs(c.imag())) + "i)" + make_string(key, 1.0).letters();
    }
    return out;
  }

 private:
  using Key = std::pair<std::uint64_t, std::uint64_t>;

  PauliString make_string(const Key& key, complex c) const { return make_string(key, c, n_); }

  static PauliString make_string(const Key& key, complex c, std::size_t n) {
    PauliString s(n, c);
    for (std::size_t q = 1; q <= n; ++q) {
      const auto b = std::uint64_t{1} << (n - q);
      const int code = ((key.second & b) ? 2 : 0) | ((key.first & b) ? 1 : 0);
      s.set(q, static_cast<Pauli>(code));
    }
    return s;
  }

  void check_size(std::size_t n) const {
    if (n != n_) {
      throw input_error("qubit count mismatch: " + std::to_string(n_) + " vs " + std::to_string(n));
    }
  }

  std::size_t n_ = 0;
  std::map<Key, complex> terms_;
};

/// ab - ba in canonical form.
inline PauliSum commutator(const PauliSum& a, const PauliSum& b) { return (a * b - b * a).prune(); }

inline PauliSum anticommutator(const PauliSum& a, const PauliSum& b) {
  return (a * b + b * a).prune();
}

/// Coefficientwise comparison of two sums within `tol`.
inline bool approx_equal(const PauliSum& a, const PauliSum& b, double tol = 1e-12) {
  if (a.num_qubits() != b.num_qubits()) return false;
  return (a - b).prune(tol).empty();
}

using DenseMatrix = Eigen::MatrixXcd;

/// Dense 2^n x 2^n matrix of the sum in the basis-index ordering above.
inline DenseMatrix to_matrix(const PauliSum& s) {
  if (s.num_qubits() > kMaxDenseQubits) {
    throw capacity_error("to_matrix limited to " + std::to_string(kMaxDenseQubits) + " qubits, got " +
                         std::to_string(s.num_qubits()));
  }
  const std::uint64_t dim = std::uint64_t{1} << s.num_qubits();
  DenseMatrix m = DenseMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  s.for_each([&](const PauliString& p) {
    for (std::uint64_t col = 0; col < dim; ++col) {
      const auto row = col ^ p.x_mask();
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) +=
          p.coefficient() * p.phase_on(col);
    }
  });
  return m;
}

// ---------------------------------------------------------------------------
// Fermions

struct FermionFactor {
  std::size_t mode = 1;  // 1-based
  bool dagger = false;
};

/// Ordered product of creation/annihilation operators; leftmost factor acts last.
struct FermionWord {
  std::vector<FermionFactor> factors;

  FermionWord() = default;
  FermionWord(std::initializer_list<FermionFactor> f) : factors(f) {}

  std::size_t max_mode() const {
    std::size_t m = 0;
    for (const auto& f : factors) m = std::max(m, f.mode);
    return m;
  }
};

inline FermionFactor create(std::size_t mode) { return {mode, true}; }
inline FermionFactor annihilate(std::size_t mode) { return {mode, false}; }

namespace detail {

// c_i -> sigma^-_i Z_{i+1} ... Z_n, with sigma^-/+ = (X -/+ iY)/2.
inline PauliSum jw_image(const FermionFactor& f, std::size_t n) {
  if (f.mode < 1 || f.mode > n) {
    throw input_error("fermion mode " + std::to_string(f.mode) + " outside 1.." + std::to_string(n));
  }
  PauliString xs(n, 0.5);
  PauliString ys(n, f.dagger ? complex(0.0, 0.5) : complex(0.0, -0.5));
  xs.set(f.mode, Pauli::X);
  ys.set(f.mode, Pauli::Y);
  for (std::size_t q = f.mode + 1; q <= n; ++q) {
    xs.set(q, Pauli::Z);
    ys.set(q, Pauli::Z);
  }
  PauliSum out(xs);
  out.add(ys);
  return out;
}

}  // namespace detail

/// Jordan-Wigner image of a fermion word on n qubits (trailing Z-strings).
inline PauliSum jw_map(const FermionWord& w, std::size_t n) {
  if (w.max_mode() > n) {
    throw input_error("fermion mode " + std::to_string(w.max_mode()) + " exceeds qubit count " +
                      std::to_string(n));
  }
  PauliSum out = PauliSum::identity(n);
  for (const auto& f : w.factors) out = out * detail::jw_image(f, n);
  return out;
}

}  // namespace agassi

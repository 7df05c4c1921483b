#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "agassi/model.hpp"
#include "agassi/statevector.hpp"
#include "oracles.hpp"

using namespace agassi;
using oracle::cd;

namespace {

oracle::Vec to_eigen(const StateVector& psi) {
  oracle::Vec v(static_cast<Eigen::Index>(psi.dimension()));
  for (std::size_t i = 0; i < psi.dimension(); ++i) v(static_cast<Eigen::Index>(i)) = psi[i];
  return v;
}

StateVector random_state(std::mt19937& rng, std::size_t n) {
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<complex> amps(std::size_t{1} << n);
  for (auto& a : amps) a = {d(rng), d(rng)};
  StateVector psi(n, amps);
  psi.normalize();
  return psi;
}

double max_diff(const StateVector& a, const StateVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(BasisState, SingleUpSpinIsIndexOne) {
  const auto up = basis_state("U");
  EXPECT_EQ(up[0], cd(0, 0));
  EXPECT_EQ(up[1], cd(1, 0));
  EXPECT_EQ(basis_state("d")[0], cd(1, 0));
}

TEST(BasisState, ReferenceStateIndex) {
  const auto psi = basis_state("ddUU");
  EXPECT_EQ(basis_index("ddUU"), 3u);
  EXPECT_EQ(basis_index("UUdd"), 12u);
  EXPECT_EQ(basis_index("↓↓↑↑"), 3u);
  EXPECT_EQ(basis_index("0011"), 3u);
  EXPECT_EQ(basis_index("d d_U,U"), 3u);
  int nonzero = 0;
  for (std::size_t i = 0; i < psi.dimension(); ++i) nonzero += psi[i] != cd(0, 0);
  EXPECT_EQ(nonzero, 1);
  EXPECT_NEAR(psi.norm(), 1.0, 1e-15);
}

TEST(BasisState, BadLabels) {
  EXPECT_THROW(basis_state("ddxU"), input_error);
  EXPECT_THROW(basis_state(""), input_error);
  EXPECT_THROW(basis_state("ddddddddddddd"), capacity_error);
}

TEST(Expectation, ReferenceStateValues) {
  const auto psi = basis_state("ddUU");
  EXPECT_NEAR(expectation(psi, PauliSum(PauliString::from_letters("ZIII"))), -1.0, 1e-15);
  EXPECT_NEAR(expectation(psi, PauliSum(PauliString::from_letters("ZZII"))), 1.0, 1e-15);
  EXPECT_NEAR(expectation(psi, PauliSum(PauliString::from_letters("XIII"))), 0.0, 1e-15);
  EXPECT_NEAR(expectation(psi, build_hamiltonian({1, 1, 1, 1})), -1.5, 1e-12);
  const oracle::Vec v = to_eigen(psi);
  EXPECT_NEAR((v.adjoint() * oracle::agassi_j1(1, 1, 1) * v)(0).real(), -1.5, 1e-12);
}

TEST(Expectation, MatchesDenseOnRandomStates) {
  std::mt19937 rng(1);
  const auto h = build_hamiltonian({1.0, 0.3, 0.9, 1});
  const auto m = oracle::agassi_j1(1.0, 0.3, 0.9);
  for (int k = 0; k < 10; ++k) {
    const auto psi = random_state(rng, 4);
    const oracle::Vec v = to_eigen(psi);
    EXPECT_NEAR(expectation(psi, h), (v.adjoint() * m * v)(0).real(), 1e-12);
  }
}

TEST(Expectation, RejectsNonHermitian) {
  PauliSum op(PauliString::from_letters("XI", cd(0, 1)));
  EXPECT_THROW(expectation(basis_state("dd"), op), input_error);
  EXPECT_THROW(expectation(basis_state("ddd"), PauliSum(PauliString::from_letters("XI"))), input_error);
}

TEST(ApplyPauliString, MatchesDenseOnRandomStates) {
  std::mt19937 rng(2);
  for (const char* s : {"XYZI", "YYYY", "IZXI", "ZZZZ", "YIXY"}) {
    const auto psi = random_state(rng, 4);
    const auto p = PauliString::from_letters(s, cd(0.4, 0.2));
    const oracle::Vec expected = cd(0.4, 0.2) * oracle::kron(s) * to_eigen(psi);
    EXPECT_LT((to_eigen(apply_pauli_string(psi, p)) - expected).cwiseAbs().maxCoeff(), 1e-14) << s;
  }
}

TEST(PauliExponential, ZeroAngleIsIdentity) {
  std::mt19937 rng(3);
  const auto psi = random_state(rng, 4);
  EXPECT_LT(max_diff(apply_pauli_exponential(psi, PauliString::from_letters("XYZX"), 0.0), psi), 1e-15);
}

TEST(PauliExponential, EigenPhase) {
  const double theta = 0.37;
  const auto out = apply_pauli_exponential(basis_state("U"), PauliString::from_letters("Z"), theta);
  EXPECT_LT(std::abs(out[1] - std::exp(cd(0, -theta))), 1e-15);
  EXPECT_EQ(out[0], cd(0, 0));
}

TEST(PauliExponential, FullFlip) {
  const auto out =
      apply_pauli_exponential(basis_state("ddUU"), PauliString::from_letters("XXXX"), std::numbers::pi / 2);
  EXPECT_LT(std::abs(out[12] - cd(0, -1)), 1e-15);
  EXPECT_NEAR(out.probability(3), 0.0, 1e-30);
}

TEST(PauliExponential, SignAbsorbedIntoAngle) {
  std::mt19937 rng(4);
  const auto psi = random_state(rng, 4);
  const auto a = apply_pauli_exponential(psi, PauliString::from_letters("XYYX", -1.0), 0.3);
  const auto b = apply_pauli_exponential(psi, PauliString::from_letters("XYYX"), -0.3);
  EXPECT_LT(max_diff(a, b), 1e-15);
}

TEST(PauliExponential, MatchesMatrixExponential) {
  std::mt19937 rng(5);
  for (const char* s : {"XYXY", "YYXX", "ZIZI", "IYII"}) {
    const auto psi = random_state(rng, 4);
    const double theta = 0.81;
    const oracle::Vec expected = oracle::expm_hermitian(oracle::kron(s), theta) * to_eigen(psi);
    const auto out = apply_pauli_exponential(psi, PauliString::from_letters(s), theta);
    EXPECT_LT((to_eigen(out) - expected).cwiseAbs().maxCoeff(), 1e-13) << s;
  }
}

TEST(PauliExponential, RejectsNonUnitCoefficient) {
  const auto psi = basis_state("dd");
  EXPECT_THROW(apply_pauli_exponential(psi, PauliString::from_letters("XX", 0.5), 0.1), input_error);
  EXPECT_THROW(apply_pauli_exponential(psi, PauliString::from_letters("XX", cd(0, 1)), 0.1), input_error);
}

TEST(PauliExponential, NormDriftOverManyApplications) {
  std::mt19937 rng(6);
  auto psi = random_state(rng, 4);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  const char* strings[] = {"XXXX", "XYXY", "YYXX", "ZIZI", "IYZX"};
  for (int k = 0; k < 10000; ++k) {
    apply_pauli_exponential_inplace(psi, PauliString::from_letters(strings[k % 5]), angle(rng));
  }
  EXPECT_LT(std::abs(psi.norm() - 1.0), 1e-10);
}

TEST(Fidelity, Properties) {
  std::mt19937 rng(7);
  const auto a = random_state(rng, 3);
  const auto b = random_state(rng, 3);
  EXPECT_NEAR(fidelity(a, a), 1.0, 1e-15);
  EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-15);
  EXPECT_EQ(fidelity(basis_state("ddd"), basis_state("ddU")), 0.0);
  auto phased = b;
  for (std::size_t i = 0; i < phased.dimension(); ++i) phased[i] *= std::exp(cd(0, 1.234));
  EXPECT_NEAR(fidelity(a, phased), fidelity(a, b), 1e-15);
  EXPECT_THROW(fidelity(a, basis_state("dd")), input_error);
}

TEST(ExactEvolve, ZeroTimeIsIdentity) {
  std::mt19937 rng(8);
  const auto psi = random_state(rng, 4);
  EXPECT_LT(max_diff(exact_evolve(psi, build_hamiltonian({1, 1, 1, 1}), 0.0), psi), 1e-13);
}

TEST(ExactEvolve, MatchesMatrixExponential) {
  std::mt19937 rng(9);
  const ModelParams p{1.0, 0.6, 0.7, 1};
  const auto psi = random_state(rng, 4);
  for (double t : {0.3, 2.0, 7.5}) {
    const oracle::Vec expected = oracle::expm_hermitian(oracle::agassi_j1(p.epsilon, p.g, p.V), t) * to_eigen(psi);
    EXPECT_LT((to_eigen(exact_evolve(psi, build_hamiltonian(p), t)) - expected).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ExactEvolve, DiagonalHamiltonianKeepsBasisStates) {
  const auto h = build_hamiltonian({1, 0.8, -0.8, 1});
  const auto psi = basis_state("ddUU");
  for (double t : {0.5, 3.0, 20.0}) EXPECT_NEAR(fidelity(psi, exact_evolve(psi, h, t)), 1.0, 1e-12);
}

TEST(ExactEvolve, SurvivalMatchesTwoLevelForm) {
  const auto h = build_hamiltonian({1, 1, 1, 1});
  const auto psi0 = basis_state("ddUU");
  const ExactPropagator prop(h);
  double lowest = 1.0;
  for (int k = 0; k <= 2000; ++k) {
    const double t = 5.0 * k / 2000;
    const double s = fidelity(psi0, prop.evolve(psi0, t));
    EXPECT_NEAR(s, oracle::survival_closed_form(1, 1, 1, t), 1e-12);
    lowest = std::min(lowest, s);
  }
  EXPECT_NEAR(lowest, 0.2, 1e-5);
}

TEST(ExactEvolve, Composition) {
  std::mt19937 rng(10);
  const auto h = build_hamiltonian({1.0, 0.4, 1.1, 1});
  const auto psi = random_state(rng, 4);
  const auto direct = exact_evolve(psi, h, 3.7);
  const auto composed = exact_evolve(exact_evolve(psi, h, 1.2), h, 2.5);
  EXPECT_LT(max_diff(direct, composed), 1e-9);
}

TEST(ExactEvolve, EnergyConservation) {
  std::mt19937 rng(11);
  const auto h = build_hamiltonian({1.0, 1.0, 1.0, 1});
  const auto psi = random_state(rng, 4);
  const ExactPropagator prop(h);
  const double e0 = expectation(psi, h);
  for (int k = 1; k <= 100; ++k) EXPECT_NEAR(expectation(prop.evolve(psi, 0.3 * k), h), e0, 1e-9);
}

TEST(ExactEvolve, ConfinedToTwoStateSubspace) {
  const auto psi0 = basis_state("ddUU");
  for (const ModelParams& p : {ModelParams{1, 1, 1, 1}, ModelParams{1, 0.5, 0, 1}, ModelParams{1, 0.2, 1.3, 1}}) {
    const ExactPropagator prop(build_hamiltonian(p));
    for (int k = 0; k <= 200; ++k) {
      const auto psi = prop.evolve(psi0, 0.1 * k);
      EXPECT_LT(1.0 - psi.probability(3) - psi.probability(12), 1e-10);
    }
  }
}

TEST(ExactEvolve, RejectsBadInput) {
  PauliSum nonhermitian(PauliString::from_letters("XZ", cd(0, 1)));
  EXPECT_THROW(ExactPropagator{nonhermitian}, input_error);
  EXPECT_THROW(exact_evolve(basis_state("dd"), build_hamiltonian({1, 1, 1, 1}), 1.0), input_error);
}

TEST(DiagonalPhases, MatchExponentialOfDiagonalSum) {
  std::mt19937 rng(12);
  PauliSum d(3);
  d.add(PauliString::from_letters("ZII", 0.3));
  d.add(PauliString::from_letters("ZZI", -0.7));
  d.add(PauliString::from_letters("IIZ", 1.1));
  auto psi = random_state(rng, 3);
  const oracle::Vec expected = oracle::expm_hermitian(to_matrix(d), 0.9) * to_eigen(psi);
  apply_diagonal_phases(psi, diagonal_energies(d), 0.9);
  EXPECT_LT((to_eigen(psi) - expected).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_THROW(diagonal_energies(PauliSum(PauliString::from_letters("XII"))), input_error);
}

TEST(TimeSeries, StrictlyIncreasing) {
  TimeSeries s;
  s.push_back(0.0, 1.0);
  s.push_back(0.5, 2.0);
  EXPECT_THROW(s.push_back(0.5, 3.0), input_error);
  EXPECT_EQ(s.size(), 2u);
}

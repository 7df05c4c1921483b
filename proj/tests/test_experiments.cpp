#include <gtest/gtest.h>

#include <algorithm>

#include "agassi/experiments.hpp"
#include "oracles.hpp"

using namespace agassi;

namespace {

ExperimentConfig config(double g, double v) {
  ExperimentConfig cfg;
  cfg.params = {1.0, g, v, 1};
  return cfg;
}

double max_deviation(const CorrelationSeries& s) {
  double m = 0.0;
  for (std::size_t k = 0; k < s.exact.size(); ++k) m = std::max(m, std::abs(s.exact.values[k] - s.trotter.values[k]));
  return m;
}

}  // namespace

TEST(ExperimentKind, Names) {
  EXPECT_EQ(experiment_from_string("fidelity-steps"), ExperimentKind::fidelity_vs_steps);
  EXPECT_EQ(experiment_from_string("fidelity_vs_nT"), ExperimentKind::fidelity_vs_steps);
  EXPECT_EQ(to_string(ExperimentKind::phase_sweep), "phase-sweep");
  EXPECT_THROW(experiment_from_string("plot"), input_error);
}

TEST(Config, Validation) {
  auto cfg = config(1, 1);
  EXPECT_NO_THROW(cfg.validate());
  cfg.samples = 1;
  EXPECT_THROW(cfg.validate(), input_error);
  cfg = config(1, 1);
  cfg.t_final = 0.0;
  EXPECT_THROW(cfg.validate(), input_error);
  cfg.experiment = ExperimentKind::phase_sweep;
  EXPECT_NO_THROW(cfg.validate());
  cfg.samples_per_period = 100;
  EXPECT_THROW(cfg.validate(), input_error);
}

TEST(Config, TimeGrid) {
  auto cfg = config(1, 1);
  cfg.t_final = 2.0;
  cfg.samples = 5;
  EXPECT_EQ(cfg.time_grid(), (std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0}));
  SweepSpec s{0.0, 1.0, 101};
  EXPECT_DOUBLE_EQ(s.at(50), 0.5);
  EXPECT_DOUBLE_EQ(s.at(100), 1.0);
}

TEST(Correlation, ProductStateIsUncorrelated) {
  for (const char* pattern : {"ddUU", "UdUd", "dddd"}) EXPECT_NEAR(correlation_z12(basis_state(pattern)), 0.0, 1e-15);
  const auto s = correlation_series(config(0.5, 1.0));
  EXPECT_NEAR(s.exact.values.front(), 0.0, 1e-15);
  EXPECT_NEAR(s.trotter.values.front(), 0.0, 1e-15);
}

TEST(Correlation, BellLikeStateIsFullyCorrelated) {
  StateVector psi(4);
  psi[0] = 0.0;
  psi[3] = std::sqrt(0.5);
  psi[12] = std::sqrt(0.5);
  EXPECT_NEAR(correlation_z12(psi), 1.0, 1e-15);
}

TEST(Correlation, MatchesTwoLevelFormAlongSeries) {
  const auto cfg = config(0.4, 0.4);
  const auto s = correlation_series(cfg);
  const double c = 0.8;
  const double w = std::hypot(1.0, c);
  for (std::size_t k = 0; k < s.exact.size(); ++k) {
    const double sn = std::sin(w * s.exact.times[k]);
    const double p = c * c / (w * w) * sn * sn;
    EXPECT_NEAR(s.exact.values[k], 4.0 * p * (1.0 - p), 1e-12);
  }
}

TEST(Correlation, ExactOnlyOmitsTrotterSeries) {
  auto cfg = config(1, 1);
  cfg.trotter = false;
  EXPECT_TRUE(correlation_series(cfg).trotter.empty());
}

TEST(Correlation, TrotterTracksExact) {
  for (auto [g, v] : {std::pair{0.5, 0.0}, std::pair{0.4, 0.4}, std::pair{0.5, 1.0}}) {
    auto cfg = config(g, v);
    cfg.trotter_steps = 3;
    const double d3 = max_deviation(correlation_series(cfg));
    cfg.trotter_steps = 5;
    const double d5 = max_deviation(correlation_series(cfg));
    EXPECT_LT(d5, d3) << g << "," << v;
    EXPECT_LT(d3, 1e-3) << g << "," << v;
  }
}

TEST(Amplitude, TwoLevelValues) {
  EXPECT_NEAR(amplitude(config(0.5, 0.0)), 0.64, 1e-9);
  EXPECT_NEAR(amplitude(config(0.4, 0.4)), oracle::correlation_amplitude(1, 0.4, 0.4), 1e-9);
  EXPECT_NEAR(amplitude(config(0.4, 0.4)), 0.9518, 1e-3);
  EXPECT_NEAR(amplitude(config(0.5, 0.5)), 1.0, 1e-6);
  EXPECT_NEAR(amplitude(config(0.5, 1.0)), 1.0, 1e-6);
  EXPECT_EQ(amplitude(config(0.3, -0.3)), 0.0);
}

TEST(Amplitude, RabiPeriod) {
  EXPECT_NEAR(rabi_period({1, 1, 1, 1}), std::numbers::pi / std::sqrt(5.0), 1e-15);
}

TEST(Amplitude, RefinementBeatsPlainGrid) {
  // On the plateau the sampled maximum alone sits visibly below one.
  const auto cfg = config(0.8, 0.8);
  const auto psi0 = basis_state(cfg.initial_state);
  const ExactPropagator prop(build_hamiltonian(cfg.params));
  double plain = 0.0;
  for (double t : detail::amplitude_grid(cfg)) plain = std::max(plain, correlation_z12(prop.evolve(psi0, t)));
  EXPECT_LT(plain, 1.0 - 1e-6);
  EXPECT_GT(amplitude(cfg), 1.0 - 1e-9);
}

TEST(Amplitude, TrotterAmplitudeClose) {
  for (double x : {0.1, 0.3, 0.45, 0.5, 0.7}) {
    auto cfg = config(x, x);
    EXPECT_NEAR(trotter_amplitude(cfg), amplitude(cfg), 1e-5) << x;
  }
}

TEST(Survival, Minima) {
  auto cfg = config(1, 1);
  EXPECT_NEAR(survival_minimum(cfg), 0.2, 1e-6);
  cfg = config(0.5, 0.5);
  EXPECT_NEAR(survival_minimum(cfg), 0.5, 1e-6);
  const auto s = survival_series(cfg);
  EXPECT_NEAR(s.values.front(), 1.0, 1e-15);
  for (std::size_t k = 0; k < s.size(); ++k) {
    EXPECT_NEAR(s.values[k], oracle::survival_closed_form(1, 0.5, 0.5, s.times[k]), 1e-12);
  }
}

TEST(Fidelity, TimeSeriesInUnitInterval) {
  auto cfg = config(1, 1);
  cfg.trotter_steps = 10;
  const auto s = fidelity_time_series(cfg);
  EXPECT_NEAR(s.values.front(), 1.0, 1e-15);
  for (double f : s.values) {
    EXPECT_GE(f, -1e-9);
    EXPECT_LE(f, 1.0 + 1e-9);
  }
}

TEST(Fidelity, StepsConvergeAtShortTime) {
  auto cfg = config(1, 1);
  cfg.t_final = 2.0;
  cfg.trotter_steps = 30;
  const auto s = fidelity_vs_steps(cfg);
  ASSERT_EQ(s.size(), 30u);
  EXPECT_EQ(s.front().steps, 1);
  for (std::size_t k = 7; k < s.size(); ++k) EXPECT_GT(s[k].fidelity, s[k - 1].fidelity) << s[k].steps;
  EXPECT_GT(s.back().fidelity, 0.999);
}

TEST(PhaseSweep, ShapeAlongGEqualsV) {
  const auto cfg = config(0, 0);
  const auto sweep = phase_sweep(cfg);
  ASSERT_EQ(sweep.points.size(), 101u);
  for (std::size_t k = 0; k < sweep.points.size(); ++k) {
    const auto& p = sweep.points[k];
    EXPECT_GE(p.amplitude, -1e-9);
    EXPECT_LE(p.amplitude, 1.0 + 1e-9);
    EXPECT_EQ(p.phase, critical_line({1, p.control, p.control, 1})) << p.control;
    if (p.control < 0.5 - 1e-12 && k > 0) {
      EXPECT_GE(p.amplitude, sweep.points[k - 1].amplitude);
    }
    if (p.control >= 0.5 - 1e-12) {
      EXPECT_NEAR(p.amplitude, 1.0, 1e-6) << p.control;
    }
  }
}

TEST(PhaseSweep, TrotterClassificationAgrees) {
  auto cfg = config(0, 0);
  cfg.sweep.points = 21;
  const auto exact = phase_sweep(cfg, false);
  const auto digital = phase_sweep(cfg, true);
  for (std::size_t k = 0; k < exact.points.size(); ++k) {
    EXPECT_EQ(exact.points[k].phase, digital.points[k].phase) << exact.points[k].control;
  }
}

TEST(CompileReport, CountsAndBudget) {
  auto cfg = config(1, 1);
  cfg.experiment = ExperimentKind::compile_report;
  const auto r = compile_report(cfg);
  EXPECT_EQ(r.counts.per_trotter_step, (GateTally{52, 50, 16}));
  EXPECT_NEAR(r.budget.total, 0.276, 1e-12);
}

TEST(Config, InitialStateMustFitRegister) {
  auto cfg = config(1, 1);
  cfg.initial_state = "ddU";
  EXPECT_THROW(cfg.validate(), input_error);
  cfg.initial_state = "↓↓↑↑";
  EXPECT_NO_THROW(cfg.validate());
}

#pragma once

// Experiment configuration files, CSV output and run manifests.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "agassi/experiments.hpp"
#include "agassi/version.hpp"

namespace agassi {

using json = nlohmann::json;

inline json to_json(const ExperimentConfig& c) {
  return json{
      {"experiment", std::string(to_string(c.experiment))},
      {"params", {{"epsilon", c.params.epsilon}, {"g", c.params.g}, {"V", c.params.V}, {"j", c.params.j}}},
      {"n_T", c.trotter_steps},
      {"t_final", c.t_final},
      {"samples", c.samples},
      {"initial_state", c.initial_state},
      {"trotter", c.trotter},
      {"sweep", {{"start", c.sweep.start}, {"stop", c.sweep.stop}, {"points", c.sweep.points}}},
      {"gate_errors", {{"e1", c.e1}, {"e2", c.e2}}},
      {"amplitude", {{"rabi_periods", c.rabi_periods}, {"samples_per_period", c.samples_per_period}}},
      {"output", c.output},
  };
}

/// Overlays the keys present in `j` onto `base`; absent keys keep their value.
inline ExperimentConfig merge_config(ExperimentConfig base, const json& j) {
  try {
    if (j.contains("experiment")) base.experiment = experiment_from_string(j.at("experiment").get<std::string>());
    if (j.contains("params")) {
      const auto& p = j.at("params");
      if (p.contains("epsilon")) base.params.epsilon = p.at("epsilon").get<double>();
      if (p.contains("g")) base.params.g = p.at("g").get<double>();
      if (p.contains("V")) base.params.V = p.at("V").get<double>();
      if (p.contains("v")) base.params.V = p.at("v").get<double>();
      if (p.contains("j")) base.params.j = p.at("j").get<int>();
    }
    if (j.contains("n_T")) base.trotter_steps = j.at("n_T").get<int>();
    if (j.contains("t_final")) base.t_final = j.at("t_final").get<double>();
    if (j.contains("samples")) base.samples = j.at("samples").get<int>();
    if (j.contains("initial_state")) base.initial_state = j.at("initial_state").get<std::string>();
    if (j.contains("trotter")) base.trotter = j.at("trotter").get<bool>();
    if (j.contains("sweep")) {
      const auto& s = j.at("sweep");
      if (s.contains("start")) base.sweep.start = s.at("start").get<double>();
      if (s.contains("stop")) base.sweep.stop = s.at("stop").get<double>();
      if (s.contains("points")) base.sweep.points = s.at("points").get<int>();
    }
    if (j.contains("gate_errors")) {
      const auto& e = j.at("gate_errors");
      if (e.contains("e1")) base.e1 = e.at("e1").get<double>();
      if (e.contains("e2")) base.e2 = e.at("e2").get<double>();
    }
    if (j.contains("amplitude")) {
      const auto& a = j.at("amplitude");
      if (a.contains("rabi_periods")) base.rabi_periods = a.at("rabi_periods").get<int>();
      if (a.contains("samples_per_period")) base.samples_per_period = a.at("samples_per_period").get<int>();
    }
    if (j.contains("output")) base.output = j.at("output").get<std::string>();
  } catch (const json::exception& e) {
    throw input_error(std::string("config: ") + e.what());
  }
  return base;
}

inline ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw input_error("config " + path.string() + ": " + e.what());
  }
  return merge_config(std::move(base), j);
}

// ---------------------------------------------------------------------------
// CSV

namespace detail {

inline std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header) : path_(path), out_(path) {
    if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
    row(header);
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) out_ << (k ? "," : "") << cells[k];
    out_ << '\n';
  }

  void close() {
    out_.close();
    if (!out_) throw std::runtime_error("write to " + path_.string() + " failed");
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace detail

struct RunResult {
  std::filesystem::path data_file;
  std::filesystem::path manifest_file;
  json summary;
};

inline std::filesystem::path default_output(const ExperimentConfig& cfg) {
  if (!cfg.output.empty()) return cfg.output;
  if (cfg.experiment == ExperimentKind::compile_report) return "compile-report.gates";
  return std::string(to_string(cfg.experiment)) + ".csv";
}

/// Runs one experiment, writes its data file and a JSON manifest next to it.
inline RunResult run(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  RunResult res;
  res.data_file = default_output(cfg);
  res.manifest_file = res.data_file;
  res.manifest_file += ".manifest.json";
  if (res.data_file.has_parent_path()) std::filesystem::create_directories(res.data_file.parent_path());

  using detail::csv_number;
  const double gv = cfg.params.control();
  json summary;

  switch (cfg.experiment) {
    case ExperimentKind::fidelity_vs_time: {
      const auto s = fidelity_time_series(cfg);
      detail::CsvWriter w(res.data_file, {"t", "gvt", "fidelity"});
      for (std::size_t k = 0; k < s.size(); ++k) {
        w.row({csv_number(s.times[k]), csv_number(gv * s.times[k]), csv_number(s.values[k])});
      }
      w.close();
      summary["min_fidelity"] = *std::min_element(s.values.begin(), s.values.end());
      break;
    }
    case ExperimentKind::fidelity_vs_steps: {
      const auto s = fidelity_vs_steps(cfg);
      detail::CsvWriter w(res.data_file, {"n_T", "fidelity"});
      for (const auto& f : s) w.row({std::to_string(f.steps), csv_number(f.fidelity)});
      w.close();
      summary["final_fidelity"] = s.back().fidelity;
      break;
    }
    case ExperimentKind::survival: {
      const auto s = survival_series(cfg);
      detail::CsvWriter w(res.data_file, {"t", "gvt", "survival"});
      for (std::size_t k = 0; k < s.size(); ++k) {
        w.row({csv_number(s.times[k]), csv_number(gv * s.times[k]), csv_number(s.values[k])});
      }
      w.close();
      summary["min_survival_sampled"] = *std::min_element(s.values.begin(), s.values.end());
      summary["min_survival_refined"] = survival_minimum(cfg);
      break;
    }
    case ExperimentKind::correlation: {
      const auto s = correlation_series(cfg);
      detail::CsvWriter w(res.data_file, {"t", "gvt", "corr_exact", "corr_trotter"});
      for (std::size_t k = 0; k < s.exact.size(); ++k) {
        w.row({csv_number(s.exact.times[k]), csv_number(gv * s.exact.times[k]), csv_number(s.exact.values[k]),
               s.trotter.empty() ? std::string() : csv_number(s.trotter.values[k])});
      }
      w.close();
      summary["amplitude"] = amplitude(cfg);
      summary["phase"] = std::string(to_string(classify_amplitude(summary["amplitude"].get<double>())));
      break;
    }
    case ExperimentKind::phase_sweep: {
      const auto s = phase_sweep(cfg);
      detail::CsvWriter w(res.data_file, {"g_eq_v", "amplitude", "phase"});
      for (const auto& p : s.points) {
        w.row({csv_number(p.control), csv_number(p.amplitude), std::string(to_string(p.phase))});
      }
      w.close();
      summary["points"] = s.points.size();
      if (cfg.trotter) {
        const auto d = phase_sweep(cfg, true);
        std::vector<double> mismatched;
        for (std::size_t k = 0; k < s.points.size(); ++k) {
          if (d.points[k].phase != s.points[k].phase) mismatched.push_back(s.points[k].control);
        }
        summary["trotter_phase_mismatches"] = mismatched;
      }
      break;
    }
    case ExperimentKind::compile_report: {
      const auto r = compile_report(cfg);
      std::ofstream out(res.data_file);
      out << to_text(r.sequence);
      out.close();
      if (!out) throw std::runtime_error("write to " + res.data_file.string() + " failed");
      summary["single_qubit_per_step"] = r.counts.per_trotter_step.single_qubit;
      summary["two_qubit_equivalent_per_step"] = r.counts.per_trotter_step.two_qubit_equivalent;
      summary["collective_ms_per_step"] = r.counts.per_trotter_step.collective_ms;
      summary["single_qubit_total"] = r.counts.total.single_qubit;
      summary["two_qubit_equivalent_total"] = r.counts.total.two_qubit_equivalent;
      summary["total_gate_error"] = r.budget.total;
      if (const auto f = r.budget.projected_fidelity()) summary["projected_fidelity"] = *f;
      break;
    }
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json manifest{{"tool", "agassi-sim"},   {"version", kVersion},         {"config", to_json(cfg)},
                {"data_file", res.data_file.string()}, {"wall_time_seconds", wall}, {"summary", summary}};
  std::ofstream mf(res.manifest_file);
  mf << manifest.dump(2) << '\n';
  mf.close();
  if (!mf) throw std::runtime_error("write to " + res.manifest_file.string() + " failed");
  res.summary = std::move(summary);
  return res;
}

}  // namespace agassi

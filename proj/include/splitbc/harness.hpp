#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "splitbc/reference.hpp"
#include "splitbc/stepper.hpp"

namespace splitbc {

// ---- named functions -------------------------------------------------------

/// zero, one_plus_x, sin_pi, one_plus_sin_pi, dispersion_ic.
std::function<Complex(double)> initial_condition(const std::string& name);

/// a1 = 1 + sin x, a2 = sin(pi x/2) + 2/5, a3 = 3/2 - x,
/// a4 = 1/5 + exp(-50 (x - 1/2)^2), a5 = 1 + sin(2 pi x)/5, one = 1.
Coefficient coefficient_by_name(const std::string& name);

// ---- configuration ---------------------------------------------------------

struct ProblemSpec {
  OperatorKind kind = OperatorKind::Diffusion;
  int n = 200;
  std::string coefficient = "a1";
  std::string reaction = "zero";
  Complex b_left = 0.0;
  Complex b_right = 0.0;
  std::string initial = "zero";
};

template <class S>
SplitProblem<S> build_problem(const ProblemSpec& spec);

enum class ErrorKind { Local, Global, Both };

std::string to_string(ErrorKind kind);

struct TauSweep {
  double min = 1e-4;
  double max = 1.2e-2;
  int count = 120;

  /// Log-spaced, decreasing from max to min.
  std::vector<double> values() const;
};

struct ExperimentConfig {
  ProblemSpec problem;
  double T = 0.25;
  std::vector<double> taus;
  std::optional<TauSweep> tau_sweep;
  std::vector<Scheme> schemes{Scheme::Unmodified};
  ErrorKind error_kind = ErrorKind::Both;
  // Ceil(T/tau) full steps, errors measured at the final step time.
  StepRule step_rule = StepRule::Overshoot;
  std::optional<std::pair<double, double>> window;
  ReferenceConfig reference;

  // Comparison matrix.
  std::vector<std::string> reactions{"f1", "f2", "f3", "f4", "f5"};
  std::vector<std::string> coefficients{"a1", "a2", "a3", "a4", "a5"};
  std::vector<double> times{0.5, 2.0};
  double tau = 7.5e-3;

  /// Explicit taus, or the sweep when no list is given.
  std::vector<double> step_sizes() const;
  void validate() const;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

// ---- measurement -----------------------------------------------------------

template <class S>
double error_linf(const Vector<S>& u, const Vector<S>& v);

/// Max-norm error over the nodes with lo <= x <= hi.
template <class S>
double error_linf(const Vector<S>& u, const Vector<S>& v, const Grid1D& grid,
                  std::pair<double, double> window);

/// log2(e_coarse / e_fine); nullopt when either error is not positive.
std::optional<double> observed_order(double e_coarse, double e_fine);

/// Least-squares slope of log(error) against log(tau).
double loglog_slope(const std::vector<double>& taus, const std::vector<double>& errors);

// ---- reports ---------------------------------------------------------------

struct ConvergenceRow {
  Scheme scheme = Scheme::Unmodified;
  double tau = 0.0;
  double error = 0.0;
  std::optional<double> order;
};

struct ConvergenceReport {
  ErrorKind kind = ErrorKind::Global;
  std::vector<ConvergenceRow> rows;

  std::vector<ConvergenceRow> rows_for(Scheme scheme) const;
};

/// One report per requested error kind (two for ErrorKind::Both).
std::vector<ConvergenceReport> run_convergence(const ExperimentConfig& cfg);

/// As run_convergence with errors restricted to the window.
std::vector<ConvergenceReport> run_interior_convergence(const ExperimentConfig& cfg,
                                                        std::pair<double, double> window);

struct ComparisonCell {
  double t = 0.0;
  std::string reaction;
  std::string coefficient;
  double err_tdbc2 = 0.0, err_tdbc3 = 0.0, err_cec2 = 0.0, err_cec3 = 0.0;

  double ratio() const;      // best TDBC / best CEC
  double gain_cec() const;   // CEC2 / CEC3
  double gain_tdbc() const;  // TDBC2 / TDBC3
};

struct ComparisonReport {
  double tau = 0.0;
  int n = 0;
  std::vector<ComparisonCell> cells;

  std::vector<ComparisonCell> at_time(double t) const;
};

ComparisonReport run_comparison(const ExperimentConfig& cfg);

struct ResonanceRow {
  Scheme scheme = Scheme::Unmodified;
  double tau = 0.0;
  double error = 0.0;
};

struct ResonanceReport {
  std::vector<ResonanceRow> rows;

  std::vector<ResonanceRow> rows_for(Scheme scheme) const;
};

ResonanceReport run_resonance(const ExperimentConfig& cfg);

/// Error pair at the end t of each step: local is the one-step error from the
/// reference at the step's start, global the accumulated error.
struct TraceRow {
  Scheme scheme = Scheme::Unmodified;
  double tau = 0.0;
  double t = 0.0;
  double local = 0.0;
  double global = 0.0;
};

struct TraceReport {
  std::vector<TraceRow> rows;
};

TraceReport run_trace(const ExperimentConfig& cfg);

// ---- output ----------------------------------------------------------------

void emit_csv(const ConvergenceReport& report, const std::filesystem::path& path);
void emit_csv(const ComparisonReport& report, const std::filesystem::path& path);
void emit_csv(const ResonanceReport& report, const std::filesystem::path& path);
void emit_csv(const TraceReport& report, const std::filesystem::path& path);

/// Resolved run parameters, written next to the CSV files as meta.json.
nlohmann::json describe(const ExperimentConfig& cfg, const std::string& command);

nlohmann::json to_json(const ConvergenceReport& report);
nlohmann::json to_json(const ComparisonReport& report);
nlohmann::json to_json(const ResonanceReport& report);
nlohmann::json to_json(const TraceReport& report);

/// Runs one CLI subcommand and writes its CSV files and meta.json to out_dir.
/// Returns the paths written.
std::vector<std::filesystem::path> run_command(const std::string& command,
                                               const ExperimentConfig& cfg,
                                               const std::filesystem::path& out_dir);

}  // namespace splitbc

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

#include "splitbc/errors.hpp"
#include "splitbc/harness.hpp"

namespace splitbc {

template <class S>
double error_linf(const Vector<S>& u, const Vector<S>& v) {
  if (u.size() != v.size()) throw DimensionError("error_linf: length mismatch");
  if (u.size() == 0) return 0.0;
  return (u - v).cwiseAbs().maxCoeff();
}

template <class S>
double error_linf(const Vector<S>& u, const Vector<S>& v, const Grid1D& grid,
                  std::pair<double, double> window) {
  if (u.size() != v.size() || u.size() != grid.n_interior) {
    throw DimensionError("error_linf: length mismatch");
  }
  double worst = 0.0;
  bool any = false;
  for (int i = 0; i < grid.n_interior; ++i) {
    const double x = grid.node_positions[i];
    if (x < window.first || x > window.second) continue;
    any = true;
    worst = std::max(worst, std::abs(u[i] - v[i]));
  }
  if (!any) throw ConfigError("error window contains no grid nodes");
  return worst;
}

std::optional<double> observed_order(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0)) return std::nullopt;
  return std::log2(e_coarse / e_fine);
}

double loglog_slope(const std::vector<double>& taus, const std::vector<double>& errors) {
  if (taus.size() != errors.size() || taus.size() < 2) {
    throw ConfigError("loglog_slope needs at least two matching points");
  }
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(taus.size());
  for (std::size_t k = 0; k < taus.size(); ++k) {
    mx += std::log(taus[k]) / n;
    my += std::log(errors[k]) / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < taus.size(); ++k) {
    const double dx = std::log(taus[k]) - mx;
    sxy += dx * (std::log(errors[k]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

std::vector<ConvergenceRow> ConvergenceReport::rows_for(Scheme scheme) const {
  std::vector<ConvergenceRow> out;
  for (const auto& r : rows) {
    if (r.scheme == scheme) out.push_back(r);
  }
  return out;
}

std::vector<ResonanceRow> ResonanceReport::rows_for(Scheme scheme) const {
  std::vector<ResonanceRow> out;
  for (const auto& r : rows) {
    if (r.scheme == scheme) out.push_back(r);
  }
  return out;
}

double ComparisonCell::ratio() const {
  return std::min(err_tdbc2, err_tdbc3) / std::min(err_cec2, err_cec3);
}
double ComparisonCell::gain_cec() const { return err_cec2 / err_cec3; }
double ComparisonCell::gain_tdbc() const { return err_tdbc2 / err_tdbc3; }

std::vector<ComparisonCell> ComparisonReport::at_time(double t) const {
  std::vector<ComparisonCell> out;
  for (const auto& c : cells) {
    if (c.t == t) out.push_back(c);
  }
  return out;
}

namespace {

template <class F>
auto with_scalar(OperatorKind kind, F&& f) {
  if (kind == OperatorKind::Dispersion) return f(Complex{});
  return f(Real{});
}

std::vector<Scheme> schemes_or(const ExperimentConfig& cfg, std::vector<Scheme> fallback) {
  return cfg.schemes.empty() ? fallback : cfg.schemes;
}

// Reference states keyed by the exact checkpoint time.
template <class S>
std::map<double, Vector<S>> reference_at(const SplitProblem<S>& p, std::vector<double> times,
                                         const ReferenceConfig& cfg) {
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  std::map<double, Vector<S>> out;
  std::erase_if(times, [](double t) { return t <= 0.0; });
  auto states = reference_checkpoints(p, p.initial, times, cfg);
  for (std::size_t k = 0; k < times.size(); ++k) out.emplace(times[k], std::move(states[k]));
  out.emplace(0.0, p.initial);
  return out;
}

void attach_orders(std::vector<ConvergenceRow>& rows) {
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k].scheme != rows[k - 1].scheme) continue;
    const auto o = observed_order(rows[k - 1].error, rows[k].error);
    // log2 for halved steps; other ladders are rescaled by their step ratio.
    const double ratio = rows[k - 1].tau / rows[k].tau;
    if (o) rows[k].order = *o / std::log2(ratio);
  }
}

template <class S>
std::vector<ConvergenceReport> convergence_impl(
    const ExperimentConfig& cfg, std::optional<std::pair<double, double>> window) {
  cfg.validate();
  const auto problem = std::make_shared<const SplitProblem<S>>(build_problem<S>(cfg.problem));
  const auto taus = cfg.step_sizes();
  if (taus.empty()) throw ConfigError("convergence run needs run.taus or run.tau_sweep");
  const auto schemes = schemes_or(cfg, {Scheme::Unmodified});
  const bool want_local = cfg.error_kind != ErrorKind::Global;
  const bool want_global = cfg.error_kind != ErrorKind::Local;

  auto measure = [&](const Vector<S>& u, const Vector<S>& v) {
    return window ? error_linf(u, v, problem->grid, *window) : error_linf(u, v);
  };
  if (window) measure(problem->initial, problem->initial);  // rejects empty windows early

  std::vector<double> checkpoints;
  if (want_local) checkpoints = taus;
  auto end_of = [&](double tau) {
    return StrangSplitting<S>::end_time(cfg.T, tau, cfg.step_rule);
  };
  if (want_global) {
    for (double tau : taus) checkpoints.push_back(end_of(tau));
  }
  const auto ref = reference_at(*problem, checkpoints, cfg.reference);

  std::map<std::pair<int, std::size_t>, double> local, global;
  // Smallest step first: on halving ladders each family then comes from the
  // previous one by a single squaring.
  auto cache = std::make_shared<PhiCache<S>>(problem->op.dense());
  for (std::size_t k = taus.size(); k-- > 0;) {
    for (std::size_t s = 0; s < schemes.size(); ++s) {
      SchemeConfig sc;
      sc.scheme = schemes[s];
      sc.step_rule = cfg.step_rule;
      const StrangSplitting<S> solver(problem, sc, cache);
      if (want_local) {
        local[{int(s), k}] = measure(solver.step(problem->initial, taus[k]), ref.at(taus[k]));
      }
      if (want_global) {
        global[{int(s), k}] = measure(solver.integrate(cfg.T, taus[k]), ref.at(end_of(taus[k])));
      }
    }
  }

  std::vector<ConvergenceReport> out;
  auto assemble = [&](ErrorKind kind, const auto& errors) {
    ConvergenceReport rep;
    rep.kind = kind;
    for (std::size_t s = 0; s < schemes.size(); ++s) {
      for (std::size_t k = 0; k < taus.size(); ++k) {
        rep.rows.push_back({schemes[s], taus[k], errors.at({int(s), k}), std::nullopt});
      }
    }
    attach_orders(rep.rows);
    out.push_back(std::move(rep));
  };
  if (want_local) assemble(ErrorKind::Local, local);
  if (want_global) assemble(ErrorKind::Global, global);
  return out;
}

template <class S>
ComparisonReport comparison_impl(const ExperimentConfig& cfg) {
  cfg.validate();
  ComparisonReport rep;
  rep.tau = cfg.tau;
  rep.n = cfg.problem.n;
  std::vector<double> times = cfg.times;
  std::sort(times.begin(), times.end());

  for (const auto& coeff : cfg.coefficients) {
    ProblemSpec spec = cfg.problem;
    spec.coefficient = coeff;
    std::shared_ptr<PhiCache<S>> cache;
    for (const auto& rname : cfg.reactions) {
      spec.reaction = rname;
      const auto problem = std::make_shared<const SplitProblem<S>>(build_problem<S>(spec));
      if (!cache) cache = std::make_shared<PhiCache<S>>(problem->op.dense());
      std::vector<double> ends;
      for (double t : times) ends.push_back(StrangSplitting<S>::end_time(t, cfg.tau, cfg.step_rule));
      const auto ref = reference_at(*problem, ends, cfg.reference);
      for (double t : cfg.times) {
        ComparisonCell cell;
        cell.t = t;
        cell.reaction = rname;
        cell.coefficient = coeff;
        auto run = [&](Scheme scheme) {
          SchemeConfig sc;
          sc.scheme = scheme;
          sc.step_rule = cfg.step_rule;
          return error_linf(StrangSplitting<S>(problem, sc, cache).integrate(t, cfg.tau),
                            ref.at(StrangSplitting<S>::end_time(t, cfg.tau, cfg.step_rule)));
        };
        cell.err_tdbc2 = run(Scheme::Tdbc2);
        cell.err_tdbc3 = run(Scheme::Tdbc3);
        cell.err_cec2 = run(Scheme::Cec2);
        cell.err_cec3 = run(Scheme::Cec3);
        rep.cells.push_back(cell);
      }
    }
  }
  // Deterministic order: time, then reaction, then coefficient as configured.
  std::stable_sort(rep.cells.begin(), rep.cells.end(), [&](const auto& a, const auto& b) {
    auto idx = [](const std::vector<std::string>& v, const std::string& s) {
      return std::find(v.begin(), v.end(), s) - v.begin();
    };
    if (a.t != b.t) return a.t < b.t;
    if (a.reaction != b.reaction) {
      return idx(cfg.reactions, a.reaction) < idx(cfg.reactions, b.reaction);
    }
    return idx(cfg.coefficients, a.coefficient) < idx(cfg.coefficients, b.coefficient);
  });
  return rep;
}

template <class S>
ResonanceReport resonance_impl(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto problem = std::make_shared<const SplitProblem<S>>(build_problem<S>(cfg.problem));
  const auto taus = cfg.step_sizes();
  if (taus.empty()) throw ConfigError("resonance run needs run.tau_sweep or run.taus");
  const auto schemes = schemes_or(cfg, {Scheme::Unmodified, Scheme::Tdbc2, Scheme::Tdbc3});
  std::vector<double> ends;
  for (double tau : taus) ends.push_back(StrangSplitting<S>::end_time(cfg.T, tau, cfg.step_rule));
  const auto ref = reference_at(*problem, ends, cfg.reference);
  const Matrix<S> dense = problem->op.dense();

  std::vector<std::vector<double>> errors(schemes.size(), std::vector<double>(taus.size()));
  for (std::size_t k = 0; k < taus.size(); ++k) {
    auto cache = std::make_shared<PhiCache<S>>(dense);
    for (std::size_t s = 0; s < schemes.size(); ++s) {
      SchemeConfig sc;
      sc.scheme = schemes[s];
      sc.step_rule = cfg.step_rule;
      errors[s][k] = error_linf(StrangSplitting<S>(problem, sc, cache).integrate(cfg.T, taus[k]),
                                ref.at(ends[k]));
    }
  }
  ResonanceReport rep;
  for (std::size_t s = 0; s < schemes.size(); ++s) {
    for (std::size_t k = 0; k < taus.size(); ++k) {
      rep.rows.push_back({schemes[s], taus[k], errors[s][k]});
    }
  }
  return rep;
}

template <class S>
TraceReport trace_impl(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto problem = std::make_shared<const SplitProblem<S>>(build_problem<S>(cfg.problem));
  const auto taus = cfg.step_sizes();
  if (taus.empty()) throw ConfigError("trace run needs run.taus");
  const auto schemes = schemes_or(cfg, {Scheme::Cec2, Scheme::Cec3});

  std::vector<double> all_times;
  for (double tau : taus) {
    const auto ts = StrangSplitting<S>::step_times(cfg.T, tau, cfg.step_rule);
    all_times.insert(all_times.end(), ts.begin(), ts.end());
  }
  const auto ref = reference_at(*problem, all_times, cfg.reference);
  const Matrix<S> dense = problem->op.dense();

  TraceReport rep;
  for (const Scheme scheme : schemes) {
    for (double tau : taus) {
      auto cache = std::make_shared<PhiCache<S>>(dense);
      SchemeConfig sc;
      sc.scheme = scheme;
      sc.step_rule = cfg.step_rule;
      const StrangSplitting<S> solver(problem, sc, cache);
      std::vector<State<S>> traj;
      solver.integrate(cfg.T, tau, &traj);
      for (std::size_t k = 1; k < traj.size(); ++k) {
        const double t0 = traj[k - 1].time, t1 = traj[k].time;
        const double h = t1 - t0;
        TraceRow row;
        row.scheme = scheme;
        row.tau = tau;
        row.t = t1;
        row.local = error_linf(solver.step(ref.at(t0), h), ref.at(t1));
        row.global = error_linf(traj[k].values, ref.at(t1));
        rep.rows.push_back(row);
      }
    }
  }
  return rep;
}

}  // namespace

std::vector<ConvergenceReport> run_convergence(const ExperimentConfig& cfg) {
  return with_scalar(cfg.problem.kind, [&](auto tag) {
    return convergence_impl<decltype(tag)>(cfg, std::nullopt);
  });
}

std::vector<ConvergenceReport> run_interior_convergence(const ExperimentConfig& cfg,
                                                        std::pair<double, double> window) {
  if (!(window.first <= window.second)) throw ConfigError("window must satisfy lo <= hi");
  return with_scalar(cfg.problem.kind, [&](auto tag) {
    return convergence_impl<decltype(tag)>(cfg, window);
  });
}

ComparisonReport run_comparison(const ExperimentConfig& cfg) {
  return with_scalar(cfg.problem.kind,
                     [&](auto tag) { return comparison_impl<decltype(tag)>(cfg); });
}

ResonanceReport run_resonance(const ExperimentConfig& cfg) {
  return with_scalar(cfg.problem.kind,
                     [&](auto tag) { return resonance_impl<decltype(tag)>(cfg); });
}

TraceReport run_trace(const ExperimentConfig& cfg) {
  return with_scalar(cfg.problem.kind,
                     [&](auto tag) { return trace_impl<decltype(tag)>(cfg); });
}

template double error_linf(const Vector<Real>&, const Vector<Real>&);
template double error_linf(const Vector<Complex>&, const Vector<Complex>&);
template double error_linf(const Vector<Real>&, const Vector<Real>&, const Grid1D&,
                           std::pair<double, double>);
template double error_linf(const Vector<Complex>&, const Vector<Complex>&, const Grid1D&,
                           std::pair<double, double>);

}  // namespace splitbc

#include "splitbc/stepper.hpp"

#include <algorithm>
#include <cmath>

#include "splitbc/errors.hpp"

namespace splitbc {

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Unmodified: return "unmodified";
    case Scheme::Tdbc2: return "tdbc2";
    case Scheme::Tdbc3: return "tdbc3";
    case Scheme::Cec2: return "cec2";
    case Scheme::Cec3: return "cec3";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& name) {
  for (Scheme s : {Scheme::Unmodified, Scheme::Tdbc2, Scheme::Tdbc3, Scheme::Cec2,
                   Scheme::Cec3}) {
    if (name == to_string(s)) return s;
  }
  throw RegistryError("unknown scheme '" + name + "'");
}

std::string to_string(StepRule rule) {
  switch (rule) {
    case StepRule::Shorten: return "shorten";
    case StepRule::Overshoot: return "overshoot";
    case StepRule::Uniform: return "uniform";
  }
  return "unknown";
}

StepRule step_rule_from_string(const std::string& name) {
  for (StepRule r : {StepRule::Shorten, StepRule::Overshoot, StepRule::Uniform}) {
    if (name == to_string(r)) return r;
  }
  throw RegistryError("unknown step rule '" + name + "'");
}

template <class S>
StrangSplitting<S>::StrangSplitting(std::shared_ptr<const SplitProblem<S>> problem,
                                    SchemeConfig config, std::shared_ptr<PhiCache<S>> cache)
    : problem_(std::move(problem)), config_(config), cache_(std::move(cache)) {
  problem_->validate();
  if (!cache_) cache_ = std::make_shared<PhiCache<S>>(problem_->op.dense());
  if (cache_->matrix().rows() != problem_->op.size()) {
    throw DimensionError("phi cache belongs to a different operator");
  }
  data_fold_ = problem_->op.fold(problem_->boundary_values);
  if (config_.is_cec() && !cec_depends_on_state(*problem_, config_.order())) {
    fixed_q_ = build_cec_q(*problem_, config_.order(), problem_->initial).q_values;
  }
}

template <class S>
Vector<S> StrangSplitting<S>::step(const Vector<S>& u, double tau) const {
  if (!(tau > 0.0)) throw ConfigError("strang_step: tau must be positive");
  const SplitProblem<S>& p = *problem_;
  if (u.size() != p.grid.n_interior) throw DimensionError("strang_step: state length mismatch");

  ShiftedReaction<S> reaction{p.reaction, p.grid.node_positions, {}};
  PolynomialSource<S> src;

  switch (config_.scheme) {
    case Scheme::Unmodified:
      src.g0 = data_fold_;
      break;
    case Scheme::Cec2:
    case Scheme::Cec3: {
      reaction.shift = fixed_q_.size() ? fixed_q_
                                       : build_cec_q(p, config_.order(), u).q_values;
      src.g0 = data_fold_ + reaction.shift;
      break;
    }
    case Scheme::Tdbc2:
    case Scheme::Tdbc3: {
      // Boundary polynomial from the state at the start of the step.
      const auto poly = tdbc_boundary(p, config_.order(), tau, u);
      const std::size_t k = poly.endpoints.size();
      std::vector<S> c0(k), c1(k), c2(k);
      for (std::size_t j = 0; j < k; ++j) {
        c0[j] = poly.endpoints[j].c0;
        c1[j] = poly.endpoints[j].c1;
        c2[j] = poly.endpoints[j].c2;
      }
      src.g0 = p.op.fold(c0);
      src.g1 = p.op.fold(c1);
      if (config_.scheme == Scheme::Tdbc3) src.g2 = p.op.fold(c2);
      break;
    }
  }

  const Vector<S> w = reaction_flow(u, 0.5 * tau, reaction, config_.flow);
  const auto phi = cache_->get(tau);
  const Vector<S> v = propagate_polynomial_source(*phi, w, src);
  return reaction_flow(v, 0.5 * tau, reaction, config_.flow);
}

template <class S>
std::vector<double> StrangSplitting<S>::step_times(double T, double tau, StepRule rule) {
  if (!(T > 0.0) || !(tau > 0.0)) throw ConfigError("integrate: T and tau must be positive");
  long full = 0;
  while ((full + 1) * tau <= T + 1e-12) ++full;
  const bool remainder = T - full * tau > 1e-12;
  std::vector<double> times;
  switch (rule) {
    case StepRule::Shorten:
      for (long k = 1; k <= full; ++k) times.push_back(std::min(k * tau, T));
      if (remainder) times.push_back(T);
      break;
    case StepRule::Overshoot:
      for (long k = 1; k <= full + (remainder ? 1 : 0); ++k) {
        times.push_back(remainder ? k * tau : std::min(k * tau, T));
      }
      break;
    case StepRule::Uniform: {
      const long n = full + (remainder ? 1 : 0);
      for (long k = 1; k <= n; ++k) times.push_back(k == n ? T : T * k / n);
      break;
    }
  }
  return times;
}

template <class S>
double StrangSplitting<S>::end_time(double T, double tau, StepRule rule) {
  return step_times(T, tau, rule).back();
}

template <class S>
Vector<S> StrangSplitting<S>::integrate(double T, double tau,
                                        std::vector<State<S>>* trajectory) const {
  const auto times = step_times(T, tau, config_.step_rule);
  // One step length for the whole run (except a shortened last step), so
  // every step hits the same cached phi family.
  const double h_full =
      config_.step_rule == StepRule::Uniform ? T / static_cast<double>(times.size()) : tau;
  Vector<S> u = problem_->initial;
  if (trajectory) {
    trajectory->clear();
    trajectory->push_back({u, 0.0});
  }
  double t = 0.0;
  for (double t_next : times) {
    const double h = std::abs((t_next - t) - h_full) <= 1e-12 ? h_full : t_next - t;
    u = step(u, h);
    t = t_next;
    if (trajectory) trajectory->push_back({u, t});
  }
  return u;
}

template <class S>
Vector<S> strang_step(const SplitProblem<S>& problem, const SchemeConfig& cfg,
                      const Vector<S>& state, double tau) {
  StrangSplitting<S> s(std::make_shared<const SplitProblem<S>>(problem), cfg);
  return s.step(state, tau);
}

template <class S>
Vector<S> integrate(const SplitProblem<S>& problem, const SchemeConfig& cfg, double T,
                    double tau, std::vector<State<S>>* trajectory) {
  StrangSplitting<S> s(std::make_shared<const SplitProblem<S>>(problem), cfg);
  return s.integrate(T, tau, trajectory);
}

template class StrangSplitting<Real>;
template class StrangSplitting<Complex>;
template Vector<Real> strang_step(const SplitProblem<Real>&, const SchemeConfig&,
                                  const Vector<Real>&, double);
template Vector<Complex> strang_step(const SplitProblem<Complex>&, const SchemeConfig&,
                                     const Vector<Complex>&, double);
template Vector<Real> integrate(const SplitProblem<Real>&, const SchemeConfig&, double, double,
                                std::vector<State<Real>>*);
template Vector<Complex> integrate(const SplitProblem<Complex>&, const SchemeConfig&, double,
                                   double, std::vector<State<Complex>>*);

}  // namespace splitbc

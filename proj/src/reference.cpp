#include "splitbc/reference.hpp"

#include <cmath>
#include <limits>

#include "splitbc/dopri5.hpp"
#include "splitbc/errors.hpp"

namespace splitbc {

void ReferenceConfig::validate() const {
  const double floor = 100.0 * std::numeric_limits<double>::epsilon();
  if (abs_tol < floor || rel_tol < floor) {
    throw ConfigError("reference tolerances must be at least 100 eps");
  }
  if (max_steps <= 0) throw ConfigError("reference max_steps must be positive");
}

template <class S>
std::vector<Vector<S>> reference_checkpoints(const SplitProblem<S>& problem,
                                             const Vector<S>& start,
                                             const std::vector<double>& times,
                                             const ReferenceConfig& cfg) {
  cfg.validate();
  problem.validate();
  if (start.size() != problem.grid.n_interior) {
    throw DimensionError("reference: start value length mismatch");
  }
  const Vector<S> g = problem.op.fold(problem.boundary_values);
  const auto& a0 = problem.op.a0;
  const auto& x = problem.grid.node_positions;
  const Reaction f = problem.reaction;
  auto rhs = [&](double, const Vector<S>& u) {
    Vector<S> du = a0 * u + g;
    for (Eigen::Index i = 0; i < u.size(); ++i) du[i] += f.f(u[i], x[i]);
    return du;
  };

  Dopri5Options opt;
  opt.abs_tol = cfg.abs_tol;
  opt.rel_tol = cfg.rel_tol;
  opt.max_steps = cfg.max_steps;
  auto solver = make_dopri5<Vector<S>>(rhs, opt);

  std::vector<Vector<S>> out;
  out.reserve(times.size());
  double t = 0.0;
  Vector<S> u = start;
  for (double target : times) {
    if (target < t) throw ConfigError("reference: checkpoints must be increasing");
    solver.advance(t, u, target);
    if (!u.allFinite()) throw DomainError("reference solution became non-finite");
    out.push_back(u);
  }
  return out;
}

template <class S>
Vector<S> reference_solve(const SplitProblem<S>& problem, double T,
                          const ReferenceConfig& cfg) {
  if (!(T > 0.0)) throw ConfigError("reference_solve: T must be positive");
  return reference_checkpoints(problem, problem.initial, {T}, cfg).front();
}

template Vector<Real> reference_solve(const SplitProblem<Real>&, double,
                                      const ReferenceConfig&);
template Vector<Complex> reference_solve(const SplitProblem<Complex>&, double,
                                         const ReferenceConfig&);
template std::vector<Vector<Real>> reference_checkpoints(const SplitProblem<Real>&,
                                                         const Vector<Real>&,
                                                         const std::vector<double>&,
                                                         const ReferenceConfig&);
template std::vector<Vector<Complex>> reference_checkpoints(const SplitProblem<Complex>&,
                                                            const Vector<Complex>&,
                                                            const std::vector<double>&,
                                                            const ReferenceConfig&);

}  // namespace splitbc

#include "splitbc/corrections.hpp"

#include <cmath>
#include <complex>

#include "splitbc/errors.hpp"

namespace splitbc {

namespace {

template <class S>
bool finite(S v) {
  return std::isfinite(std::abs(v));
}

void require_order(int order) {
  if (order != 2 && order != 3) throw ConfigError("correction order must be 2 or 3");
}

}  // namespace

template <class S>
std::vector<S> boundary_gradient(const SplitProblem<S>& problem, const Vector<S>& state) {
  const int n = problem.grid.n_interior;
  if (state.size() != n) throw DimensionError("boundary_gradient: state length mismatch");
  const double h = problem.grid.h;
  std::vector<S> out;
  const auto& b = problem.boundary_values;
  out.push_back((S(-3) * b[0] + S(4) * state[0] - state[1]) / S(2 * h));
  if (b.size() > 1) {
    out.push_back((S(3) * b[1] - S(4) * state[n - 1] + state[n - 2]) / S(2 * h));
  }
  return out;
}

template <class S>
std::vector<S> boundary_af(const SplitProblem<S>& problem, const Vector<S>& state) {
  const auto ends = problem.boundary();
  std::vector<S> out;
  out.reserve(ends.size());
  for (const auto& e : ends) {
    if (!finite(e.fb) || !finite(e.fpb) || !finite(e.fppb)) {
      throw DomainError("reaction derivatives undefined at the boundary value");
    }
  }
  if (problem.op.kind == OperatorKind::Advection) {
    const double sigma = problem.op.orientation;
    const double da = problem.op.coefficient->derivative(0.0);
    const auto& e = ends.front();
    out.push_back(-e.fpb * e.fb + S(sigma * da) * (e.fb - e.fpb * e.b));
    return out;
  }
  const S c = problem.op.second_derivative_coeff;
  const auto grad = boundary_gradient(problem, state);
  for (std::size_t k = 0; k < ends.size(); ++k) {
    const auto& e = ends[k];
    out.push_back(c * e.fppb * grad[k] * grad[k] - e.fpb * e.fb);
  }
  return out;
}

template <class S>
CecCorrection<S> build_cec_q(const SplitProblem<S>& problem, int order,
                             const Vector<S>& state) {
  require_order(order);
  const auto ends = problem.boundary();
  const auto& x = problem.grid.node_positions;
  const int n = problem.grid.n_interior;

  CecCorrection<S> out;
  out.order = order;
  out.q_values.resize(n);
  for (const auto& e : ends) out.q_targets.push_back(e.fb);
  const bool one_sided = ends.size() == 1;

  // q(x) = p0 + p1 x + p2 x^2 + p3 x^3
  S p0{}, p1{}, p2{}, p3{};
  if (order == 2) {
    const S right = one_sided ? S(0) : ends[1].fb;
    p0 = ends[0].fb;
    p1 = right - p0;
  } else {
    out.aq_targets = boundary_af(problem, state);
    if (one_sided) {
      // sigma (a'(0) q(0) + a(0) q'(0)) = target, and q(1) = 0.
      const double sigma = problem.op.orientation;
      const auto& a = *problem.op.coefficient;
      p0 = ends[0].fb;
      p1 = (out.aq_targets[0] / S(sigma) - S(a.derivative(0.0)) * p0) / S(a.value(0.0));
      p2 = -p0 - p1;
    } else {
      // c q''(0) and c q''(1) match the targets.
      const S c = problem.op.second_derivative_coeff;
      const S d2_left = out.aq_targets[0] / c;
      const S d2_right = out.aq_targets[1] / c;
      p0 = ends[0].fb;
      p2 = d2_left / S(2);
      p3 = (d2_right - d2_left) / S(6);
      p1 = ends[1].fb - p0 - p2 - p3;
    }
  }
  for (int i = 0; i < n; ++i) {
    const S xi(x[i]);
    out.q_values[i] = p0 + xi * (p1 + xi * (p2 + xi * p3));
  }
  return out;
}

template <class S>
typename TdbcBoundaryPolynomial<S>::Coefficients tdbc_coefficients(int order, double tau, S b,
                                                                   S fb, S fpb, S af) {
  require_order(order);
  if (!(tau > 0.0)) throw ConfigError("tdbc_coefficients: tau must be positive");
  typename TdbcBoundaryPolynomial<S>::Coefficients c;
  c.c0 = b + S(tau / 2) * fb;
  c.c1 = -fb;
  if (order == 3) {
    c.c0 += S(tau * tau / 8) * fpb * fb;
    c.c1 += S(tau / 2) * af;
    c.c2 = S(-0.5) * af;
  }
  return c;
}

template <class S>
TdbcBoundaryPolynomial<S> tdbc_boundary(const SplitProblem<S>& problem, int order, double tau,
                                        const Vector<S>& state) {
  require_order(order);
  const auto ends = problem.boundary();
  std::vector<S> af(ends.size(), S(0));
  if (order == 3) af = boundary_af(problem, state);
  TdbcBoundaryPolynomial<S> out;
  for (std::size_t k = 0; k < ends.size(); ++k) {
    const auto& e = ends[k];
    out.endpoints.push_back(tdbc_coefficients<S>(order, tau, e.b, e.fb, e.fpb, af[k]));
  }
  return out;
}

#define SPLITBC_INSTANTIATE(S)                                                            \
  template std::vector<S> boundary_gradient(const SplitProblem<S>&, const Vector<S>&);    \
  template std::vector<S> boundary_af(const SplitProblem<S>&, const Vector<S>&);          \
  template CecCorrection<S> build_cec_q(const SplitProblem<S>&, int, const Vector<S>&);   \
  template TdbcBoundaryPolynomial<S>::Coefficients tdbc_coefficients(int, double, S, S, S, \
                                                                     S);                   \
  template TdbcBoundaryPolynomial<S> tdbc_boundary(const SplitProblem<S>&, int, double,   \
                                                   const Vector<S>&);

SPLITBC_INSTANTIATE(Real)
SPLITBC_INSTANTIATE(Complex)
#undef SPLITBC_INSTANTIATE

}  // namespace splitbc

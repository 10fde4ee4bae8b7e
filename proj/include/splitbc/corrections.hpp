#pragma once

#include <vector>

#include "splitbc/problem.hpp"

namespace splitbc {

/// A f(u) restricted to each constrained endpoint, with A u = -f(b) there.
///
/// Advection (A = sigma d/dx(a .)):
///   -f'(b) f(b) + sigma a'(0) (f(b) - f'(b) b).
/// Second-order operators (A = c d^2/dx^2):
///   c f''(b) (u_x)^2 - f'(b) f(b), with u_x from the one-sided
///   second-order stencil (-3 b + 4 u_1 - u_2) / (2h), mirrored on the right.
template <class S>
std::vector<S> boundary_af(const SplitProblem<S>& problem, const Vector<S>& state);

/// Second-order one-sided estimate of u_x at each constrained endpoint.
template <class S>
std::vector<S> boundary_gradient(const SplitProblem<S>& problem, const Vector<S>& state);

template <class S>
struct CecCorrection {
  Vector<S> q_values;
  int order = 2;
  std::vector<S> q_targets;   // q at each endpoint, = f(b)
  std::vector<S> aq_targets;  // A q at each endpoint (order 3 only)
};

/// Correction q with q = f(b) on the constrained boundary and, at order 3,
/// A q = A f(u) there. Lowest-degree polynomial in x:
///   order 2: linear interpolant (one-sided: f(b)(1 - x)),
///   order 3: cubic matching q and q'' at both ends (one-sided: quadratic
///            with q(0), A q(0) and q(1) = 0).
template <class S>
CecCorrection<S> build_cec_q(const SplitProblem<S>& problem, int order,
                             const Vector<S>& state);

/// True when build_cec_q depends on the state (gradient-based target).
template <class S>
bool cec_depends_on_state(const SplitProblem<S>& problem, int order) {
  return order == 3 && problem.op.kind != OperatorKind::Advection;
}

/// V(s) = c0 + c1 s + c2 s^2 on [0, tau] for every constrained endpoint.
template <class S>
struct TdbcBoundaryPolynomial {
  struct Coefficients {
    S c0{};
    S c1{};
    S c2{};
  };
  std::vector<Coefficients> endpoints;

  S value(std::size_t k, double s) const {
    const auto& c = endpoints.at(k);
    return c.c0 + S(s) * (c.c1 + S(s) * c.c2);
  }
};

/// Coefficients of the modified boundary datum for one endpoint.
///   order 2: b + (tau/2 - s) f(b)
///   order 3: b + tau/2 f(b) + tau^2/8 f'(b) f(b) - s f(b) + s (tau - s)/2 Af
template <class S>
typename TdbcBoundaryPolynomial<S>::Coefficients tdbc_coefficients(int order, double tau,
                                                                   S b, S fb, S fpb, S af);

template <class S>
TdbcBoundaryPolynomial<S> tdbc_boundary(const SplitProblem<S>& problem, int order, double tau,
                                        const Vector<S>& state);

}  // namespace splitbc

#pragma once

#include <vector>

#include "splitbc/problem.hpp"

namespace splitbc {

struct ReferenceConfig {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  long max_steps = 20'000'000;

  void validate() const;
};

/// Unsplit solution of u' = a0 u + g(b) + f(u) at T, by adaptive
/// Dormand-Prince 5(4) at the configured tolerances.
template <class S>
Vector<S> reference_solve(const SplitProblem<S>& problem, double T,
                          const ReferenceConfig& cfg = {});

/// Same, from an arbitrary start value, integrating exactly to each of the
/// increasing checkpoint times in turn.
template <class S>
std::vector<Vector<S>> reference_checkpoints(const SplitProblem<S>& problem,
                                             const Vector<S>& start,
                                             const std::vector<double>& times,
                                             const ReferenceConfig& cfg = {});

}  // namespace splitbc

#pragma once

#include <string>
#include <vector>

#include "splitbc/errors.hpp"
#include "splitbc/grid_ops.hpp"
#include "splitbc/reactions.hpp"

namespace splitbc {

/// du/dt = A u + f(u, x) with time-invariant Dirichlet data, semi-discretized.
template <class S>
struct SplitProblem {
  Grid1D grid;
  DiscreteOperator<S> op;
  Reaction reaction{ReactionKind::Zero};
  /// One value per constrained endpoint, ordered left then right.
  std::vector<S> boundary_values;
  Vector<S> initial;
  std::string initial_name;

  /// f, f_u, f_uu of the data at every constrained endpoint.
  struct Endpoint {
    double x = 0.0;
    S b{};
    S fb{};
    S fpb{};
    S fppb{};
  };
  std::vector<Endpoint> boundary() const;

  void validate() const;
};

template <class S>
std::vector<typename SplitProblem<S>::Endpoint> SplitProblem<S>::boundary() const {
  std::vector<Endpoint> out;
  out.reserve(boundary_values.size());
  for (std::size_t k = 0; k < boundary_values.size(); ++k) {
    Endpoint e;
    e.x = grid.endpoint(static_cast<int>(k));
    e.b = boundary_values[k];
    e.fb = reaction.f(e.b, e.x);
    e.fpb = reaction.f_u(e.b, e.x);
    e.fppb = reaction.f_uu(e.b, e.x);
    out.push_back(e);
  }
  return out;
}

template <class S>
void SplitProblem<S>::validate() const {
  const bool one_sided = grid.constrained_sides == ConstrainedSides::Left;
  if ((op.kind == OperatorKind::Advection) != one_sided) {
    throw ConfigError("advection needs a left-constrained grid, the others a two-sided one");
  }
  if (op.kind == OperatorKind::Dispersion && !is_complex_v<S>) {
    throw ConfigError("dispersion problems are complex-valued");
  }
  if (static_cast<int>(boundary_values.size()) != grid.num_constrained()) {
    throw DimensionError("expected " + std::to_string(grid.num_constrained()) +
                         " boundary values");
  }
  if (initial.size() != grid.n_interior || op.size() != grid.n_interior) {
    throw DimensionError("initial value / operator size does not match the grid");
  }
}

}  // namespace splitbc

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "splitbc/types.hpp"

namespace splitbc {

enum class ConstrainedSides {
  Both,  // Dirichlet data at x = 0 and x = 1
  Left,  // data at the inflow end x = 0 only; x = 1 is an unknown node
};

/// Uniform mesh on [0, 1].
///
/// Two-sided: unknowns at x_i = i h, i = 1..n, h = 1/(n+1).
/// Left-constrained: unknowns at x_i = i h, i = 1..n, h = 1/n, so the last
/// unknown sits on the outflow endpoint.
struct Grid1D {
  int n_interior = 0;
  double h = 0.0;
  std::vector<double> node_positions;
  ConstrainedSides constrained_sides = ConstrainedSides::Both;

  int size() const { return n_interior; }
  int num_constrained() const {
    return constrained_sides == ConstrainedSides::Both ? 2 : 1;
  }
  /// Coordinate of the k-th constrained endpoint (0 -> x = 0, 1 -> x = 1).
  double endpoint(int k) const { return k == 0 ? 0.0 : 1.0; }
};

Grid1D build_grid(int n, ConstrainedSides sides);

enum class OperatorKind { Diffusion, Advection, Dispersion };

std::string to_string(OperatorKind kind);
OperatorKind operator_kind_from_string(const std::string& name);

/// Named smooth coefficient a(x) with its derivative.
struct Coefficient {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

/// Orientation of the advection generator: A u = sigma * d/dx (a u).
/// sigma = -1 transports in +x so the data at x = 0 is inflow data.
inline constexpr double kAdvectionOrientation = -1.0;

/// Semi-discrete linear operator: A u ~ a0 * u + boundary_map * b.
template <class S>
struct DiscreteOperator {
  OperatorKind kind = OperatorKind::Diffusion;
  SparseMatrix<S> a0;
  /// n x (number of constrained sides); column k folds the k-th boundary value.
  SparseMatrix<S> boundary_map;
  /// The c in A = c d^2/dx^2 (diffusion: 1, dispersion: i). Unused for advection.
  S second_derivative_coeff = S(1);
  /// The sigma in A = sigma d/dx (a .). Unused for second-order operators.
  double orientation = 1.0;
  std::optional<Coefficient> coefficient;
  Vector<double> coeff_samples;

  int size() const { return static_cast<int>(a0.rows()); }
  Matrix<S> dense() const { return Matrix<S>(a0); }
  Vector<S> fold(std::span<const S> boundary_values) const;
};

DiscreteOperator<Real> diffusion_operator(const Grid1D& grid);
DiscreteOperator<Complex> dispersion_operator(const Grid1D& grid);
DiscreteOperator<Real> advection_operator(const Grid1D& grid, const Coefficient& a);

/// Promotes a real operator to the complex field (same stencil).
DiscreteOperator<Complex> to_complex(const DiscreteOperator<Real>& op);

/// a0 * values + boundary_map * boundary_values.
template <class S>
Vector<S> apply_affine(const DiscreteOperator<S>& op, const Vector<S>& values,
                       std::span<const S> boundary_values);

}  // namespace splitbc

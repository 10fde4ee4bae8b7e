#include "splitbc/grid_ops.hpp"

#include <cmath>
#include <string>

#include "splitbc/errors.hpp"

namespace splitbc {

Grid1D build_grid(int n, ConstrainedSides sides) {
  if (n < 4) {
    throw InvalidGridError("grid needs at least 4 unknowns, got " + std::to_string(n));
  }
  Grid1D g;
  g.n_interior = n;
  g.constrained_sides = sides;
  g.h = sides == ConstrainedSides::Both ? 1.0 / (n + 1) : 1.0 / n;
  g.node_positions.resize(n);
  for (int i = 0; i < n; ++i) g.node_positions[i] = (i + 1) * g.h;
  return g;
}

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::Diffusion: return "diffusion";
    case OperatorKind::Advection: return "advection";
    case OperatorKind::Dispersion: return "dispersion";
  }
  return "unknown";
}

OperatorKind operator_kind_from_string(const std::string& name) {
  if (name == "diffusion") return OperatorKind::Diffusion;
  if (name == "advection") return OperatorKind::Advection;
  if (name == "dispersion") return OperatorKind::Dispersion;
  throw RegistryError("unknown operator kind '" + name + "'");
}

template <class S>
Vector<S> DiscreteOperator<S>::fold(std::span<const S> boundary_values) const {
  if (static_cast<Eigen::Index>(boundary_values.size()) != boundary_map.cols()) {
    throw DimensionError("boundary fold: expected " + std::to_string(boundary_map.cols()) +
                         " boundary values, got " + std::to_string(boundary_values.size()));
  }
  const Eigen::Map<const Vector<S>> b(boundary_values.data(),
                                      static_cast<Eigen::Index>(boundary_values.size()));
  return boundary_map * b;
}

namespace {

template <class S>
DiscreteOperator<S> laplacian(const Grid1D& grid, S c, OperatorKind kind) {
  if (grid.constrained_sides != ConstrainedSides::Both) {
    throw InvalidGridError(to_string(kind) + " operator needs a two-sided grid");
  }
  const int n = grid.n_interior;
  const double inv_h2 = 1.0 / (grid.h * grid.h);
  std::vector<Eigen::Triplet<S>> entries;
  entries.reserve(3 * n);
  for (int i = 0; i < n; ++i) {
    if (i > 0) entries.emplace_back(i, i - 1, c * inv_h2);
    entries.emplace_back(i, i, c * (-2.0 * inv_h2));
    if (i + 1 < n) entries.emplace_back(i, i + 1, c * inv_h2);
  }
  DiscreteOperator<S> op;
  op.kind = kind;
  op.second_derivative_coeff = c;
  op.a0.resize(n, n);
  op.a0.setFromTriplets(entries.begin(), entries.end());
  op.boundary_map.resize(n, 2);
  std::vector<Eigen::Triplet<S>> bmap{{0, 0, c * inv_h2}, {n - 1, 1, c * inv_h2}};
  op.boundary_map.setFromTriplets(bmap.begin(), bmap.end());
  return op;
}

}  // namespace

DiscreteOperator<Real> diffusion_operator(const Grid1D& grid) {
  return laplacian<Real>(grid, 1.0, OperatorKind::Diffusion);
}

DiscreteOperator<Complex> dispersion_operator(const Grid1D& grid) {
  return laplacian<Complex>(grid, Complex(0.0, 1.0), OperatorKind::Dispersion);
}

DiscreteOperator<Real> advection_operator(const Grid1D& grid, const Coefficient& a) {
  if (grid.constrained_sides != ConstrainedSides::Left) {
    throw InvalidGridError("advection operator needs a left-constrained grid");
  }
  const int n = grid.n_interior;
  const double h = grid.h;
  const double sigma = kAdvectionOrientation;

  Vector<double> samples(n);
  for (int i = 0; i < n; ++i) samples[i] = a.value(grid.node_positions[i]);
  const double a_in = a.value(0.0);
  if (!(a_in > 0.0) || !(samples.array() > 0.0).all()) {
    throw UnsupportedCoefficientError("advection coefficient '" + a.name +
                                      "' must be positive on [0, 1]");
  }

  // Row i applies sigma * (3 w_i - 4 w_{i-1} + w_{i-2}) / (2h) to w = a u.
  // Row 1 falls back to the two-point upwind difference; row 2 reads the
  // boundary value in place of w_0.
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(3 * n);
  entries.emplace_back(0, 0, sigma * samples[0] / h);
  for (int i = 1; i < n; ++i) {
    entries.emplace_back(i, i, sigma * 3.0 * samples[i] / (2.0 * h));
    entries.emplace_back(i, i - 1, -sigma * 4.0 * samples[i - 1] / (2.0 * h));
    if (i >= 2) entries.emplace_back(i, i - 2, sigma * samples[i - 2] / (2.0 * h));
  }
  DiscreteOperator<Real> op;
  op.kind = OperatorKind::Advection;
  op.orientation = sigma;
  op.coefficient = a;
  op.coeff_samples = samples;
  op.a0.resize(n, n);
  op.a0.setFromTriplets(entries.begin(), entries.end());
  op.boundary_map.resize(n, 1);
  std::vector<Eigen::Triplet<double>> bmap{{0, 0, -sigma * a_in / h},
                                           {1, 0, sigma * a_in / (2.0 * h)}};
  op.boundary_map.setFromTriplets(bmap.begin(), bmap.end());
  return op;
}

DiscreteOperator<Complex> to_complex(const DiscreteOperator<Real>& op) {
  DiscreteOperator<Complex> out;
  out.kind = op.kind;
  out.a0 = op.a0.cast<Complex>();
  out.boundary_map = op.boundary_map.cast<Complex>();
  out.second_derivative_coeff = Complex(op.second_derivative_coeff, 0.0);
  out.orientation = op.orientation;
  out.coefficient = op.coefficient;
  out.coeff_samples = op.coeff_samples;
  return out;
}

template <class S>
Vector<S> apply_affine(const DiscreteOperator<S>& op, const Vector<S>& values,
                       std::span<const S> boundary_values) {
  if (values.size() != op.a0.cols()) {
    throw DimensionError("apply_affine: state has " + std::to_string(values.size()) +
                         " entries, operator expects " + std::to_string(op.a0.cols()));
  }
  return op.a0 * values + op.fold(boundary_values);
}

template struct DiscreteOperator<Real>;
template struct DiscreteOperator<Complex>;
template Vector<Real> apply_affine(const DiscreteOperator<Real>&, const Vector<Real>&,
                                   std::span<const Real>);
template Vector<Complex> apply_affine(const DiscreteOperator<Complex>&,
                                      const Vector<Complex>&, std::span<const Complex>);

}  // namespace splitbc

#include <cmath>
#include <numbers>

#include "splitbc/errors.hpp"
#include "splitbc/harness.hpp"

namespace splitbc {

using std::numbers::pi;

std::function<Complex(double)> initial_condition(const std::string& name) {
  if (name == "zero") return [](double) { return Complex(0.0); };
  if (name == "one_plus_x") return [](double x) { return Complex(1.0 + x); };
  if (name == "sin_pi") return [](double x) { return Complex(std::sin(pi * x)); };
  if (name == "one_plus_sin_pi") {
    return [](double x) { return Complex(1.0 + std::sin(pi * x)); };
  }
  if (name == "dispersion_ic") {
    return [](double x) { return Complex(1.0 + std::sin(pi * x), std::sin(2.0 * pi * x)); };
  }
  throw RegistryError("unknown initial condition '" + name + "'");
}

Coefficient coefficient_by_name(const std::string& name) {
  if (name == "one") return {name, [](double) { return 1.0; }, [](double) { return 0.0; }};
  if (name == "a1") {
    return {name, [](double x) { return 1.0 + std::sin(x); },
            [](double x) { return std::cos(x); }};
  }
  if (name == "a2") {
    return {name, [](double x) { return std::sin(pi * x / 2.0) + 0.4; },
            [](double x) { return pi / 2.0 * std::cos(pi * x / 2.0); }};
  }
  if (name == "a3") {
    return {name, [](double x) { return 1.5 - x; }, [](double) { return -1.0; }};
  }
  if (name == "a4") {
    return {name,
            [](double x) { return 0.2 + std::exp(-50.0 * (x - 0.5) * (x - 0.5)); },
            [](double x) {
              return -100.0 * (x - 0.5) * std::exp(-50.0 * (x - 0.5) * (x - 0.5));
            }};
  }
  if (name == "a5") {
    return {name, [](double x) { return 1.0 + std::sin(2.0 * pi * x) / 5.0; },
            [](double x) { return 2.0 * pi / 5.0 * std::cos(2.0 * pi * x); }};
  }
  throw RegistryError("unknown advection coefficient '" + name + "'");
}

namespace {

template <class S>
S narrow(Complex v, const char* what) {
  if constexpr (is_complex_v<S>) {
    return v;
  } else {
    if (v.imag() != 0.0) {
      throw ConfigError(std::string(what) + " is complex but the problem is real-valued");
    }
    return v.real();
  }
}

}  // namespace

template <class S>
SplitProblem<S> build_problem(const ProblemSpec& spec) {
  SplitProblem<S> p;
  const bool advection = spec.kind == OperatorKind::Advection;
  p.grid = build_grid(spec.n, advection ? ConstrainedSides::Left : ConstrainedSides::Both);

  if constexpr (is_complex_v<S>) {
    switch (spec.kind) {
      case OperatorKind::Diffusion: p.op = to_complex(diffusion_operator(p.grid)); break;
      case OperatorKind::Dispersion: p.op = dispersion_operator(p.grid); break;
      case OperatorKind::Advection:
        p.op = to_complex(advection_operator(p.grid, coefficient_by_name(spec.coefficient)));
        break;
    }
  } else {
    switch (spec.kind) {
      case OperatorKind::Diffusion: p.op = diffusion_operator(p.grid); break;
      case OperatorKind::Dispersion:
        throw ConfigError("dispersion problems are complex-valued");
      case OperatorKind::Advection:
        p.op = advection_operator(p.grid, coefficient_by_name(spec.coefficient));
        break;
    }
  }

  p.reaction = reaction_by_name(spec.reaction);
  p.boundary_values.push_back(narrow<S>(spec.b_left, "b_left"));
  if (!advection) p.boundary_values.push_back(narrow<S>(spec.b_right, "b_right"));

  const auto u0 = initial_condition(spec.initial);
  p.initial_name = spec.initial;
  p.initial.resize(p.grid.n_interior);
  for (int i = 0; i < p.grid.n_interior; ++i) {
    p.initial[i] = narrow<S>(u0(p.grid.node_positions[i]), "initial value");
  }
  p.validate();
  return p;
}

template SplitProblem<Real> build_problem(const ProblemSpec&);
template SplitProblem<Complex> build_problem(const ProblemSpec&);

}  // namespace splitbc

#include <doctest.h>

#include <cmath>
#include <memory>

#include "oracles.hpp"
#include "splitbc/harness.hpp"

using namespace splitbc;

namespace {

ProblemSpec spec(OperatorKind kind, int n, const std::string& reaction, double b,
                 const std::string& initial) {
  ProblemSpec s;
  s.kind = kind;
  s.n = n;
  s.coefficient = "a1";
  s.reaction = reaction;
  s.b_left = b;
  s.b_right = b;
  s.initial = initial;
  return s;
}

template <class S>
double diff(const Vector<S>& a, const Vector<S>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_SUITE("stepper") {

TEST_CASE("scheme and step rule names") {
  for (Scheme s : {Scheme::Unmodified, Scheme::Tdbc2, Scheme::Tdbc3, Scheme::Cec2, Scheme::Cec3})
    CHECK(scheme_from_string(to_string(s)) == s);
  CHECK_THROWS_AS(scheme_from_string("cec4"), RegistryError);
  for (StepRule r : {StepRule::Shorten, StepRule::Overshoot, StepRule::Uniform})
    CHECK(step_rule_from_string(to_string(r)) == r);
  CHECK_THROWS_AS(step_rule_from_string("round"), RegistryError);
}

TEST_CASE("step times") {
  using SS = StrangSplitting<double>;
  const auto shorten = SS::step_times(0.25, 0.064, StepRule::Shorten);
  REQUIRE(shorten.size() == 4);
  CHECK(shorten[2] == doctest::Approx(0.192));
  CHECK(shorten[3] == 0.25);
  CHECK(shorten[3] - shorten[2] == doctest::Approx(0.058));

  const auto over = SS::step_times(0.25, 0.064, StepRule::Overshoot);
  REQUIRE(over.size() == 4);
  CHECK(over[3] == doctest::Approx(0.256));
  CHECK(SS::end_time(0.25, 0.064, StepRule::Overshoot) == doctest::Approx(0.256));

  const auto uni = SS::step_times(0.25, 0.064, StepRule::Uniform);
  REQUIRE(uni.size() == 4);
  CHECK(uni[0] == doctest::Approx(0.0625));
  CHECK(uni[3] == 0.25);

  for (StepRule r : {StepRule::Shorten, StepRule::Overshoot, StepRule::Uniform}) {
    const auto even = SS::step_times(0.25, 0.05, r);
    CHECK(even.size() == 5);
    CHECK(even.back() == doctest::Approx(0.25).epsilon(1e-14));
  }
}

TEST_CASE("pure linear subflow obeys the semigroup property") {
  auto p = std::make_shared<const SplitProblem<Real>>(
      build_problem<Real>(spec(OperatorKind::Diffusion, 40, "zero", 1.0, "sin_pi")));
  for (Scheme s : {Scheme::Unmodified, Scheme::Tdbc3, Scheme::Cec3}) {
    StrangSplitting<Real> split(p, SchemeConfig{s});
    const Vector<double> one = split.step(p->initial, 0.02);
    const Vector<double> two = split.step(split.step(p->initial, 0.01), 0.01);
    CHECK(diff(one, two) <= 1e-10);
  }
}

TEST_CASE("no order reduction with homogeneous data and compatible f") {
  // f = u + q(x) is linear, vanishes on the boundary and does not commute with A
  auto p = build_problem<Real>(spec(OperatorKind::Diffusion, 50, "u_plus_q", 0.0, "sin_pi"));
  std::vector<double> err;
  for (double tau : {0.02, 0.01}) {
    const Vector<double> ref = reference_solve(p, tau);
    err.push_back(diff(strang_step(p, SchemeConfig{}, p.initial, tau), ref));
  }
  CHECK(oracle::slope(err[0], err[1]) >= 2.9);
}

TEST_CASE("one TDBC2 step on the exponential diffusion problem") {
  auto p = build_problem<Real>(
      spec(OperatorKind::Diffusion, 200, "exp_um1", 1.0, "one_plus_sin_pi"));
  const double tau = 1.6e-2;
  const double err = diff(strang_step(p, SchemeConfig{Scheme::Tdbc2}, p.initial, tau),
                          reference_solve(p, tau));
  CHECK(err >= 1.25e-4 / 3);
  CHECK(err <= 1.25e-4 * 3);
}

TEST_CASE("corrections coincide when f(b) = 0") {
  auto p = std::make_shared<const SplitProblem<Real>>(
      build_problem<Real>(spec(OperatorKind::Diffusion, 40, "u_plus_1", -1.0, "zero")));
  const Vector<double> u0 = StrangSplitting<Real>(p, SchemeConfig{}).step(p->initial, 0.01);
  const Vector<double> a = StrangSplitting<Real>(p, SchemeConfig{Scheme::Unmodified}).step(u0, 0.01);
  const Vector<double> b = StrangSplitting<Real>(p, SchemeConfig{Scheme::Tdbc2}).step(u0, 0.01);
  const Vector<double> c = StrangSplitting<Real>(p, SchemeConfig{Scheme::Cec2}).step(u0, 0.01);
  CHECK(diff(a, b) <= 1e-12);
  CHECK(diff(a, c) <= 1e-12);
}

TEST_CASE("linear problems are integrated exactly") {
  ReferenceConfig rc;
  {
    auto p = build_problem<Real>(spec(OperatorKind::Diffusion, 60, "zero", 1.0, "sin_pi"));
    for (Scheme s : {Scheme::Unmodified, Scheme::Tdbc2, Scheme::Cec3})
      CHECK(diff(integrate(p, SchemeConfig{s}, 0.1, 0.03), reference_solve(p, 0.1, rc)) <= 1e-9);
  }
  {
    auto p = build_problem<Real>(spec(OperatorKind::Advection, 80, "zero", 1.0, "one_plus_x"));
    CHECK(diff(integrate(p, SchemeConfig{}, 0.3, 0.1), reference_solve(p, 0.3, rc)) <= 1e-9);
  }
  {
    auto p = build_problem<Complex>(
        spec(OperatorKind::Dispersion, 40, "zero", 1.0, "dispersion_ic"));
    CHECK(diff(integrate(p, SchemeConfig{Scheme::Tdbc3}, 0.02, 0.005),
               reference_solve(p, 0.02, rc)) <= 1e-9);
  }
}

TEST_CASE("trajectory and determinism") {
  auto p = std::make_shared<const SplitProblem<Real>>(build_problem<Real>(
      spec(OperatorKind::Diffusion, 40, "exp_um1", 1.0, "one_plus_sin_pi")));
  SchemeConfig cfg{Scheme::Cec3, StepRule::Shorten};
  StrangSplitting<Real> split(p, cfg);
  std::vector<State<Real>> traj;
  const Vector<double> end = split.integrate(0.1, 0.03, &traj);
  REQUIRE(traj.size() == 5);
  CHECK(traj.front().time == 0.0);
  CHECK(traj.back().time == doctest::Approx(0.1));
  CHECK(traj.back().values == end);
  CHECK(StrangSplitting<Real>(p, cfg).integrate(0.1, 0.03) == end);

  cfg.step_rule = StepRule::Overshoot;
  std::vector<State<Real>> over;
  StrangSplitting<Real>(p, cfg).integrate(0.1, 0.03, &over);
  CHECK(over.back().time == doctest::Approx(0.12));

  CHECK_THROWS_AS(split.step(p->initial, 0.0), ConfigError);
  CHECK_THROWS_AS(split.step(Vector<double>::Zero(3), 0.01), DimensionError);
}

}

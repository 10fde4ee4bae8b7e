#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "splitbc/errors.hpp"
#include "splitbc/grid_ops.hpp"
#include "splitbc/phi_flow.hpp"

using namespace splitbc;

namespace {

double max_abs(const Matrix<double>& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("phi_flow") {

TEST_CASE("matrix exponential") {
  const Matrix<double> z = Matrix<double>::Zero(4, 4);
  CHECK(max_abs(matrix_exponential(z) - Matrix<double>::Identity(4, 4)) == 0.0);

  Matrix<double> d = Matrix<double>::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  const Matrix<double> ed = matrix_exponential(d);
  CHECK(std::abs(ed(0, 0) - std::exp(1.0)) <= 1e-13 * std::exp(1.0));
  CHECK(std::abs(ed(1, 1) - std::exp(2.0)) <= 1e-13 * std::exp(2.0));
  CHECK(std::abs(ed(0, 1)) <= 1e-15);

  for (unsigned seed = 1; seed <= 5; ++seed) {
    const Matrix<double> m = oracle::random_matrix(8, 1.0, seed);
    const Matrix<double> ref = oracle::taylor_exp(m);
    CHECK(max_abs(matrix_exponential(m) - ref) <= 1e-12 * max_abs(ref));
  }

  Matrix<double> bad = Matrix<double>::Zero(2, 2);
  bad(0, 1) = std::nan("");
  CHECK_THROWS_AS(matrix_exponential(bad), NumericError);
}

TEST_CASE("complex exponential of a large-norm matrix") {
  const Grid1D g = build_grid(30, ConstrainedSides::Both);
  const Matrix<Complex> a = dispersion_operator(g).dense();
  const double t = 1e-3;
  // exp(t a) is unitary here: i times a real symmetric matrix
  const Matrix<Complex> e = matrix_exponential(Matrix<Complex>(t * a));
  const Matrix<Complex> gram = e.adjoint() * e;
  CHECK((gram - Matrix<Complex>::Identity(30, 30)).cwiseAbs().maxCoeff() <= 1e-12);

  // squaring the Taylor series of exp(t a / 2^s)
  Matrix<Complex> ref = oracle::taylor_exp(Matrix<Complex>(t * a / 1024.0));
  for (int s = 0; s < 10; ++s) ref = ref * ref;
  CHECK((e - ref).cwiseAbs().maxCoeff() <= 1e-11);
}

TEST_CASE("phi family at zero and scalar closed form") {
  const PhiFamily<double> f0 = phi_family(Matrix<double>(Matrix<double>::Zero(3, 3)), 1.0);
  const Matrix<double> id = Matrix<double>::Identity(3, 3);
  CHECK(max_abs(f0[0] - id) <= 1e-15);
  CHECK(max_abs(f0[1] - id) <= 1e-15);
  CHECK(max_abs(f0[2] - id / 2.0) <= 1e-15);
  CHECK(max_abs(f0[3] - id / 6.0) <= 1e-15);

  const Matrix<double> m1 = Matrix<double>::Constant(1, 1, -1.0);
  const PhiFamily<double> f1 = phi_family(m1, 1.0);
  CHECK(f1[1](0, 0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  CHECK(f1[2](0, 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));  // (e^z - 1 - z)/z^2
  CHECK(f1[3](0, 0) == doctest::Approx(0.5 - std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("phi recurrence residual on random matrices") {
  for (unsigned seed = 10; seed < 16; ++seed) {
    const Matrix<double> a = oracle::random_matrix(8, 3.0, seed);
    for (double t : {0.05, 0.7, 4.0}) {
      const PhiFamily<double> f = phi_family(a, t);
      const Matrix<double> id = Matrix<double>::Identity(8, 8);
      double fact = 1.0;
      for (int k = 0; k < 3; ++k) {
        if (k > 0) fact *= k;
        const Matrix<double> res = t * a * f[k + 1] + id / fact - f[k];
        CHECK(max_abs(res) <= 1e-11 * max_abs(f[k]));
      }
      CHECK(max_abs(f[0] - matrix_exponential(Matrix<double>(t * a))) <= 1e-12 * max_abs(f[0]));
    }
  }
}

TEST_CASE("doubling agrees with direct evaluation") {
  const Grid1D g = build_grid(40, ConstrainedSides::Both);
  const Matrix<double> a = diffusion_operator(g).dense();
  const PhiFamily<double> half = phi_family(a, 2e-3);
  const PhiFamily<double> doubled = phi_family_doubled(half);
  const PhiFamily<double> direct = phi_family(a, 4e-3);
  CHECK(doubled.t == 4e-3);
  for (int k = 0; k <= 3; ++k) CHECK(max_abs(doubled[k] - direct[k]) <= 1e-12 * max_abs(direct[k]));

  PhiCache<double> cache(a);
  const auto p1 = cache.get(2e-3);
  const auto p2 = cache.get(2e-3);
  CHECK(p1.get() == p2.get());
  cache.get(4e-3);
  CHECK(cache.size() == 2);
}

TEST_CASE("propagation with polynomial sources") {
  const Matrix<double> z = Matrix<double>::Zero(3, 3);
  const Vector<double> w0 = oracle::random_vector(3, 3);
  PolynomialSource<double> src;
  src.g0 = oracle::random_vector(3, 4);
  const double t = 0.7;
  CHECK((propagate_polynomial_source(z, w0, t, src) - (w0 + t * src.g0)).cwiseAbs().maxCoeff() <= 1e-15);
  src.g1 = oracle::random_vector(3, 5);
  src.g2 = oracle::random_vector(3, 6);
  const Vector<double> exact = w0 + t * src.g0 + t * t / 2 * src.g1 + t * t * t / 3 * src.g2;
  CHECK((propagate_polynomial_source(z, w0, t, src) - exact).cwiseAbs().maxCoeff() <= 1e-14);

  // stable 5x5 against a fine RK4 integration
  for (unsigned seed = 20; seed < 24; ++seed) {
    Matrix<double> a = oracle::random_matrix(5, 2.0, seed) - 3.0 * Matrix<double>::Identity(5, 5);
    PolynomialSource<double> s;
    s.g0 = oracle::random_vector(5, seed + 100);
    s.g1 = oracle::random_vector(5, seed + 200);
    s.g2 = oracle::random_vector(5, seed + 300);
    const Vector<double> u0 = oracle::random_vector(5, seed + 400);
    const std::function<Vector<double>(double, const Vector<double>&)> rhs =
        [&](double tt, const Vector<double>& w) -> Vector<double> {
      return a * w + s.g0 + tt * s.g1 + tt * tt * s.g2;
    };
    const Vector<double> ref = oracle::rk4(rhs, u0, 0.1, 2000);
    CHECK((propagate_polynomial_source(a, u0, 0.1, s) - ref).cwiseAbs().maxCoeff() <= 1e-10);
  }

  PolynomialSource<double> wrong;
  wrong.g0 = Vector<double>::Zero(4);
  CHECK_THROWS_AS(propagate_polynomial_source(z, w0, t, wrong), DimensionError);
}

TEST_CASE("semigroup property") {
  const Grid1D g = build_grid(50, ConstrainedSides::Both);
  const Matrix<double> a = diffusion_operator(g).dense();
  const Vector<double> u0 = oracle::random_vector(50, 7);
  const PolynomialSource<double> none;
  const Vector<double> once = propagate_polynomial_source(a, u0, 2e-3, none);
  const Vector<double> twice = propagate_polynomial_source(
      a, propagate_polynomial_source(a, u0, 1e-3, none), 1e-3, none);
  CHECK((once - twice).cwiseAbs().maxCoeff() <= 1e-10 * once.cwiseAbs().maxCoeff());
}

}

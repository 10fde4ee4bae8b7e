#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "splitbc/errors.hpp"
#include "splitbc/types.hpp"

namespace splitbc {

struct Dopri5Options {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  long max_steps = 20'000'000;
  double initial_step = 0.0;  // 0 selects the step automatically
};

namespace detail {

inline double error_ratio(double err, double y0, double y1, double atol, double rtol) {
  return std::abs(err) / (atol + rtol * std::max(std::abs(y0), std::abs(y1)));
}

inline double error_ratio(const Complex& err, const Complex& y0, const Complex& y1,
                          double atol, double rtol) {
  return std::abs(err) / (atol + rtol * std::max(std::abs(y0), std::abs(y1)));
}

template <class S>
double error_ratio(const Vector<S>& err, const Vector<S>& y0, const Vector<S>& y1,
                   double atol, double rtol) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double scale = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = std::abs(err[i]) / scale;
    if (!(r <= worst)) worst = r;  // propagates NaN
  }
  return worst;
}

inline double sup_norm(double v) { return std::abs(v); }
inline double sup_norm(const Complex& v) { return std::abs(v); }
template <class S>
double sup_norm(const Vector<S>& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

}  // namespace detail

/// Dormand-Prince 5(4) with FSAL and a proportional-integral step controller.
///
/// The error of each step is measured in the maximum norm against
/// abs_tol + rel_tol * |y|. Calls to advance() may be chained to hit a
/// sequence of output times exactly; the controller state carries over.
template <class State, class Rhs>
class Dopri5 {
 public:
  Dopri5(Rhs rhs, Dopri5Options options) : rhs_(std::move(rhs)), opt_(options) {}

  void advance(double& t, State& y, double t_end) {
    if (t_end <= t) return;
    if (!have_k1_) {
      k1_ = rhs_(t, y);
      have_k1_ = true;
      h_ = opt_.initial_step > 0.0 ? opt_.initial_step : initial_step(t, y, t_end - t);
    }
    bool last_rejected = false;
    while (t < t_end) {
      if (++steps_ > opt_.max_steps) {
        throw ConvergenceError("adaptive Runge-Kutta: exceeded " +
                               std::to_string(opt_.max_steps) + " steps");
      }
      const double remaining = t_end - t;
      bool hits_end = false;
      double h = h_;
      if (h >= remaining) {
        h = remaining;
        hits_end = true;
      }
      if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
        throw ConvergenceError("adaptive Runge-Kutta: step size underflow at t = " +
                               std::to_string(t));
      }

      const State k2 = rhs_(t + c2 * h, State(y + h * (a21 * k1_)));
      const State k3 = rhs_(t + c3 * h, State(y + h * (a31 * k1_ + a32 * k2)));
      const State k4 = rhs_(t + c4 * h, State(y + h * (a41 * k1_ + a42 * k2 + a43 * k3)));
      const State k5 =
          rhs_(t + c5 * h, State(y + h * (a51 * k1_ + a52 * k2 + a53 * k3 + a54 * k4)));
      const State k6 = rhs_(
          t + h, State(y + h * (a61 * k1_ + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
      State y_new = y + h * (a71 * k1_ + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
      const double t_new = hits_end ? t_end : t + h;
      State k7 = rhs_(t_new, y_new);
      const State err =
          h * (e1 * k1_ + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      double ratio = detail::error_ratio(err, y, y_new, opt_.abs_tol, opt_.rel_tol);
      if (!std::isfinite(ratio) || !std::isfinite(detail::sup_norm(y_new))) {
        h_ = 0.25 * h;
        last_rejected = true;
        continue;
      }

      const double fac11 = std::pow(std::max(ratio, 1e-300), expo1);
      if (ratio <= 1.0) {
        double fac = fac11 / std::pow(err_old_, beta);
        fac = std::clamp(fac / safe, 1.0 / fac_max_increase, 1.0 / fac_min_decrease);
        double h_new = h / fac;
        if (last_rejected) h_new = std::min(h_new, h);
        err_old_ = std::max(ratio, 1e-4);
        t = t_new;
        y = std::move(y_new);
        k1_ = std::move(k7);
        ++accepted_;
        last_rejected = false;
        // A step clipped to hit t_end says little about the next one; keep the
        // previous proposal if it was larger.
        h_ = hits_end ? std::max(h_new, h_) : h_new;
      } else {
        h_ = h / std::min(1.0 / fac_min_decrease, fac11 / safe);
        last_rejected = true;
      }
    }
  }

  long steps() const { return steps_; }
  long accepted() const { return accepted_; }

 private:
  double initial_step(double t, const State& y, double span) {
    const double d0 = detail::sup_norm(y);
    const double d1 = detail::sup_norm(k1_);
    const double tol = opt_.abs_tol + opt_.rel_tol * d0;
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, span);
    const State y1 = y + h0 * k1_;
    const State f1 = rhs_(t + h0, y1);
    const double d2 = detail::sup_norm(State(f1 - k1_)) / h0;
    const double dmax = std::max(d1, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                    : std::pow(0.01 * tol / dmax, 0.2);
    return std::min({100.0 * h0, h1, span});
  }

  static constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
  static constexpr double a21 = 0.2;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                          a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                          a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                          a65 = -5103.0 / 18656.0;
  static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                          a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
  static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                          e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
  static constexpr double beta = 0.04;
  static constexpr double expo1 = 0.2 - beta * 0.75;
  static constexpr double safe = 0.9;
  static constexpr double fac_min_decrease = 0.2;
  static constexpr double fac_max_increase = 10.0;

  Rhs rhs_;
  Dopri5Options opt_;
  State k1_{};
  bool have_k1_ = false;
  double h_ = 0.0;
  double err_old_ = 1e-4;
  long steps_ = 0;
  long accepted_ = 0;
};

template <class State, class Rhs>
Dopri5<State, Rhs> make_dopri5(Rhs rhs, Dopri5Options options) {
  return Dopri5<State, Rhs>(std::move(rhs), options);
}

}  // namespace splitbc

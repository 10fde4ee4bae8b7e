#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "splitbc/dopri5.hpp"
#include "splitbc/types.hpp"

namespace splitbc {

enum class ReactionKind {
  Zero,        // f = 0
  Linear,      // f = u
  UPlus1,      // f = u + 1
  UPlusP,      // f = u + x(1 - x)
  UPlusQ,      // f = u + (x - 1) x (-1 - x + x^2)
  UPlusX,      // f = u + x
  UPlusX2,     // f = u + x^2
  ExpUm1,      // f = e^{u - 1}
  SqrtUp1,     // f = sqrt(u + 1)
  ExpU5,       // f = e^{u / 5}
  Log2pU,      // f = log(2 + u)
  ArsinhHalf,  // f = 1/2 + arsinh(u)
  CosU,        // f = cos(u)
};

/// Autonomous, spatially uncoupled reaction f(u, x) with analytic u-derivatives.
class Reaction {
 public:
  explicit Reaction(ReactionKind kind) : kind_(kind) {}

  ReactionKind kind() const { return kind_; }
  std::string name() const;

  template <class S>
  S f(S u, double x) const;
  template <class S>
  S f_u(S u, double x) const;
  template <class S>
  S f_uu(S u, double x) const;

  /// Closed-form flow is registered for the affine family and e^{u-1}.
  bool has_exact_flow() const;

  /// Exact solution of w' = f(w, x), w(0) = u0, at time t. Throws
  /// FlowDomainError when t leaves the flow's domain.
  template <class S>
  S exact_flow(S u0, double t, double x) const;

  /// Real-valued domain of f (sqrt and log have one).
  bool in_domain(double u) const;

 private:
  // The x-only part c(x) of the affine reactions f = u + c(x).
  double affine_offset(double x) const;
  bool is_affine() const;

  ReactionKind kind_;
};

/// Registry names: zero, linear_u, u_plus_1, u_plus_p, u_plus_q, u_plus_x,
/// u_plus_x2, exp_um1, sqrt_up1, exp_u5, log_2pu, arsinh_half, cos_u.
/// f1..f5 alias sqrt_up1, exp_u5, log_2pu, arsinh_half, cos_u.
Reaction reaction_by_name(const std::string& name);
std::vector<std::string> reaction_names();

/// p(x) = x(1 - x) and q(x) = (x - 1) x (-1 - x + x^2).
double reaction_p(double x);
double reaction_q(double x);

/// Right-hand side f(w_i, x_i) - q_i at every node.
template <class S>
struct ShiftedReaction {
  Reaction base;
  std::vector<double> nodes;
  Vector<S> shift;  // empty means zero

  bool has_shift() const { return shift.size() != 0; }
};

struct FlowOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
};

/// Pointwise flow of w' = f(w, x_i) - q_i over time t.
template <class S>
Vector<S> reaction_flow(const Vector<S>& values, double t, const ShiftedReaction<S>& r,
                        const FlowOptions& options = {});

struct DerivativeDeviation {
  double first = 0.0;   // max |f_u - FD(f)|
  double second = 0.0;  // max |f_uu - FD(f_u)|
};

/// Centered-difference check of f_u and f_uu at (u, x) samples.
DerivativeDeviation check_derivatives(const Reaction& r,
                                      std::span<const std::pair<double, double>> samples);

// ---------------------------------------------------------------------------

inline double reaction_p(double x) { return x * (1.0 - x); }
inline double reaction_q(double x) { return (x - 1.0) * x * (-1.0 - x + x * x); }

inline bool Reaction::is_affine() const {
  switch (kind_) {
    case ReactionKind::UPlus1:
    case ReactionKind::UPlusP:
    case ReactionKind::UPlusQ:
    case ReactionKind::UPlusX:
    case ReactionKind::UPlusX2:
    case ReactionKind::Linear:
      return true;
    default:
      return false;
  }
}

inline double Reaction::affine_offset(double x) const {
  switch (kind_) {
    case ReactionKind::UPlus1: return 1.0;
    case ReactionKind::UPlusP: return reaction_p(x);
    case ReactionKind::UPlusQ: return reaction_q(x);
    case ReactionKind::UPlusX: return x;
    case ReactionKind::UPlusX2: return x * x;
    default: return 0.0;
  }
}

template <class S>
S Reaction::f(S u, double x) const {
  using std::asinh, std::cos, std::exp, std::log, std::sqrt;
  if (is_affine()) return u + S(affine_offset(x));
  switch (kind_) {
    case ReactionKind::Zero: return S(0);
    case ReactionKind::ExpUm1: return exp(u - S(1));
    case ReactionKind::SqrtUp1: return sqrt(u + S(1));
    case ReactionKind::ExpU5: return exp(u / S(5));
    case ReactionKind::Log2pU: return log(S(2) + u);
    case ReactionKind::ArsinhHalf: return S(0.5) + asinh(u);
    case ReactionKind::CosU: return cos(u);
    default: return S(0);
  }
}

template <class S>
S Reaction::f_u(S u, double) const {
  using std::cos, std::exp, std::sin, std::sqrt;
  if (is_affine()) return S(1);
  switch (kind_) {
    case ReactionKind::Zero: return S(0);
    case ReactionKind::ExpUm1: return exp(u - S(1));
    case ReactionKind::SqrtUp1: return S(0.5) / sqrt(u + S(1));
    case ReactionKind::ExpU5: return exp(u / S(5)) / S(5);
    case ReactionKind::Log2pU: return S(1) / (S(2) + u);
    case ReactionKind::ArsinhHalf: return S(1) / sqrt(S(1) + u * u);
    case ReactionKind::CosU: return -sin(u);
    default: return S(0);
  }
}

template <class S>
S Reaction::f_uu(S u, double) const {
  using std::cos, std::exp, std::sqrt;
  if (is_affine()) return S(0);
  switch (kind_) {
    case ReactionKind::Zero: return S(0);
    case ReactionKind::ExpUm1: return exp(u - S(1));
    case ReactionKind::SqrtUp1: return S(-0.25) / ((u + S(1)) * sqrt(u + S(1)));
    case ReactionKind::ExpU5: return exp(u / S(5)) / S(25);
    case ReactionKind::Log2pU: return S(-1) / ((S(2) + u) * (S(2) + u));
    case ReactionKind::ArsinhHalf: {
      const S r = S(1) + u * u;
      return -u / (r * sqrt(r));
    }
    case ReactionKind::CosU: return -cos(u);
    default: return S(0);
  }
}

inline bool Reaction::has_exact_flow() const {
  return is_affine() || kind_ == ReactionKind::Zero || kind_ == ReactionKind::ExpUm1;
}

}  // namespace splitbc

#include "splitbc/reactions.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "splitbc/errors.hpp"

namespace splitbc {

namespace {

struct RegistryEntry {
  const char* name;
  ReactionKind kind;
};

constexpr std::array<RegistryEntry, 18> kRegistry = {{
    {"zero", ReactionKind::Zero},
    {"linear_u", ReactionKind::Linear},
    {"u_plus_1", ReactionKind::UPlus1},
    {"u_plus_p", ReactionKind::UPlusP},
    {"u_plus_q", ReactionKind::UPlusQ},
    {"u_plus_x", ReactionKind::UPlusX},
    {"u_plus_x2", ReactionKind::UPlusX2},
    {"exp_um1", ReactionKind::ExpUm1},
    {"sqrt_up1", ReactionKind::SqrtUp1},
    {"exp_u5", ReactionKind::ExpU5},
    {"log_2pu", ReactionKind::Log2pU},
    {"arsinh_half", ReactionKind::ArsinhHalf},
    {"cos_u", ReactionKind::CosU},
    {"f1", ReactionKind::SqrtUp1},
    {"f2", ReactionKind::ExpU5},
    {"f3", ReactionKind::Log2pU},
    {"f4", ReactionKind::ArsinhHalf},
    {"f5", ReactionKind::CosU},
}};

}  // namespace

std::string Reaction::name() const {
  for (const auto& e : kRegistry) {
    if (e.kind == kind_) return e.name;
  }
  return "unknown";
}

Reaction reaction_by_name(const std::string& name) {
  for (const auto& e : kRegistry) {
    if (name == e.name) return Reaction(e.kind);
  }
  throw RegistryError("unknown reaction '" + name + "'");
}

std::vector<std::string> reaction_names() {
  std::vector<std::string> out;
  for (const auto& e : kRegistry) out.emplace_back(e.name);
  return out;
}

bool Reaction::in_domain(double u) const {
  switch (kind_) {
    case ReactionKind::SqrtUp1: return u > -1.0;
    case ReactionKind::Log2pU: return u > -2.0;
    default: return std::isfinite(u);
  }
}

template <class S>
S Reaction::exact_flow(S u0, double t, double x) const {
  using std::exp, std::log;
  if (kind_ == ReactionKind::Zero) return u0;
  if (is_affine()) {
    // (u0 + c) e^t - c
    const S c(affine_offset(x));
    return (u0 + c) * S(std::exp(t)) - c;
  }
  if (kind_ == ReactionKind::ExpUm1) {
    // e^{-(w-1)} decreases linearly in time: w(t) = 1 - log(e^{1-u0} - t).
    const S z0 = exp(S(1) - u0);
    const S arg = z0 - S(t);
    if constexpr (is_complex_v<S>) {
      // The segment z0 - s, s in [0, t], meets the principal branch cut only
      // when it stays on the real axis and reaches the origin.
      if (z0.imag() == 0.0 && arg.real() <= 0.0) {
        throw FlowDomainError("exp_um1 flow leaves its domain (branch cut)");
      }
    } else {
      if (!(arg > 0.0)) {
        throw FlowDomainError("exp_um1 flow blows up before t = " + std::to_string(t));
      }
    }
    return S(1) - log(arg);
  }
  throw ConfigError("reaction '" + name() + "' has no closed-form flow");
}

template <class S>
Vector<S> reaction_flow(const Vector<S>& values, double t, const ShiftedReaction<S>& r,
                        const FlowOptions& options) {
  if (t < 0.0) throw ConfigError("reaction_flow: negative duration");
  const Eigen::Index n = values.size();
  if (static_cast<Eigen::Index>(r.nodes.size()) != n ||
      (r.has_shift() && r.shift.size() != n)) {
    throw DimensionError("reaction_flow: state, nodes and shift lengths differ");
  }
  Vector<S> out = values;
  if (t == 0.0) return out;

  const Reaction& f = r.base;
  if (!r.has_shift() && f.has_exact_flow()) {
    for (Eigen::Index i = 0; i < n; ++i) out[i] = f.exact_flow(values[i], t, r.nodes[i]);
    return out;
  }

  Dopri5Options opt;
  opt.abs_tol = options.abs_tol;
  opt.rel_tol = options.rel_tol;
  opt.max_steps = 1'000'000;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = r.nodes[i];
    const S q = r.has_shift() ? r.shift[i] : S(0);
    auto rhs = [&f, x, q](double, S w) { return f.f(w, x) - q; };
    if (f.f(values[i], x) - q == S(0)) continue;  // stationary point
    auto solver = make_dopri5<S>(rhs, opt);
    double time = 0.0;
    S w = values[i];
    solver.advance(time, w, t);
    if (!std::isfinite(std::abs(w))) {
      throw FlowDomainError("reaction flow became non-finite at x = " + std::to_string(x));
    }
    out[i] = w;
  }
  return out;
}

DerivativeDeviation check_derivatives(const Reaction& r,
                                      std::span<const std::pair<double, double>> samples) {
  DerivativeDeviation dev;
  constexpr double h = 1e-5;
  for (const auto& [u, x] : samples) {
    if (!r.in_domain(u - h) || !r.in_domain(u + h)) {
      throw DomainError("check_derivatives: u = " + std::to_string(u) +
                        " outside the domain of " + r.name());
    }
    const double fd1 = (r.f(u + h, x) - r.f(u - h, x)) / (2.0 * h);
    const double fd2 = (r.f_u(u + h, x) - r.f_u(u - h, x)) / (2.0 * h);
    dev.first = std::max(dev.first, std::abs(r.f_u(u, x) - fd1));
    dev.second = std::max(dev.second, std::abs(r.f_uu(u, x) - fd2));
  }
  return dev;
}

template Real Reaction::exact_flow(Real, double, double) const;
template Complex Reaction::exact_flow(Complex, double, double) const;
template Vector<Real> reaction_flow(const Vector<Real>&, double, const ShiftedReaction<Real>&,
                                    const FlowOptions&);
template Vector<Complex> reaction_flow(const Vector<Complex>&, double,
                                       const ShiftedReaction<Complex>&, const FlowOptions&);

}  // namespace splitbc

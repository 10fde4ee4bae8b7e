#pragma once

#include <memory>
#include <string>
#include <vector>

#include "splitbc/corrections.hpp"
#include "splitbc/phi_flow.hpp"
#include "splitbc/problem.hpp"

namespace splitbc {

enum class Scheme { Unmodified, Tdbc2, Tdbc3, Cec2, Cec3 };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

/// How integrate() handles T that is not a multiple of tau.
///   Shorten:   full steps, then one shortened step landing on T.
///   Overshoot: ceil(T/tau) full steps; the run ends at or just after T.
///   Uniform:   ceil(T/tau) equal steps of length T / ceil(T/tau).
enum class StepRule { Shorten, Overshoot, Uniform };

std::string to_string(StepRule rule);
StepRule step_rule_from_string(const std::string& name);

struct SchemeConfig {
  Scheme scheme = Scheme::Unmodified;
  StepRule step_rule = StepRule::Shorten;
  FlowOptions flow;

  bool is_cec() const { return scheme == Scheme::Cec2 || scheme == Scheme::Cec3; }
  bool is_tdbc() const { return scheme == Scheme::Tdbc2 || scheme == Scheme::Tdbc3; }
  int order() const { return scheme == Scheme::Tdbc3 || scheme == Scheme::Cec3 ? 3 : 2; }
};

/// Strang splitting S_tau = phi^f_{tau/2} o phi^A_tau o phi^f_{tau/2} with
/// one of the boundary corrections. The linear subflow is solved exactly
/// with cached phi functions of the operator.
template <class S>
class StrangSplitting {
 public:
  StrangSplitting(std::shared_ptr<const SplitProblem<S>> problem, SchemeConfig config,
                  std::shared_ptr<PhiCache<S>> cache = nullptr);

  const SplitProblem<S>& problem() const { return *problem_; }
  const SchemeConfig& config() const { return config_; }
  const std::shared_ptr<PhiCache<S>>& cache() const { return cache_; }

  Vector<S> step(const Vector<S>& u, double tau) const;

  /// Steps from the initial value according to config().step_rule and
  /// returns the state at end_time(T, tau, rule). When trajectory is set it
  /// receives the state after every step, starting with t = 0.
  Vector<S> integrate(double T, double tau,
                      std::vector<State<S>>* trajectory = nullptr) const;

  /// Step end times the rule produces for (T, tau), excluding 0.
  static std::vector<double> step_times(double T, double tau,
                                        StepRule rule = StepRule::Shorten);
  static double end_time(double T, double tau, StepRule rule = StepRule::Shorten);

 private:
  std::shared_ptr<const SplitProblem<S>> problem_;
  SchemeConfig config_;
  std::shared_ptr<PhiCache<S>> cache_;
  Vector<S> fixed_q_;  // CEC correction when it does not depend on the state
  Vector<S> data_fold_;
};

template <class S>
Vector<S> strang_step(const SplitProblem<S>& problem, const SchemeConfig& cfg,
                      const Vector<S>& state, double tau);

template <class S>
Vector<S> integrate(const SplitProblem<S>& problem, const SchemeConfig& cfg, double T,
                    double tau, std::vector<State<S>>* trajectory = nullptr);

}  // namespace splitbc

#include <cmath>
#include <fstream>

#include "splitbc/errors.hpp"
#include "splitbc/harness.hpp"

namespace splitbc {

using nlohmann::json;

std::string to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Local: return "local";
    case ErrorKind::Global: return "global";
    case ErrorKind::Both: return "both";
  }
  return "unknown";
}

std::vector<double> TauSweep::values() const {
  std::vector<double> out;
  if (count == 1) return {max};
  const double lmax = std::log(max), lmin = std::log(min);
  for (int k = 0; k < count; ++k) out.push_back(std::exp(lmax + (lmin - lmax) * k / (count - 1)));
  return out;
}

std::vector<double> ExperimentConfig::step_sizes() const {
  if (!taus.empty()) return taus;
  if (tau_sweep) return tau_sweep->values();
  return {};
}

void ExperimentConfig::validate() const {
  if (!(T > 0.0)) throw ConfigError("run.T must be positive");
  if (problem.n < 4) throw InvalidGridError("problem.n must be at least 4");
  for (std::size_t k = 0; k < taus.size(); ++k) {
    if (!(taus[k] > 0.0)) throw ConfigError("run.taus must be positive");
    if (k > 0 && !(taus[k] < taus[k - 1])) {
      throw ConfigError("run.taus must be strictly decreasing");
    }
  }
  if (tau_sweep) {
    if (!(tau_sweep->min > 0.0) || !(tau_sweep->max > tau_sweep->min) ||
        tau_sweep->count < 2) {
      throw ConfigError("run.tau_sweep needs 0 < min < max and count >= 2");
    }
  }
  if (window && !(window->first <= window->second)) {
    throw ConfigError("run.window must be [lo, hi] with lo <= hi");
  }
  if (!(tau > 0.0)) throw ConfigError("run.tau must be positive");
  for (double t : times) {
    if (!(t > 0.0)) throw ConfigError("run.times must be positive");
  }
  reference.validate();
  // Resolve names early so typos fail as config errors.
  reaction_by_name(problem.reaction);
  initial_condition(problem.initial);
  if (problem.kind == OperatorKind::Advection) coefficient_by_name(problem.coefficient);
}

namespace {

Complex parse_value(const json& v, const char* key) {
  if (v.is_number()) return Complex(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return Complex(v[0].get<double>(), v[1].get<double>());
  }
  throw ConfigError(std::string(key) + " must be a number or [re, im]");
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  ExperimentConfig cfg;
  cfg.schemes.clear();
  try {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    if (!j.contains("problem")) throw ConfigError("config needs a 'problem' section");
    const json& p = j.at("problem");
    cfg.problem.kind = operator_kind_from_string(p.at("kind").get<std::string>());
    cfg.problem.n = p.value("n", 200);
    cfg.problem.coefficient = p.value("coefficient", std::string("a1"));
    cfg.problem.reaction = p.value("reaction", std::string("zero"));
    cfg.problem.initial = p.value("initial", std::string("zero"));
    if (p.contains("b_left")) cfg.problem.b_left = parse_value(p["b_left"], "b_left");
    cfg.problem.b_right = cfg.problem.b_left;
    if (p.contains("b_right")) cfg.problem.b_right = parse_value(p["b_right"], "b_right");

    const json r = j.value("run", json::object());
    cfg.T = r.value("T", cfg.T);
    if (r.contains("taus")) cfg.taus = r["taus"].get<std::vector<double>>();
    if (r.contains("tau_sweep")) {
      const json& s = r["tau_sweep"];
      TauSweep sweep;
      sweep.min = s.value("min", sweep.min);
      sweep.max = s.value("max", sweep.max);
      sweep.count = s.value("count", sweep.count);
      cfg.tau_sweep = sweep;
    }
    if (r.contains("schemes")) {
      for (const auto& s : r["schemes"]) cfg.schemes.push_back(scheme_from_string(s));
    }
    if (r.contains("error_kind")) {
      const auto k = r["error_kind"].get<std::string>();
      if (k == "local") cfg.error_kind = ErrorKind::Local;
      else if (k == "global") cfg.error_kind = ErrorKind::Global;
      else if (k == "both") cfg.error_kind = ErrorKind::Both;
      else throw ConfigError("run.error_kind must be local, global or both");
    }
    if (r.contains("step_rule")) {
      cfg.step_rule = step_rule_from_string(r["step_rule"].get<std::string>());
    }
    if (r.contains("window")) {
      const auto w = r["window"].get<std::vector<double>>();
      if (w.size() != 2) throw ConfigError("run.window must have two entries");
      cfg.window = std::make_pair(w[0], w[1]);
    }
    if (r.contains("reactions")) cfg.reactions = r["reactions"].get<std::vector<std::string>>();
    if (r.contains("coefficients")) {
      cfg.coefficients = r["coefficients"].get<std::vector<std::string>>();
    }
    if (r.contains("times")) cfg.times = r["times"].get<std::vector<double>>();
    cfg.tau = r.value("tau", cfg.tau);
    if (j.contains("reference")) {
      const json& ref = j["reference"];
      cfg.reference.abs_tol = ref.value("abs_tol", cfg.reference.abs_tol);
      cfg.reference.rel_tol = ref.value("rel_tol", cfg.reference.rel_tol);
      cfg.reference.max_steps = ref.value("max_steps", cfg.reference.max_steps);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(j);
}

}  // namespace splitbc

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "splitbc/errors.hpp"
#include "splitbc/harness.hpp"

namespace splitbc {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

void emit_csv(const ConvergenceReport& report, const fs::path& path) {
  auto out = open_out(path);
  out << "scheme,tau,error_linf,observed_order\n";
  for (const auto& r : report.rows) {
    out << to_string(r.scheme) << ',' << num(r.tau) << ',' << num(r.error) << ','
        << (r.order ? num(*r.order) : "") << '\n';
  }
  finish(out, path);
}

void emit_csv(const ComparisonReport& report, const fs::path& path) {
  auto out = open_out(path);
  out << "t,reaction,coefficient,ratio,gain_cec,gain_tdbc,err_tdbc2,err_tdbc3,err_cec2,"
         "err_cec3\n";
  for (const auto& c : report.cells) {
    out << num(c.t) << ',' << c.reaction << ',' << c.coefficient << ',' << num(c.ratio())
        << ',' << num(c.gain_cec()) << ',' << num(c.gain_tdbc()) << ',' << num(c.err_tdbc2)
        << ',' << num(c.err_tdbc3) << ',' << num(c.err_cec2) << ',' << num(c.err_cec3)
        << '\n';
  }
  finish(out, path);
}

void emit_csv(const ResonanceReport& report, const fs::path& path) {
  auto out = open_out(path);
  out << "scheme,tau,error_linf\n";
  for (const auto& r : report.rows) {
    out << to_string(r.scheme) << ',' << num(r.tau) << ',' << num(r.error) << '\n';
  }
  finish(out, path);
}

void emit_csv(const TraceReport& report, const fs::path& path) {
  auto out = open_out(path);
  out << "scheme,tau,t,local,global\n";
  for (const auto& r : report.rows) {
    out << to_string(r.scheme) << ',' << num(r.tau) << ',' << num(r.t) << ',' << num(r.local)
        << ',' << num(r.global) << '\n';
  }
  finish(out, path);
}

json describe(const ExperimentConfig& cfg, const std::string& command) {
  auto value = [](Complex z) {
    return z.imag() == 0.0 ? json(z.real()) : json::array({z.real(), z.imag()});
  };
  json schemes = json::array();
  for (auto s : cfg.schemes) schemes.push_back(to_string(s));
  json j;
  j["command"] = command;
  j["problem"] = {{"kind", to_string(cfg.problem.kind)},
                  {"n", cfg.problem.n},
                  {"coefficient", cfg.problem.coefficient},
                  {"reaction", cfg.problem.reaction},
                  {"initial", cfg.problem.initial},
                  {"b_left", value(cfg.problem.b_left)},
                  {"b_right", value(cfg.problem.b_right)}};
  j["run"] = {{"T", cfg.T},
              {"taus", cfg.step_sizes()},
              {"schemes", schemes},
              {"error_kind", to_string(cfg.error_kind)},
              {"step_rule", to_string(cfg.step_rule)}};
  if (cfg.window) j["run"]["window"] = {cfg.window->first, cfg.window->second};
  if (command == "compare") {
    j["run"]["reactions"] = cfg.reactions;
    j["run"]["coefficients"] = cfg.coefficients;
    j["run"]["times"] = cfg.times;
    j["run"]["tau"] = cfg.tau;
  }
  j["reference"] = {{"method", "dopri5"},
                    {"abs_tol", cfg.reference.abs_tol},
                    {"rel_tol", cfg.reference.rel_tol},
                    {"max_steps", cfg.reference.max_steps}};
  j["seeded"] = false;
  return j;
}

json to_json(const ConvergenceReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"scheme", to_string(r.scheme)},
                    {"tau", r.tau},
                    {"error_linf", r.error},
                    {"observed_order", optional_number(r.order)}});
  }
  return {{"kind", to_string(report.kind)}, {"rows", rows}};
}

json to_json(const ComparisonReport& report) {
  json cells = json::array();
  for (const auto& c : report.cells) {
    cells.push_back({{"t", c.t},
                     {"reaction", c.reaction},
                     {"coefficient", c.coefficient},
                     {"ratio", c.ratio()},
                     {"gain_cec", c.gain_cec()},
                     {"gain_tdbc", c.gain_tdbc()},
                     {"err_tdbc2", c.err_tdbc2},
                     {"err_tdbc3", c.err_tdbc3},
                     {"err_cec2", c.err_cec2},
                     {"err_cec3", c.err_cec3}});
  }
  return {{"tau", report.tau}, {"n", report.n}, {"cells", cells}};
}

json to_json(const ResonanceReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"scheme", to_string(r.scheme)}, {"tau", r.tau}, {"error_linf", r.error}});
  }
  return {{"rows", rows}};
}

json to_json(const TraceReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"scheme", to_string(r.scheme)},
                    {"tau", r.tau},
                    {"t", r.t},
                    {"local", r.local},
                    {"global", r.global}});
  }
  return {{"rows", rows}};
}

std::vector<fs::path> run_command(const std::string& command, const ExperimentConfig& cfg,
                                  const fs::path& out_dir) {
  static const std::vector<std::string> known{"convergence", "interior", "compare",
                                              "resonance", "trace"};
  if (std::find(known.begin(), known.end(), command) == known.end()) {
    throw ConfigError("unknown command '" + command + "'");
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<fs::path> written;
  auto save = [&](const auto& report, const std::string& name) {
    const auto path = out_dir / name;
    emit_csv(report, path);
    written.push_back(path);
  };

  ExperimentConfig resolved = cfg;
  if (command == "convergence" || command == "interior") {
    if (resolved.schemes.empty()) resolved.schemes = {Scheme::Unmodified};
    std::vector<ConvergenceReport> reports;
    if (command == "convergence") {
      reports = run_convergence(resolved);
    } else {
      if (!resolved.window) resolved.window = std::make_pair(0.5, 1.0);
      reports = run_interior_convergence(resolved, *resolved.window);
    }
    for (const auto& rep : reports) save(rep, command + "_" + to_string(rep.kind) + ".csv");
  } else if (command == "compare") {
    save(run_comparison(resolved), "compare.csv");
    resolved.schemes = {Scheme::Tdbc2, Scheme::Tdbc3, Scheme::Cec2, Scheme::Cec3};
  } else if (command == "resonance") {
    if (resolved.schemes.empty()) {
      resolved.schemes = {Scheme::Unmodified, Scheme::Tdbc2, Scheme::Tdbc3};
    }
    save(run_resonance(resolved), "resonance.csv");
  } else {
    if (resolved.schemes.empty()) resolved.schemes = {Scheme::Cec2, Scheme::Cec3};
    save(run_trace(resolved), "trace.csv");
  }

  const auto meta = out_dir / "meta.json";
  auto out = open_out(meta);
  json d = describe(resolved, command);
  json files = json::array();
  for (const auto& p : written) files.push_back(p.filename().string());
  d["files"] = files;
  out << d.dump(2) << '\n';
  finish(out, meta);
  written.push_back(meta);
  return written;
}

}  // namespace splitbc

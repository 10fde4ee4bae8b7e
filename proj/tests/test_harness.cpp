#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "splitbc/harness.hpp"

using namespace splitbc;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("splitbc_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

ExperimentConfig small_diffusion() {
  ExperimentConfig cfg;
  cfg.problem.kind = OperatorKind::Diffusion;
  cfg.problem.n = 30;
  cfg.problem.reaction = "exp_um1";
  cfg.problem.b_left = cfg.problem.b_right = 1.0;
  cfg.problem.initial = "one_plus_sin_pi";
  cfg.T = 0.05;
  cfg.taus = {1e-2, 5e-3, 2.5e-3};
  cfg.schemes = {Scheme::Unmodified, Scheme::Tdbc2, Scheme::Cec2};
  return cfg;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SPLITBC_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("error_linf") {
  Vector<double> u(2), v(2);
  u << 1.0, 2.0;
  v << 1.5, 1.0;
  CHECK(error_linf(u, u) == 0.0);
  CHECK(error_linf(u, v) == 1.0);
  Vector<Complex> a(1), z(1);
  a << Complex(0, 1);
  z << Complex(0, 0);
  CHECK(error_linf(a, z) == 1.0);
  CHECK_THROWS_AS(error_linf(u, Vector<double>(Vector<double>::Zero(3))), DimensionError);

  const Grid1D g = build_grid(4, ConstrainedSides::Both);
  Vector<double> e(4);
  e << 5.0, 1.0, 2.0, 0.5;
  const Vector<double> zero = Vector<double>::Zero(4);
  CHECK(error_linf(e, zero, g, {0.3, 1.0}) == 2.0);
  CHECK(error_linf(e, zero, g, {0.0, 1.0}) == 5.0);
  CHECK_THROWS_AS(error_linf(e, zero, g, {0.41, 0.59}), ConfigError);
}

TEST_CASE("observed order") {
  CHECK(*observed_order(4e-4, 1e-4) == doctest::Approx(2.0));
  CHECK(*observed_order(3.14e-2, 1.54e-2) == doctest::Approx(1.03).epsilon(0.01));
  CHECK(*observed_order(0.3, 0.3) == 0.0);
  CHECK_FALSE(observed_order(0.0, 1e-3).has_value());
  CHECK(loglog_slope({1.0, 0.5, 0.25}, {4.0, 1.0, 0.25}) == doctest::Approx(2.0));
}

TEST_CASE("comparison cell ratios") {
  ComparisonCell c;
  c.err_tdbc2 = c.err_tdbc3 = c.err_cec2 = c.err_cec3 = 3e-4;
  CHECK(c.ratio() == 1.0);
  c.err_tdbc2 = 6e-4;
  c.err_cec3 = 1e-4;
  CHECK(c.ratio() == doctest::Approx(3.0));
  CHECK(c.gain_cec() == doctest::Approx(3.0));
  CHECK(c.gain_tdbc() == doctest::Approx(2.0));
}

TEST_CASE("convergence report") {
  const auto reports = run_convergence(small_diffusion());
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].kind == ErrorKind::Local);
  for (const auto& r : reports) {
    const auto rows = r.rows_for(Scheme::Tdbc2);
    REQUIRE(rows.size() == 3);
    CHECK_FALSE(rows[0].order.has_value());
    CHECK(*rows[1].order == doctest::Approx(*observed_order(rows[0].error, rows[1].error)));
  }

  // a window covering the whole domain changes nothing
  const auto inner = run_interior_convergence(small_diffusion(), {0.0, 1.0});
  CHECK(inner[1].rows[4].error == reports[1].rows[4].error);
  CHECK_THROWS_AS(run_interior_convergence(small_diffusion(), {0.5, 0.51}), ConfigError);
}

TEST_CASE("csv output is deterministic") {
  const fs::path d1 = scratch("csv1"), d2 = scratch("csv2");
  const auto files = run_command("convergence", small_diffusion(), d1);
  run_command("convergence", small_diffusion(), d2);
  REQUIRE(files.size() == 3);
  for (const auto& f : files) CHECK(slurp(f) == slurp(d2 / f.filename()));

  const std::string csv = slurp(d1 / "convergence_global.csv");
  CHECK(csv.rfind("scheme,tau,error_linf,observed_order\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 9);
  const auto meta = nlohmann::json::parse(slurp(d1 / "meta.json"));
  CHECK(meta["command"] == "convergence");
  CHECK(meta["run"]["step_rule"] == "overshoot");

  emit_csv(ConvergenceReport{}, d1 / "empty.csv");
  CHECK(slurp(d1 / "empty.csv") == "scheme,tau,error_linf,observed_order\n");
  CHECK_THROWS_AS(emit_csv(ConvergenceReport{}, d1 / "missing" / "x.csv"), IoError);
}

TEST_CASE("trace report") {
  ExperimentConfig cfg = small_diffusion();
  cfg.schemes = {Scheme::Cec2};
  cfg.taus = {1e-2};
  const auto rep = run_trace(cfg);
  REQUIRE(rep.rows.size() == 5);
  CHECK(rep.rows[0].local == rep.rows[0].global);
  for (const auto& r : rep.rows) {
    CHECK(r.local >= 0.0);
    CHECK(r.global >= 0.0);
  }
}

TEST_CASE("config parsing") {
  using nlohmann::json;
  const json ok = json::parse(R"({"problem": {"kind": "dispersion", "n": 20,
      "reaction": "exp_um1", "b_left": [1, 0.5], "initial": "dispersion_ic"},
      "run": {"T": 0.1, "taus": [0.01, 0.005], "schemes": ["tdbc3"], "window": [0.5, 1]}})");
  const ExperimentConfig cfg = parse_config(ok);
  CHECK(cfg.problem.kind == OperatorKind::Dispersion);
  CHECK(cfg.problem.b_right == Complex(1.0, 0.5));
  CHECK(cfg.schemes == std::vector<Scheme>{Scheme::Tdbc3});
  CHECK(cfg.window->first == 0.5);

  auto with = [&](const char* path, json value) {
    json j = ok;
    j[json::json_pointer(path)] = value;
    return j;
  };
  CHECK_THROWS_AS(parse_config(with("/run/taus", {0.01, 0.02})), ConfigError);
  CHECK_THROWS_AS(parse_config(with("/problem/reaction", "u_cubed")), RegistryError);
  CHECK_THROWS_AS(parse_config(with("/problem/kind", "wave")), RegistryError);
  CHECK_THROWS_AS(parse_config(with("/problem/n", 2)), InvalidGridError);
  CHECK_THROWS_AS(parse_config(with("/run/error_kind", "mixed")), ConfigError);
  CHECK_THROWS_AS(parse_config(with("/problem/b_left", "one")), ConfigError);
  CHECK_THROWS_AS(parse_config(json::array()), ConfigError);

  TauSweep sweep{1e-4, 1e-2, 5};
  const auto v = sweep.values();
  CHECK(v.front() == doctest::Approx(1e-2));
  CHECK(v.back() == doctest::Approx(1e-4));
  CHECK(v[2] == doctest::Approx(1e-3));
}

TEST_CASE("registry functions") {
  CHECK(coefficient_by_name("a3").value(1.0) == doctest::Approx(0.5));
  for (const auto& n : {"a1", "a2", "a3", "a4", "a5"}) {
    const Coefficient a = coefficient_by_name(n);
    for (int i = 0; i <= 100; ++i) CHECK(a.value(i / 100.0) > 0.0);
  }
  CHECK_THROWS_AS(coefficient_by_name("a6"), RegistryError);
  CHECK(std::abs(initial_condition("dispersion_ic")(0.25) - Complex(1 + std::sqrt(0.5), 1)) < 1e-15);
  CHECK_THROWS_AS(initial_condition("gauss"), RegistryError);
}

TEST_CASE("cli exit codes") {
  const fs::path d = scratch("cli");
  {
    std::ofstream(d / "good.json") << R"({"problem": {"kind": "diffusion", "n": 10,
        "reaction": "u_plus_1"}, "run": {"T": 0.02, "taus": [0.01, 0.005]}})";
    std::ofstream(d / "bad.json") << R"({"problem": {"kind": "diffusion", "reaction": "nope"}})";
    std::ofstream(d / "blowup.json") << R"({"problem": {"kind": "diffusion", "n": 10,
        "reaction": "exp_um1", "b_left": 6, "initial": "zero"}, "run": {"T": 0.5, "taus": [0.1]}})";
    std::ofstream(d / "broken.json") << "{ not json";
  }
  const std::string out = " --out " + (d / "out").string();
  CHECK(run_cli("convergence --config " + (d / "good.json").string() + out) == 0);
  CHECK(fs::exists(d / "out" / "meta.json"));
  CHECK(run_cli("trace --seedless --config " + (d / "good.json").string() + out) == 0);
  CHECK(run_cli("convergence --config " + (d / "bad.json").string() + out) == 2);
  CHECK(run_cli("convergence --config " + (d / "broken.json").string() + out) == 2);
  CHECK(run_cli("convergence --config " + (d / "absent.json").string() + out) == 2);
  CHECK(run_cli("convergence" + out) == 2);
  CHECK(run_cli("bogus --config x") == 2);
  CHECK(run_cli("convergence --config " + (d / "blowup.json").string() + out) == 3);
}

}

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "splitbc/harness.hpp"

namespace py = pybind11;
using namespace splitbc;

namespace {

ExperimentConfig config_from(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return parse_config(j);
}

std::string convergence_json(const std::string& text, std::optional<std::pair<double, double>> window) {
  const ExperimentConfig cfg = config_from(text);
  const auto reports = window ? run_interior_convergence(cfg, *window) : run_convergence(cfg);
  nlohmann::json out = nlohmann::json::object();
  for (const auto& r : reports) out[to_string(r.kind)] = to_json(r);
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_splitbc, m) {
  m.doc() = "Strang splitting with boundary corrections for 1D reaction problems";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

  m.def("reaction_names", &reaction_names);
  m.def("observed_order", &observed_order, py::arg("e_coarse"), py::arg("e_fine"));
  m.def("loglog_slope", &loglog_slope, py::arg("taus"), py::arg("errors"));

  m.def("matrix_exponential", [](const Matrix<double>& a) { return matrix_exponential(a); });
  m.def(
      "phi_family",
      [](const Matrix<double>& a, double t, int kmax) { return phi_family(a, t, kmax).matrices; },
      py::arg("a"), py::arg("t"), py::arg("kmax") = 3);

  m.def(
      "grid_nodes",
      [](int n, bool one_sided) {
        return build_grid(n, one_sided ? ConstrainedSides::Left : ConstrainedSides::Both)
            .node_positions;
      },
      py::arg("n"), py::arg("one_sided") = false);

  m.def(
      "_convergence", &convergence_json, py::arg("config"), py::arg("window") = std::nullopt,
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "_comparison", [](const std::string& text) { return to_json(run_comparison(config_from(text))).dump(); },
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "_resonance", [](const std::string& text) { return to_json(run_resonance(config_from(text))).dump(); },
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "_trace", [](const std::string& text) { return to_json(run_trace(config_from(text))).dump(); },
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "_run_command",
      [](const std::string& command, const std::string& text, const std::filesystem::path& out) {
        return run_command(command, config_from(text), out);
      },
      py::call_guard<py::gil_scoped_release>());
}

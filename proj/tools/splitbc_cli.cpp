#include <iostream>

#include <CLI11.hpp>

#include "splitbc/errors.hpp"
#include "splitbc/harness.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strang splitting with boundary corrections: convergence experiments"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir = "out";
  bool seedless = false;
  for (const char* name : {"convergence", "interior", "compare", "resonance", "trace"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    sub->add_flag("--seedless", seedless, "accepted for compatibility; nothing is random");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    const auto cfg = splitbc::load_config(config_path);
    for (const auto& path : splitbc::run_command(command, cfg, out_dir)) {
      std::cout << path.string() << '\n';
    }
  } catch (const splitbc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const splitbc::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}

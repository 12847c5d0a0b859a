#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qhbound/config.hpp"
#include "qhbound/error.hpp"
#include "qhbound/run.hpp"
#include "qhbound/selftest.hpp"

namespace {

int selftest() {
  bool ok = true;
  for (const auto& r : qhbound::selftest_suite()) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    ok = ok && r.pass;
  }
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound-state spectra, metric operator and wavepacket dynamics"};
  std::string command;
  std::string config;
  std::string out_dir = ".";
  std::optional<std::size_t> kappa_n;
  std::optional<std::size_t> max_states;
  app.add_option("command", command, "spectrum | metric | fig1 | evolve | selftest")
      ->required()
      ->check(CLI::IsMember({"spectrum", "metric", "fig1", "evolve", "selftest"}));
  app.add_option("--config", config, "JSON run configuration");
  app.add_option("--out-dir", out_dir, "directory for CSV/JSON output");
  app.add_option("--kappa-n", kappa_n, "number of off-diagonals averaged in kappa")->check(CLI::PositiveNumber);
  app.add_option("--max-states", max_states, "upper bound on the number of states")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  const auto stage = *qhbound::parse_subcommand(command);
  try {
    if (stage == qhbound::Subcommand::selftest) return selftest();
    if (config.empty()) {
      std::cerr << "error: --config is required for " << command << "\n";
      return 1;
    }
    auto cfg = qhbound::parse_config(config);
    if (max_states) cfg.set_max_states(*max_states);
    if (kappa_n) cfg.set_kappa_n(*kappa_n);
    const auto bundle = qhbound::run(stage, cfg, out_dir);
    for (const auto& [name, text] : bundle.files) std::cout << "wrote " << (std::filesystem::path(out_dir) / name).string() << "\n";
    for (const auto& w : bundle.summary["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
    return 0;
  } catch (const qhbound::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qhbound::exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

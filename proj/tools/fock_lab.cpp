#include <cstdint>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "focklab/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fock-lab: finite-truncation Toeplitz operators on the Fock space"};
  std::string config_path;
  std::string out_dir = "fock-lab-out";
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "experiment config file")->required();
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--seed", seed, "PRNG seed, overrides the config value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : focklab::exit_invalid_input;
  }

  focklab::ExperimentConfig cfg;
  try {
    cfg = focklab::load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "fock-lab: " << e.what() << '\n';
    return focklab::exit_invalid_input;
  }

  try {
    const focklab::RunOutcome r = focklab::run(cfg, out_dir, seed);
    for (const auto& ch : r.checks) {
      std::cout << (ch.pass ? "PASS " : "FAIL ") << ch.name << " residual=" << ch.residual
                << " tolerance=" << ch.tolerance << '\n';
    }
    if (r.exit_code == focklab::exit_invalid_input) {
      std::cerr << "fock-lab: run failed, see " << out_dir << "/summary.json\n";
    }
    std::cout << "summary: " << out_dir << "/summary.json\n";
    return r.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "fock-lab: " << e.what() << '\n';
    return focklab::exit_invalid_input;
  }
}

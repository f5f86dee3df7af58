#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "focklab/config.hpp"
#include "focklab/lagrangian.hpp"

namespace focklab {

enum ExitCode : int { exit_success = 0, exit_verification_failed = 1, exit_invalid_input = 2 };

struct CheckRecord {
  std::string name;
  std::string property;  ///< the mathematical statement being exercised
  double tolerance = 0.0;
  double residual = 0.0;
  bool pass = false;
};

struct RunOutcome {
  int exit_code = exit_success;
  std::vector<CheckRecord> checks;
  std::vector<std::string> artifacts;  ///< file names relative to the output directory
  std::string summary;                 ///< summary.json contents
};

/// Runs one experiment and writes resolved.cfg, summary.json and the command's
/// CSV tables into out_dir (created if missing). seed overrides cfg.seed.
RunOutcome run(ExperimentConfig cfg, const std::string& out_dir, std::optional<std::uint64_t> seed = {});

/// Frame value of a config: real | imaginary | diagonal | rows of 2n reals.
RealMatrix parse_frame(const std::string& text, std::size_t n);

/// "auto" or n x n complex rows.
LagrangianFrame make_frame(const std::string& frame, const std::string& rotation, std::size_t n);

}  // namespace focklab

#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "focklab/measures.hpp"

namespace focklab {

/// Parse or validation failure; line is 0 when no line applies.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, std::size_t line, const std::string& field, const std::string& message);
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

/// Measure grammar (n is the complex dimension):
///   lebesgue
///   dirac(c1, ..., cn)
///   atoms(w @ (c1, ..., cn), w @ (...), ...)      n = 1 also accepts w @ c
///   gaussian(sigma [, c1, ..., cn])
///   density(expr [, sigma = s] [, center = (c1, ..., cn)])
///   horizontal(R)
///   alpha_horizontal(R, a1, ..., an)
///   weight(M, p1, ..., pn)                          p_j multiples of 1/2
///   pushforward(M, [x11, ..., x1n; ...; xn1, ..., xnn])
/// where R is lebesgue, dirac, atoms, gaussian or density on R^n, numbers are
/// complex constant expressions and density expressions use x1..xn, y1..yn.
Measure parse_measure(const std::string& text, std::size_t n);
RealMeasure parse_real_measure(const std::string& text, std::size_t n);

/// "a, b; c, d" -> rows of complex constants.
std::vector<std::vector<cplx>> parse_complex_rows(const std::string& text);

struct ExperimentConfig {
  std::string command;  ///< assemble | berezin | carleson | spectral | verify-diagonalization | commutativity | lagrangian
  std::size_t n = 1;
  int D = 10;
  std::string measure;
  std::string measure2;
  std::vector<int> two_k;  ///< doubled k; empty means zero
  std::vector<int> two_p;  ///< doubled p for the weight-shift report; empty means none
  std::string frame;       ///< real | imaginary | diagonal | explicit rows
  std::string rotation = "auto";
  QuadratureConfig quadrature;
  double window = 2.0;
  double spacing = 0.25;
  std::vector<double> r;   ///< polydisk radii; empty means all ones
  std::string points;      ///< Berezin sample points
  double tolerance = -1.0; ///< negative means the command default
  std::uint64_t seed = 0;
  double grid_lo = -6.0;
  double grid_hi = 6.0;
  int grid_count = 241;

  std::string source = "<config>";
  std::map<std::string, std::size_t> lines;  ///< key -> line, for diagnostics

  [[noreturn]] void fail(const std::string& field, const std::string& message) const;
};

inline const std::vector<std::string> known_commands = {
    "assemble", "berezin", "carleson", "spectral", "verify-diagonalization", "commutativity", "lagrangian"};

/// key = value lines, '#' starts a comment. Unknown keys, duplicates and
/// malformed values raise ConfigError with the line number.
ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

/// Every key with defaults filled; parsing it back gives an identical config.
std::string resolved_config(const ExperimentConfig& cfg);

/// Sample points of the berezin command (default: a small fixed set).
std::vector<ComplexVector> config_points(const ExperimentConfig& cfg);

}  // namespace focklab

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "focklab/toeplitz.hpp"

namespace focklab {

/// Axis-aligned grid anchored at 0: every real coordinate of the center
/// ranges over {m * spacing : |m * spacing| <= window}.
struct Lattice {
  double window = 2.0;
  double spacing = 0.25;
};

struct CarlesonReport {
  double sup_estimate = 0.0;
  ComplexVector argmax;
  Lattice lattice;
  RealVector r;                  ///< polydisk radii (empty for kernel-based scans)
  double interior_max = 0.0;     ///< max over centers off the outermost ring
  double boundary_max = 0.0;     ///< max over the outermost ring
  bool growth_detected = false;  ///< boundary_max > growth_factor * interior_max
  std::size_t samples = 0;

  std::string verdict() const { return growth_detected ? "growth-detected" : "bounded-on-window"; }
};

inline constexpr double growth_factor = 1.5;

/// All lattice centers in C^n.
std::vector<ComplexVector> lattice_centers(std::size_t n, const Lattice& lattice);

/// sup_z e^{|z|^2} pi^n |mu|~(z), i.e. sup_z \int |K_z|^2 e^{-|w|^2} d|mu| as written.
CarlesonReport condition_M(const Measure& mu, const Lattice& lattice, const QuadratureConfig& cfg = {});

/// sup_z |mu|~(z), the kernel-normalized variant.
CarlesonReport condition_M_normalized(const Measure& mu, const Lattice& lattice, const QuadratureConfig& cfg = {});

/// Gamma(k+1)^2 sup_z |mu|_k(B_r(z)). Requires spacing <= min r_j / 2.
CarlesonReport carleson_constant(const Measure& mu, const HalfIndex& k, const RealVector& r, const Lattice& lattice,
                                 const QuadratureConfig& cfg = {});

/// Empirical omega_k for integer k: top eigenvalue of the form
/// \int |d^k f|^2 e^{-|w|^2} d|mu| (normalized by pi^{-n}) at D and at D/2,
/// plus a random-vector lower estimate at D.
struct KfcReport {
  double omega = 0.0;       ///< top eigenvalue at D
  double omega_half = 0.0;  ///< top eigenvalue at D/2
  double random_estimate = 0.0;
  int random_trials = 0;
  std::uint64_t seed = 0;
  bool growth_detected = false;  ///< omega > growth_factor * omega_half
};

KfcReport kfc_verdict(const Measure& mu, const MultiIndex& k, const BasisSet& basis, const QuadratureConfig& cfg = {},
                      std::uint64_t seed = 0, int trials = 64);

/// Both index placements of the weight-shift identity, plus the
/// factorial-free mass comparison sup |mu|_k(B) vs sup (|mu|_p)_{k-p}(B).
struct WeightShiftReport {
  double C_k = 0.0;              ///< C_k(mu, r)
  double C_kmp_of_mu_p = 0.0;    ///< C_{k-p}(mu_p, r)
  double C_p_of_mu_kmp = 0.0;    ///< C_p(mu_{k-p}, r)
  double mass_sup_direct = 0.0;  ///< sup |mu|_k(B_r)
  double mass_sup_shifted = 0.0; ///< sup ((|mu|)_p)_{k-p}(B_r)
  double error_kmp_orientation = 0.0;  ///< |C_{k-p}(mu_p) - C_k(mu)| / C_k(mu)
  double error_p_orientation = 0.0;    ///< |C_p(mu_{k-p}) - C_k(mu)| / C_k(mu)
  double error_mass = 0.0;
};

/// Requires k >= p componentwise.
WeightShiftReport weight_shift(const Measure& mu, const HalfIndex& k, const HalfIndex& p, const RealVector& r,
                               const Lattice& lattice, const QuadratureConfig& cfg = {});

/// Bounded/growth classification from three routes: Berezin transform,
/// polydisk masses and the top eigenvalue of T_{|mu|}.
struct FcVerdicts {
  bool berezin_growth = false;
  bool ball_growth = false;
  bool form_growth = false;
  bool agree() const { return berezin_growth == ball_growth && ball_growth == form_growth; }
};

FcVerdicts fc_verdicts(const Measure& mu, const Lattice& lattice, const BasisSet& basis,
                       const QuadratureConfig& cfg = {});

}  // namespace focklab

#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "focklab/toeplitz.hpp"

namespace focklab {

using SpectralFunction = std::function<cplx(std::span<const double>)>;

/// gamma evaluated on a grid in R^n.
struct SpectralSamples {
  std::size_t dim = 0;
  std::vector<double> grid;  // node-major, dim per point
  std::vector<cplx> values;
  std::string provenance;    // rho description and 2k
  std::size_t size() const { return values.size(); }
  std::span<const double> point(std::size_t i) const { return {grid.data() + i * dim, dim}; }
};

/// gamma_{rho,2k}(x) = (2/pi)^{n/2} \int H_{2k}(sqrt2 x - y) e^{-(x - sqrt2 y)^2} d rho(y);
/// k = 0 gives gamma_rho.
SpectralFunction gamma_function(const RealMeasure& rho, const HalfIndex& k, int order = 80);

/// Tensor Gauss-Hermite nodes (the default sampling grid).
std::vector<double> hermite_nodes_grid(std::size_t n, int order);
/// Uniform tensor grid on [lo, hi]^n with count points per axis.
std::vector<double> uniform_grid(std::size_t n, double lo, double hi, int count);

SpectralSamples gamma_plain(const RealMeasure& rho, const std::vector<double>& grid, int order = 80);
SpectralSamples gamma_2k(const RealMeasure& rho, const HalfIndex& k, const std::vector<double>& grid, int order = 80);
SpectralSamples sample(const SpectralFunction& gamma, std::size_t n, const std::vector<double>& grid,
                       std::string provenance);

/// Orthonormal Hermite functions are handled through their polynomial parts
/// p_j with p_j(x) e^{-x^2/2} = h_j(x): returns p_0(x), ..., p_m(x).
std::vector<double> hermite_function_polys(int m, double x);

/// Entry (beta, alpha) = \int gamma h_alpha h_beta dx. The Gauss-Hermite order
/// must be at least D + gamma_degree/2 + 4, else std::invalid_argument.
ComplexMatrix multiplication_matrix(const SpectralFunction& gamma, const BasisSet& basis, int order = 80,
                                    int gamma_degree = 0);

/// From samples taken on hermite_nodes_grid(n, order).
ComplexMatrix multiplication_matrix(const SpectralSamples& samples, const BasisSet& basis, int order);

struct DiagonalizationReport {
  double residual = 0.0;        ///< interior-block max |T - M_gamma|
  std::size_t interior_size = 0;
  ComplexMatrix toeplitz;
  ComplexMatrix multiplication;
};

/// T_{dR^{2k}(rho x nu_n)} against M_{gamma_{rho,2k}}.
DiagonalizationReport diagonalization_residual(const RealMeasure& rho, const HalfIndex& k, const BasisSet& basis,
                                               const QuadratureConfig& cfg = {});

/// Same for a measure given as a spec; it must be horizontal. Non-horizontal
/// input (structurally or by a Berezin y-variation above 1e-8) is rejected.
DiagonalizationReport diagonalization_residual(const Measure& mu, const HalfIndex& k, const BasisSet& basis,
                                               const QuadratureConfig& cfg = {});

/// max over grid rows x of (max_y - min_y) |mu~(x + iy)| along the y grid.
double berezin_y_variation(const Measure& mu, const std::vector<double>& xs, const std::vector<double>& ys,
                           const QuadratureConfig& cfg = {}, BerezinPath path = BerezinPath::automatic);

struct SpectrumReport {
  double norm = 0.0;              ///< largest singular value
  double spectral_radius = 0.0;
  double gamma_sup = 0.0;         ///< sup |gamma| over the samples
  double eigen_to_range = 0.0;    ///< max over eigenvalues of distance to sampled gamma values
  double range_to_eigen = 0.0;    ///< max over samples of distance to eigenvalues
  std::vector<cplx> eigenvalues;
};

SpectrumReport norm_and_spectrum(const ComplexMatrix& T, const SpectralSamples& gamma);

/// CSV: x1..xn, re, im per sample.
void write_samples_csv(const SpectralSamples& s, const std::string& path);

}  // namespace focklab

#include "focklab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "focklab/quadrature.hpp"

namespace focklab {

namespace {

constexpr double sqrt2 = 1.41421356237309504880;

// H_m(x) by the three-term recurrence without allocating.
double hermite_value(int m, double x) {
  if (m == 0) return 1.0;
  double h0 = 1.0;
  double h1 = 2.0 * x;
  for (int j = 1; j < m; ++j) {
    const double h2 = 2.0 * x * h1 - 2.0 * j * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

template <class Visit>
void for_each_tensor_node(std::size_t n, const QuadRule& rule, Visit&& visit) {
  const std::size_t m = rule.nodes.size();
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> x(n);
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) total *= m;
  for (std::size_t count = 0; count < total; ++count) {
    double w = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = rule.nodes[idx[j]];
      w *= rule.weights[idx[j]];
    }
    visit(std::span<const double>(x), w);
    for (std::size_t j = n; j-- > 0;) {
      if (++idx[j] < m) break;
      idx[j] = 0;
    }
  }
}

}  // namespace

SpectralFunction gamma_function(const RealMeasure& rho, const HalfIndex& k, int order) {
  if (k.dim() != rho.dim()) throw std::invalid_argument("gamma_function: k dimension mismatch");
  const std::size_t n = rho.dim();
  const MultiIndex two_k = k.twice();
  const double prefactor = std::pow(2.0 / pi, 0.5 * static_cast<double>(n));
  return [rho, two_k, order, n, prefactor](std::span<const double> x) -> cplx {
    // e^{-(x - sqrt2 y)^2} = e^{-2 |y - x/sqrt2|^2}
    RealVector c(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) c(static_cast<Eigen::Index>(j)) = x[j] / sqrt2;
    const RealNodeCloud cloud = discretize(rho, 2.0, c, order);
    cplx sum = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      const auto y = cloud.point(i);
      double h = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (two_k[j] != 0) h *= hermite_value(two_k[j], sqrt2 * x[j] - y[j]);
      }
      sum += cloud.weights[i] * h;
    }
    return prefactor * sum;
  };
}

std::vector<double> hermite_nodes_grid(std::size_t n, int order) {
  const QuadRule rule = gauss_hermite(order);
  std::vector<double> grid;
  for_each_tensor_node(n, rule, [&](std::span<const double> x, double) { grid.insert(grid.end(), x.begin(), x.end()); });
  return grid;
}

std::vector<double> uniform_grid(std::size_t n, double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("uniform_grid: count must be >= 1");
  QuadRule axis;
  for (int i = 0; i < count; ++i) {
    axis.nodes.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
    axis.weights.push_back(1.0);
  }
  std::vector<double> grid;
  for_each_tensor_node(n, axis, [&](std::span<const double> x, double) { grid.insert(grid.end(), x.begin(), x.end()); });
  return grid;
}

SpectralSamples sample(const SpectralFunction& gamma, std::size_t n, const std::vector<double>& grid,
                       std::string provenance) {
  if (n == 0 || grid.size() % n != 0) throw std::invalid_argument("sample: grid size not a multiple of n");
  SpectralSamples s;
  s.dim = n;
  s.grid = grid;
  s.provenance = std::move(provenance);
  s.values.reserve(grid.size() / n);
  for (std::size_t i = 0; i < grid.size() / n; ++i) {
    const cplx v = gamma(s.point(i));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      auto p = s.point(i);
      throw NonFiniteIntegrand(std::vector<double>(p.begin(), p.end()), "spectral function " + s.provenance);
    }
    s.values.push_back(v);
  }
  return s;
}

SpectralSamples gamma_plain(const RealMeasure& rho, const std::vector<double>& grid, int order) {
  return sample(gamma_function(rho, HalfIndex::zeros(rho.dim()), order), rho.dim(), grid,
                "gamma[" + rho.describe() + "]");
}

SpectralSamples gamma_2k(const RealMeasure& rho, const HalfIndex& k, const std::vector<double>& grid, int order) {
  return sample(gamma_function(rho, k, order), rho.dim(), grid,
                "gamma[" + rho.describe() + ", 2k=" + k.twice().str() + "]");
}

std::vector<double> hermite_function_polys(int m, double x) {
  std::vector<double> p(static_cast<std::size_t>(m) + 1);
  p[0] = 1.0 / std::sqrt(sqrt_pi);
  if (m >= 1) p[1] = sqrt2 * x * p[0];
  for (int j = 2; j <= m; ++j) {
    p[static_cast<std::size_t>(j)] = std::sqrt(2.0 / j) * x * p[static_cast<std::size_t>(j) - 1] -
                                     std::sqrt((j - 1.0) / j) * p[static_cast<std::size_t>(j) - 2];
  }
  return p;
}

namespace {

// Rows: tensor nodes; columns: basis. P(i, alpha) = prod_j p_{alpha_j}(x_ij).
ComplexMatrix multiplication_from_nodes(const std::vector<cplx>& gamma_w, const QuadRule& rule, const BasisSet& basis) {
  const std::size_t n = basis.dim();
  const int D = basis.max_degree();
  const auto N = static_cast<Eigen::Index>(basis.size());
  const std::size_t m = rule.nodes.size();
  std::vector<std::vector<double>> polys(m);
  for (std::size_t i = 0; i < m; ++i) polys[i] = hermite_function_polys(D, rule.nodes[i]);
  const std::size_t total = gamma_w.size();
  ComplexMatrix M = ComplexMatrix::Zero(N, N);
  constexpr std::size_t chunk = 4096;
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t start = 0; start < total; start += chunk) {
    const std::size_t stop = std::min(total, start + chunk);
    const auto rows = static_cast<Eigen::Index>(stop - start);
    RealMatrix P(rows, N);
    ComplexVector g(rows);
    for (std::size_t count = start; count < stop; ++count) {
      const auto r = static_cast<Eigen::Index>(count - start);
      for (Eigen::Index c = 0; c < N; ++c) {
        const MultiIndex& alpha = basis[static_cast<std::size_t>(c)];
        double v = 1.0;
        for (std::size_t j = 0; j < n; ++j) v *= polys[idx[j]][static_cast<std::size_t>(alpha[j])];
        P(r, c) = v;
      }
      g(r) = gamma_w[count];
      for (std::size_t j = n; j-- > 0;) {
        if (++idx[j] < m) break;
        idx[j] = 0;
      }
    }
    const ComplexMatrix Pc = P.cast<cplx>();
    M.noalias() += Pc.transpose() * (g.asDiagonal() * Pc);
  }
  return M;
}

void check_order(const BasisSet& basis, int order, int gamma_degree) {
  const int needed = basis.max_degree() + (gamma_degree + 1) / 2 + 4;
  if (order < needed) {
    throw std::invalid_argument("multiplication_matrix: Gauss-Hermite order " + std::to_string(order) +
                                " is insufficient for D=" + std::to_string(basis.max_degree()) +
                                " and spectral-function degree " + std::to_string(gamma_degree) + " (needs >= " +
                                std::to_string(needed) + ")");
  }
}

}  // namespace

ComplexMatrix multiplication_matrix(const SpectralFunction& gamma, const BasisSet& basis, int order, int gamma_degree) {
  check_order(basis, order, gamma_degree);
  const QuadRule rule = gauss_hermite(order);
  std::vector<cplx> gw;
  for_each_tensor_node(basis.dim(), rule, [&](std::span<const double> x, double w) {
    const cplx v = gamma(x);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NonFiniteIntegrand(std::vector<double>(x.begin(), x.end()), "multiplication_matrix");
    }
    gw.push_back(w * v);
  });
  return multiplication_from_nodes(gw, rule, basis);
}

ComplexMatrix multiplication_matrix(const SpectralSamples& samples, const BasisSet& basis, int order) {
  check_order(basis, order, 0);
  if (samples.dim != basis.dim()) throw std::invalid_argument("multiplication_matrix: dimension mismatch");
  const std::vector<double> expected = hermite_nodes_grid(basis.dim(), order);
  if (expected.size() != samples.grid.size()) {
    throw std::invalid_argument("multiplication_matrix: samples are not on the Gauss-Hermite grid of this order");
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (std::abs(expected[i] - samples.grid[i]) > 1e-12 * std::max(1.0, std::abs(expected[i]))) {
      throw std::invalid_argument("multiplication_matrix: samples are not on the Gauss-Hermite grid of this order");
    }
  }
  const QuadRule rule = gauss_hermite(order);
  std::vector<cplx> gw;
  std::size_t i = 0;
  for_each_tensor_node(basis.dim(), rule, [&](std::span<const double>, double w) { gw.push_back(w * samples.values[i++]); });
  return multiplication_from_nodes(gw, rule, basis);
}

DiagonalizationReport diagonalization_residual(const RealMeasure& rho, const HalfIndex& k, const BasisSet& basis,
                                               const QuadratureConfig& cfg) {
  if (rho.dim() != basis.dim() || k.dim() != basis.dim()) {
    throw std::invalid_argument("diagonalization_residual: dimension mismatch");
  }
  const Measure mu = Measure::horizontal(rho);
  DiagonalizationReport r;
  r.toeplitz = k.is_zero() ? assemble_toeplitz(mu, basis, cfg).entries
                           : assemble_real_coderivative(mu, k, basis, cfg).entries;
  r.multiplication = multiplication_matrix(gamma_function(rho, k, cfg.spectral_order), basis, cfg.spectral_order,
                                           k.twice().total());
  r.interior_size = basis.interior_size();
  r.residual = interior_max(r.toeplitz - r.multiplication, basis);
  return r;
}

double berezin_y_variation(const Measure& mu, const std::vector<double>& xs, const std::vector<double>& ys,
                           const QuadratureConfig& cfg, BerezinPath path) {
  const auto n = static_cast<Eigen::Index>(mu.dim());
  double worst = 0.0;
  for (double x : xs) {
    std::vector<cplx> vals;
    for (double y : ys) vals.push_back(berezin_measure(mu, ComplexVector::Constant(n, cplx(x, y)), cfg, path));
    for (std::size_t a = 0; a < vals.size(); ++a) {
      for (std::size_t b = a + 1; b < vals.size(); ++b) worst = std::max(worst, std::abs(vals[a] - vals[b]));
    }
  }
  return worst;
}

DiagonalizationReport diagonalization_residual(const Measure& mu, const HalfIndex& k, const BasisSet& basis,
                                               const QuadratureConfig& cfg) {
  if (const auto* h = mu.as<Measure::Horizontal>()) return diagonalization_residual(h->rho, k, basis, cfg);
  const double variation = berezin_y_variation(mu, {-1.0, 0.0, 1.0}, {-1.0, 0.0, 1.0}, cfg);
  throw std::invalid_argument("diagonalization_residual: measure " + mu.describe() +
                              " is not given as a horizontal product (Berezin y-variation " +
                              std::to_string(variation) + "); supply rho or use the Lagrangian route");
}

SpectrumReport norm_and_spectrum(const ComplexMatrix& T, const SpectralSamples& gamma) {
  if (T.rows() != T.cols()) throw std::invalid_argument("norm_and_spectrum: matrix must be square");
  SpectrumReport r;
  Eigen::BDCSVD<ComplexMatrix> svd(T);
  r.norm = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  const double scale = std::max(1.0, T.cwiseAbs().maxCoeff());
  if ((T - T.adjoint()).cwiseAbs().maxCoeff() <= 1e-10 * scale) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(T, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) r.eigenvalues.emplace_back(es.eigenvalues()(i), 0.0);
  } else {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(T, false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) r.eigenvalues.push_back(es.eigenvalues()(i));
  }
  for (cplx l : r.eigenvalues) r.spectral_radius = std::max(r.spectral_radius, std::abs(l));
  for (cplx g : gamma.values) r.gamma_sup = std::max(r.gamma_sup, std::abs(g));
  for (cplx l : r.eigenvalues) {
    double d = std::numeric_limits<double>::infinity();
    for (cplx g : gamma.values) d = std::min(d, std::abs(l - g));
    r.eigen_to_range = std::max(r.eigen_to_range, d);
  }
  for (cplx g : gamma.values) {
    double d = std::numeric_limits<double>::infinity();
    for (cplx l : r.eigenvalues) d = std::min(d, std::abs(l - g));
    r.range_to_eigen = std::max(r.range_to_eigen, d);
  }
  return r;
}

void write_samples_csv(const SpectralSamples& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t j = 0; j < s.dim; ++j) out << 'x' << j + 1 << ',';
  out << "re,im\n";
  char buf[64];
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (double x : s.point(i)) {
      std::snprintf(buf, sizeof buf, "%.17g,", x);
      out << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s.values[i].real(), s.values[i].imag());
    out << buf;
  }
}

}  // namespace focklab

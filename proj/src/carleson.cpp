#include "focklab/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace focklab {

namespace {

std::vector<double> axis_values(const Lattice& lattice) {
  if (!(lattice.spacing > 0.0) || !(lattice.window >= 0.0)) {
    throw std::invalid_argument("lattice: spacing must be positive and window nonnegative");
  }
  const auto m = static_cast<int>(std::floor(lattice.window / lattice.spacing + 1e-9));
  std::vector<double> v;
  for (int i = -m; i <= m; ++i) v.push_back(i * lattice.spacing);
  return v;
}

// Scans f over the lattice; the outermost ring is every center with some
// real coordinate at the extreme grid value.
template <class F>
CarlesonReport scan(std::size_t n, const Lattice& lattice, F&& f) {
  const std::vector<double> axis = axis_values(lattice);
  const double edge = std::abs(axis.front());
  CarlesonReport rep;
  rep.lattice = lattice;
  rep.sup_estimate = -std::numeric_limits<double>::infinity();
  for (const ComplexVector& z : lattice_centers(n, lattice)) {
    const double v = f(z);
    ++rep.samples;
    bool ring = false;
    for (Eigen::Index j = 0; j < z.size(); ++j) {
      if (std::abs(z(j).real()) >= edge - 1e-12 || std::abs(z(j).imag()) >= edge - 1e-12) ring = true;
    }
    if (edge == 0.0) ring = false;
    if (ring) {
      rep.boundary_max = std::max(rep.boundary_max, v);
    } else {
      rep.interior_max = std::max(rep.interior_max, v);
    }
    if (v > rep.sup_estimate) {
      rep.sup_estimate = v;
      rep.argmax = z;
    }
  }
  rep.growth_detected = rep.boundary_max > growth_factor * rep.interior_max;
  return rep;
}

ComplexMatrix top_block(const ComplexMatrix& M, std::size_t m) {
  return M.topLeftCorner(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
}

double top_eigenvalue(const ComplexMatrix& M) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (M + M.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

}  // namespace

std::vector<ComplexVector> lattice_centers(std::size_t n, const Lattice& lattice) {
  const std::vector<double> axis = axis_values(lattice);
  const std::size_t m = axis.size();
  const std::size_t d = 2 * n;
  std::size_t total = 1;
  for (std::size_t j = 0; j < d; ++j) total *= m;
  std::vector<ComplexVector> out;
  out.reserve(total);
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t count = 0; count < total; ++count) {
    ComplexVector z(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) z(static_cast<Eigen::Index>(j)) = cplx(axis[idx[j]], axis[idx[n + j]]);
    out.push_back(std::move(z));
    for (std::size_t j = d; j-- > 0;) {
      if (++idx[j] < m) break;
      idx[j] = 0;
    }
  }
  return out;
}

CarlesonReport condition_M(const Measure& mu, const Lattice& lattice, const QuadratureConfig& cfg) {
  const Measure abs_mu = variation(mu);
  const double pin = std::pow(pi, static_cast<double>(mu.dim()));
  return scan(mu.dim(), lattice, [&](const ComplexVector& z) {
    return std::exp(z.squaredNorm()) * pin * berezin_measure(abs_mu, z, cfg).real();
  });
}

CarlesonReport condition_M_normalized(const Measure& mu, const Lattice& lattice, const QuadratureConfig& cfg) {
  const Measure abs_mu = variation(mu);
  return scan(mu.dim(), lattice, [&](const ComplexVector& z) { return berezin_measure(abs_mu, z, cfg).real(); });
}

CarlesonReport carleson_constant(const Measure& mu, const HalfIndex& k, const RealVector& r, const Lattice& lattice,
                                 const QuadratureConfig& cfg) {
  if (k.dim() != mu.dim() || static_cast<std::size_t>(r.size()) != mu.dim()) {
    throw std::invalid_argument("carleson_constant: dimension mismatch");
  }
  if (r.minCoeff() <= 0.0) throw std::invalid_argument("carleson_constant: radii must be positive");
  if (lattice.spacing > 0.5 * r.minCoeff() + 1e-15) {
    throw std::invalid_argument("carleson_constant: lattice spacing must be <= min r_j / 2");
  }
  const Measure weighted = weight(variation(mu), k.as_weight());
  const double g = gamma_factorial(k);
  CarlesonReport rep = scan(mu.dim(), lattice, [&](const ComplexVector& z) {
    return g * g * ball_mass(weighted, z, r, cfg).real();
  });
  rep.r = r;
  return rep;
}

KfcReport kfc_verdict(const Measure& mu, const MultiIndex& k, const BasisSet& basis, const QuadratureConfig& cfg,
                      std::uint64_t seed, int trials) {
  if (k.dim() != basis.dim()) throw std::invalid_argument("kfc_verdict: dimension mismatch");
  const MomentTable m = moment_table(variation(mu), basis.max_degree(), cfg);
  const ComplexMatrix F = coderivative_from_moments(m, k, k, basis);
  KfcReport rep;
  rep.omega = top_eigenvalue(F);
  const BasisSet half = enumerate_basis(basis.dim(), basis.max_degree() / 2);
  rep.omega_half = top_eigenvalue(top_block(F, half.size()));
  rep.growth_detected = rep.omega > growth_factor * rep.omega_half;
  rep.seed = seed;
  rep.random_trials = trials;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int t = 0; t < trials; ++t) {
    ComplexVector f(F.rows());
    for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = cplx(normal(rng), normal(rng));
    f.normalize();
    rep.random_estimate = std::max(rep.random_estimate, f.dot(F * f).real());
  }
  return rep;
}

WeightShiftReport weight_shift(const Measure& mu, const HalfIndex& k, const HalfIndex& p, const RealVector& r,
                               const Lattice& lattice, const QuadratureConfig& cfg) {
  if (!k.geq(p)) throw std::invalid_argument("weight_shift: requires k >= p");
  const WeightExponent kmp = k - p;
  const HalfIndex kmp_index = HalfIndex::from_doubled(std::vector<int>(kmp.doubled().begin(), kmp.doubled().end()));
  const Measure abs_mu = variation(mu);
  WeightShiftReport rep;
  rep.C_k = carleson_constant(mu, k, r, lattice, cfg).sup_estimate;
  rep.C_kmp_of_mu_p = carleson_constant(weight(abs_mu, p.as_weight()), kmp_index, r, lattice, cfg).sup_estimate;
  rep.C_p_of_mu_kmp = carleson_constant(weight(abs_mu, kmp), p, r, lattice, cfg).sup_estimate;
  const HalfIndex zero = HalfIndex::zeros(mu.dim());
  rep.mass_sup_direct = carleson_constant(weight(abs_mu, k.as_weight()), zero, r, lattice, cfg).sup_estimate;
  rep.mass_sup_shifted =
      carleson_constant(weight(weight(abs_mu, p.as_weight()), kmp), zero, r, lattice, cfg).sup_estimate;
  const double base = std::abs(rep.C_k) > 0.0 ? std::abs(rep.C_k) : 1.0;
  rep.error_kmp_orientation = std::abs(rep.C_kmp_of_mu_p - rep.C_k) / base;
  rep.error_p_orientation = std::abs(rep.C_p_of_mu_kmp - rep.C_k) / base;
  const double mbase = std::abs(rep.mass_sup_direct) > 0.0 ? std::abs(rep.mass_sup_direct) : 1.0;
  rep.error_mass = std::abs(rep.mass_sup_shifted - rep.mass_sup_direct) / mbase;
  return rep;
}

FcVerdicts fc_verdicts(const Measure& mu, const Lattice& lattice, const BasisSet& basis, const QuadratureConfig& cfg) {
  FcVerdicts v;
  v.berezin_growth = condition_M_normalized(mu, lattice, cfg).growth_detected;
  RealVector r = RealVector::Constant(static_cast<Eigen::Index>(mu.dim()), 2.0 * lattice.spacing);
  v.ball_growth = carleson_constant(mu, HalfIndex::zeros(mu.dim()), r, lattice, cfg).growth_detected;
  v.form_growth = kfc_verdict(mu, MultiIndex::zeros(mu.dim()), basis, cfg).growth_detected;
  return v;
}

}  // namespace focklab

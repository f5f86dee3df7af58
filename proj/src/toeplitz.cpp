#include "focklab/toeplitz.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <Eigen/SVD>

namespace focklab {

namespace {

void check_finite(const ComplexMatrix& M, const BasisSet& basis, const std::string& what) {
  for (Eigen::Index c = 0; c < M.cols(); ++c) {
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
      const cplx v = M(r, c);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw std::runtime_error(what + ": non-finite entry at (beta=" + basis[static_cast<std::size_t>(r)].str() +
                                 ", alpha=" + basis[static_cast<std::size_t>(c)].str() + ")");
      }
    }
  }
}

double pi_power(std::size_t n) { return std::pow(pi, -static_cast<double>(n)); }

}  // namespace

ComplexMatrix toeplitz_from_moments(const MomentTable& m, const BasisSet& basis) {
  return coderivative_from_moments(m, MultiIndex::zeros(basis.dim()), MultiIndex::zeros(basis.dim()), basis);
}

ComplexMatrix coderivative_from_moments(const MomentTable& m, const MultiIndex& a, const MultiIndex& b,
                                        const BasisSet& basis) {
  if (a.dim() != basis.dim() || b.dim() != basis.dim()) {
    throw std::invalid_argument("coderivative: index dimension mismatch");
  }
  const auto N = static_cast<Eigen::Index>(basis.size());
  const double scale = pi_power(basis.dim());
  ComplexMatrix M = ComplexMatrix::Zero(N, N);
  // d^a e_alpha = sqrt(alpha!) / (alpha - a)! w^{alpha - a}
  std::vector<std::optional<std::pair<std::size_t, double>>> left(basis.size()), right(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const MultiIndex& alpha = basis[i];
    if (a.leq(alpha)) {
      const MultiIndex low = alpha - a;
      left[i] = {{m.position(low), basis.sqrt_factorials()[i] / factorial_real(low)}};
    }
    if (b.leq(alpha)) {
      const MultiIndex low = alpha - b;
      right[i] = {{m.position(low), basis.sqrt_factorials()[i] / factorial_real(low)}};
    }
  }
  for (std::size_t ca = 0; ca < basis.size(); ++ca) {
    if (!left[ca]) continue;
    for (std::size_t rb = 0; rb < basis.size(); ++rb) {
      if (!right[rb]) continue;
      M(static_cast<Eigen::Index>(rb), static_cast<Eigen::Index>(ca)) =
          scale * m.values(static_cast<Eigen::Index>(left[ca]->first), static_cast<Eigen::Index>(right[rb]->first)) *
          left[ca]->second * right[rb]->second;
    }
  }
  return M;
}

OperatorMatrix assemble_toeplitz(const Measure& mu, const BasisSet& basis, const QuadratureConfig& cfg) {
  if (mu.dim() != basis.dim()) throw std::invalid_argument("assemble_toeplitz: measure/basis dimension mismatch");
  const MomentTable m = moment_table(mu, basis.max_degree(), cfg);
  OperatorMatrix out{basis, toeplitz_from_moments(m, basis), "T[" + mu.describe() + "]"};
  check_finite(out.entries, basis, "assemble_toeplitz");
  return out;
}

OperatorMatrix assemble_coderivative(const Measure& mu, const MultiIndex& a, const MultiIndex& b,
                                     const BasisSet& basis, const QuadratureConfig& cfg,
                                     const std::optional<HalfIndex>& k) {
  if (mu.dim() != basis.dim()) throw std::invalid_argument("assemble_coderivative: measure/basis dimension mismatch");
  if (k && (a + b) != k->twice()) {
    throw std::invalid_argument("assemble_coderivative: a + b = " + (a + b).str() + " differs from 2k = " +
                                k->twice().str());
  }
  const MomentTable m = moment_table(mu, basis.max_degree(), cfg);
  OperatorMatrix out{basis, coderivative_from_moments(m, a, b, basis),
                     "T[d^" + a.str() + " dbar^" + b.str() + " " + mu.describe() + "]"};
  check_finite(out.entries, basis, "assemble_coderivative");
  return out;
}

OperatorMatrix assemble_real_coderivative(const Measure& mu, const HalfIndex& k, const BasisSet& basis,
                                          const QuadratureConfig& cfg) {
  if (mu.dim() != basis.dim() || k.dim() != basis.dim()) {
    throw std::invalid_argument("assemble_real_coderivative: dimension mismatch");
  }
  const MultiIndex two_k = k.twice();
  const MomentTable m = moment_table(mu, basis.max_degree(), cfg);
  const auto N = static_cast<Eigen::Index>(basis.size());
  ComplexMatrix sum = ComplexMatrix::Zero(N, N);
  for (const MultiIndex& beta : enumerate_multi_indices(basis.dim(), two_k.total())) {
    if (!beta.leq(two_k)) continue;
    sum += static_cast<double>(binomial(two_k, beta)) * coderivative_from_moments(m, two_k - beta, beta, basis);
  }
  OperatorMatrix out{basis, std::move(sum), "T[dR^" + two_k.str() + " " + mu.describe() + "]"};
  check_finite(out.entries, basis, "assemble_real_coderivative");
  return out;
}

cplx berezin_measure(const Measure& mu, const ComplexVector& z, const QuadratureConfig& cfg, BerezinPath path) {
  if (static_cast<std::size_t>(z.size()) != mu.dim()) throw std::invalid_argument("berezin_measure: dimension mismatch");
  const std::size_t n = mu.dim();
  if (path == BerezinPath::automatic) {
    if (const auto* h = mu.as<Measure::Horizontal>()) {
      // pi^{-n} \int\int e^{-(t-x)^2} e^{-(v-y)^2} dv d rho = pi^{-n/2} \int e^{-(t-x)^2} d rho
      const RealVector x = z.real();
      const RealNodeCloud cloud = discretize(h->rho, 1.0, x, cfg.moment_order);
      cplx sum = 0.0;
      for (cplx w : cloud.weights) sum += w;
      return std::pow(pi, -0.5 * static_cast<double>(n)) * sum;
    }
    if (mu.as<Measure::Lebesgue>()) return 1.0;
  }
  const NodeCloud cloud = discretize(mu, 1.0, z, cfg);
  cplx sum = 0.0;
  for (cplx w : cloud.weights) sum += w;
  return pi_power(n) * sum;
}

cplx berezin_coderivative(const Measure& mu, const HalfIndex& k, const ComplexVector& z, const QuadratureConfig& cfg) {
  if (k.dim() != mu.dim()) throw std::invalid_argument("berezin_coderivative: dimension mismatch");
  const MultiIndex two_k = k.twice();
  double factor = std::pow(2.0, two_k.total());
  for (std::size_t j = 0; j < k.dim(); ++j) factor *= std::pow(z(static_cast<Eigen::Index>(j)).real(), two_k[j]);
  if (factor == 0.0) return 0.0;
  return factor * berezin_measure(mu, z, cfg);
}

BerezinOperatorValue berezin_operator(const ComplexMatrix& S, const BasisSet& basis, const ComplexVector& z) {
  if (static_cast<std::size_t>(S.rows()) != basis.size() || S.rows() != S.cols()) {
    throw std::invalid_argument("berezin_operator: matrix does not match basis");
  }
  const FockVector k = normalized_kernel(z, basis);
  const double norm2 = k.squaredNorm();
  BerezinOperatorValue out;
  out.value = k.dot(S * k) / norm2;  // dot conjugates its first argument
  out.kernel_norm = std::sqrt(norm2);
  out.in_domain = out.kernel_norm >= 0.99;
  return out;
}

BerezinOperatorValue berezin_operator(const OperatorMatrix& S, const ComplexVector& z) {
  return berezin_operator(S.entries, S.basis, z);
}

ComplexMatrix interior_block(const ComplexMatrix& M, const BasisSet& basis) {
  const auto m = static_cast<Eigen::Index>(basis.interior_size());
  return M.topLeftCorner(m, m);
}

double interior_max(const ComplexMatrix& M, const BasisSet& basis) {
  return interior_block(M, basis).cwiseAbs().maxCoeff();
}

double commutator_interior_norm(const ComplexMatrix& A, const ComplexMatrix& B, const BasisSet& basis) {
  const ComplexMatrix C = interior_block(A * B - B * A, basis);
  Eigen::JacobiSVD<ComplexMatrix> svd(C);
  return svd.singularValues()(0);
}

void write_matrix_csv(const ComplexMatrix& M, const BasisSet& basis, const std::string& path,
                      const std::string& legend_path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  char buf[64];
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
      if (c) out << ',';
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", M(r, c).real(), M(r, c).imag());
      out << buf;
    }
    out << '\n';
  }
  std::ofstream legend(legend_path);
  if (!legend) throw std::runtime_error("cannot write " + legend_path);
  legend << "row,degree";
  for (std::size_t j = 0; j < basis.dim(); ++j) legend << ",alpha" << j + 1;
  legend << '\n';
  for (std::size_t i = 0; i < basis.size(); ++i) {
    legend << i << ',' << basis[i].total();
    for (int e : basis[i].entries()) legend << ',' << e;
    legend << '\n';
  }
}

}  // namespace focklab

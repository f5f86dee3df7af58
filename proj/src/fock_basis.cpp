#include "focklab/fock_basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "focklab/measures.hpp"

namespace focklab {

namespace {

// Number of multi-indices in n variables with total degree <= D, saturating.
std::size_t count_indices(std::size_t n, int D) {
  // C(n + D, n) computed incrementally
  long double c = 1.0L;
  for (std::size_t j = 1; j <= n; ++j) c = c * static_cast<long double>(D + j) / static_cast<long double>(j);
  return c > 1e18L ? static_cast<std::size_t>(-1) : static_cast<std::size_t>(std::llround(static_cast<double>(c)));
}

void require_dim(const BasisSet& basis, Eigen::Index got, const char* what) {
  if (static_cast<std::size_t>(got) != basis.dim()) {
    throw std::invalid_argument(std::string(what) + ": point has dimension " + std::to_string(got) +
                                ", basis has " + std::to_string(basis.dim()));
  }
}

void require_size(const BasisSet& basis, Eigen::Index got, const char* what) {
  if (static_cast<std::size_t>(got) != basis.size()) {
    throw std::invalid_argument(std::string(what) + ": vector length " + std::to_string(got) +
                                " does not match basis size " + std::to_string(basis.size()));
  }
}

// table[j][d] = z_j^d
std::vector<std::vector<cplx>> power_table(const ComplexVector& z, int D) {
  std::vector<std::vector<cplx>> t(static_cast<std::size_t>(z.size()), std::vector<cplx>(static_cast<std::size_t>(D) + 1));
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    auto& row = t[static_cast<std::size_t>(j)];
    row[0] = 1.0;
    for (int d = 1; d <= D; ++d) row[static_cast<std::size_t>(d)] = row[static_cast<std::size_t>(d) - 1] * z(j);
  }
  return t;
}

cplx monomial(const std::vector<std::vector<cplx>>& powers, const MultiIndex& alpha) {
  cplx v = 1.0;
  for (std::size_t j = 0; j < alpha.dim(); ++j) v *= powers[j][static_cast<std::size_t>(alpha[j])];
  return v;
}

}  // namespace

BasisSet::BasisSet(std::size_t n, int max_degree, std::size_t cap) : n_(n), D_(max_degree) {
  if (n == 0) throw std::invalid_argument("enumerate_basis: n must be >= 1");
  if (max_degree < 0) throw std::invalid_argument("enumerate_basis: D must be >= 0");
  const std::size_t N = count_indices(n, max_degree);
  if (N > cap) {
    std::ostringstream os;
    const double bytes = static_cast<double>(N) * static_cast<double>(N) * 16.0;
    os << "enumerate_basis: basis size C(n+D,n) = " << N << " exceeds the cap " << cap
       << "; one dense complex matrix would need " << bytes / (1024.0 * 1024.0) << " MiB";
    throw std::length_error(os.str());
  }
  indices_ = enumerate_multi_indices(n, max_degree);
  sqrt_fact_.reserve(indices_.size());
  for (const auto& a : indices_) sqrt_fact_.push_back(std::sqrt(factorial_real(a)));
}

std::size_t BasisSet::position(const MultiIndex& alpha) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), alpha, graded_less);
  if (it == indices_.end() || *it != alpha) throw std::out_of_range("BasisSet: " + alpha.str() + " not in basis");
  return static_cast<std::size_t>(it - indices_.begin());
}

bool BasisSet::contains(const MultiIndex& alpha) const {
  return alpha.dim() == n_ && alpha.total() <= D_;
}

std::size_t BasisSet::interior_size() const { return count_indices(n_, D_ / 2); }

BasisSet enumerate_basis(std::size_t n, int max_degree, std::size_t cap) { return BasisSet(n, max_degree, cap); }

FockVector kernel_coefficients(const ComplexVector& z, const BasisSet& basis) {
  require_dim(basis, z.size(), "kernel_coefficients");
  const auto powers = power_table(z.conjugate(), basis.max_degree());
  FockVector c(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    c(static_cast<Eigen::Index>(i)) = monomial(powers, basis[i]) / basis.sqrt_factorials()[i];
  }
  return c;
}

FockVector normalized_kernel(const ComplexVector& z, const BasisSet& basis) {
  return kernel_coefficients(z, basis) * std::exp(-0.5 * z.squaredNorm());
}

double truncated_kernel_norm(const ComplexVector& z, const BasisSet& basis) {
  return normalized_kernel(z, basis).norm();
}

FockVector apply_derivative(const FockVector& v, const MultiIndex& a, const BasisSet& basis) {
  require_size(basis, v.size(), "apply_derivative");
  return derivative_matrix(a, basis) * v;
}

ComplexMatrix derivative_matrix(const MultiIndex& a, const BasisSet& basis) {
  if (a.dim() != basis.dim()) throw std::invalid_argument("derivative_matrix: index dimension mismatch");
  const auto N = static_cast<Eigen::Index>(basis.size());
  ComplexMatrix M = ComplexMatrix::Zero(N, N);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const MultiIndex& alpha = basis[i];
    if (!a.leq(alpha)) continue;
    const MultiIndex lower = alpha - a;
    const std::size_t row = basis.position(lower);
    M(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(i)) =
        basis.sqrt_factorials()[i] / basis.sqrt_factorials()[row];
  }
  return M;
}

cplx evaluate(const FockVector& v, const ComplexVector& z, const BasisSet& basis) {
  require_size(basis, v.size(), "evaluate");
  require_dim(basis, z.size(), "evaluate");
  const auto powers = power_table(z, basis.max_degree());
  cplx sum = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    sum += v(static_cast<Eigen::Index>(i)) * monomial(powers, basis[i]) / basis.sqrt_factorials()[i];
  }
  return sum;
}

cplx evaluate_derivative(const FockVector& v, const MultiIndex& k, const ComplexVector& z, const BasisSet& basis) {
  return evaluate(apply_derivative(v, k, basis), z, basis);
}

ComplexMatrix weyl_matrix(const ComplexVector& h, const BasisSet& basis) {
  require_dim(basis, h.size(), "weyl_matrix");
  const std::size_t n = basis.dim();
  const int D = basis.max_degree();
  const auto minus_h = power_table(-h, D);
  const auto hbar = power_table(h.conjugate(), D);
  const auto N = static_cast<Eigen::Index>(basis.size());
  ComplexMatrix W = ComplexMatrix::Zero(N, N);
  const double prefactor = std::exp(-0.5 * h.squaredNorm());

  // W e_alpha = e^{-|h|^2/2} e^{z.conj(h)} (z - h)^alpha / sqrt(alpha!)
  // coefficient of z^beta: sum_{delta <= alpha, beta} C(alpha, delta) (-h)^{alpha-delta} conj(h)^{beta-delta} / (beta-delta)!
  std::vector<int> delta(n);
  for (std::size_t ca = 0; ca < basis.size(); ++ca) {
    const MultiIndex& alpha = basis[ca];
    for (std::size_t rb = 0; rb < basis.size(); ++rb) {
      const MultiIndex& beta = basis[rb];
      std::vector<int> upper(n);
      for (std::size_t j = 0; j < n; ++j) upper[j] = std::min(alpha[j], beta[j]);
      std::fill(delta.begin(), delta.end(), 0);
      cplx sum = 0.0;
      while (true) {
        cplx term = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
          const int d = delta[j];
          const double binom = factorial_real(alpha[j]) / (factorial_real(d) * factorial_real(alpha[j] - d));
          term *= binom * minus_h[j][static_cast<std::size_t>(alpha[j] - d)] *
                  hbar[j][static_cast<std::size_t>(beta[j] - d)] / factorial_real(beta[j] - d);
        }
        sum += term;
        std::size_t j = n;
        while (j-- > 0) {
          if (++delta[j] <= upper[j]) break;
          delta[j] = 0;
        }
        if (j == static_cast<std::size_t>(-1)) break;
      }
      W(static_cast<Eigen::Index>(rb), static_cast<Eigen::Index>(ca)) =
          prefactor * sum * basis.sqrt_factorials()[rb] / basis.sqrt_factorials()[ca];
    }
  }
  return W;
}

FockVector weyl_apply(const FockVector& v, const ComplexVector& h, const BasisSet& basis) {
  require_size(basis, v.size(), "weyl_apply");
  return weyl_matrix(h, basis) * v;
}

ComplexMatrix composition_matrix(const ComplexMatrix& X, const BasisSet& basis) {
  const std::size_t n = basis.dim();
  if (static_cast<std::size_t>(X.rows()) != n || X.rows() != X.cols()) {
    throw std::invalid_argument("composition_matrix: X must be n x n");
  }
  const ComplexMatrix A = X.adjoint();  // (X^* z)_j = sum_l A(j, l) z_l
  using Poly = std::map<MultiIndex, cplx>;
  // (X^* z)^alpha built recursively: poly(alpha) = poly(alpha - e_j) * (X^* z)_j
  std::vector<Poly> polys(basis.size());
  polys[0][MultiIndex::zeros(n)] = 1.0;
  for (std::size_t i = 1; i < basis.size(); ++i) {
    const MultiIndex& alpha = basis[i];
    std::size_t j = 0;
    while (alpha[j] == 0) ++j;
    const Poly& prev = polys[basis.position(alpha - MultiIndex::unit(n, j))];
    Poly& out = polys[i];
    for (const auto& [mono, c] : prev) {
      for (std::size_t l = 0; l < n; ++l) {
        const cplx a = A(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l));
        if (a == cplx(0.0)) continue;
        out[mono + MultiIndex::unit(n, l)] += c * a;
      }
    }
  }
  const auto N = static_cast<Eigen::Index>(basis.size());
  ComplexMatrix V = ComplexMatrix::Zero(N, N);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (const auto& [mono, c] : polys[i]) {
      const std::size_t row = basis.position(mono);
      V(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(i)) =
          c * basis.sqrt_factorials()[row] / basis.sqrt_factorials()[i];
    }
  }
  return V;
}

}  // namespace focklab

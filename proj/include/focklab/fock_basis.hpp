#pragma once

#include <cstddef>
#include <vector>

#include "focklab/index.hpp"
#include "focklab/types.hpp"

namespace focklab {

/// Normalized monomials e_alpha(w) = w^alpha / sqrt(alpha!) with |alpha| <= D,
/// graded-lex order.
class BasisSet {
 public:
  static constexpr std::size_t default_cap = 20000;

  BasisSet() = default;
  BasisSet(std::size_t n, int max_degree, std::size_t cap = default_cap);

  std::size_t dim() const { return n_; }
  int max_degree() const { return D_; }
  std::size_t size() const { return indices_.size(); }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }

  /// Row of alpha; throws std::out_of_range when |alpha| > D.
  std::size_t position(const MultiIndex& alpha) const;
  bool contains(const MultiIndex& alpha) const;

  /// Number of leading indices with |alpha| <= D/2.
  std::size_t interior_size() const;

  /// sqrt(alpha!) per row.
  const std::vector<double>& sqrt_factorials() const { return sqrt_fact_; }

 private:
  std::size_t n_ = 0;
  int D_ = 0;
  std::vector<MultiIndex> indices_;
  std::vector<double> sqrt_fact_;
};

/// Throws std::length_error (with the dense matrix memory it would need) when
/// C(n+D, n) exceeds cap.
BasisSet enumerate_basis(std::size_t n, int max_degree, std::size_t cap = BasisSet::default_cap);

/// Coefficient vector over a BasisSet.
using FockVector = ComplexVector;

/// K_z truncated: c_alpha = conj(z)^alpha / sqrt(alpha!).
FockVector kernel_coefficients(const ComplexVector& z, const BasisSet& basis);

/// k_z = e^{-|z|^2/2} K_z truncated.
FockVector normalized_kernel(const ComplexVector& z, const BasisSet& basis);

/// Truncated ||k_z||, i.e. sqrt(e^{-|z|^2} sum_{|alpha|<=D} |z^alpha|^2/alpha!).
double truncated_kernel_norm(const ComplexVector& z, const BasisSet& basis);

/// Coefficients of d^a f: c_alpha -> sqrt(alpha!/(alpha-a)!) c_alpha moved to alpha - a.
FockVector apply_derivative(const FockVector& v, const MultiIndex& a, const BasisSet& basis);

/// Matrix of d^a on the basis (entry (beta, alpha) = <d^a e_alpha, e_beta>).
ComplexMatrix derivative_matrix(const MultiIndex& a, const BasisSet& basis);

/// f(z) for f = sum c_alpha e_alpha.
cplx evaluate(const FockVector& v, const ComplexVector& z, const BasisSet& basis);

/// (d^k f)(z).
cplx evaluate_derivative(const FockVector& v, const MultiIndex& k, const ComplexVector& z, const BasisSet& basis);

/// Truncated matrix of W_h f(z) = e^{z.conj(h) - |h|^2/2} f(z - h).
ComplexMatrix weyl_matrix(const ComplexVector& h, const BasisSet& basis);

FockVector weyl_apply(const FockVector& v, const ComplexVector& h, const BasisSet& basis);

/// Matrix of V_X f(z) = f(X^* z). Block diagonal in total degree, so it is
/// exactly unitary in truncation when X is unitary.
ComplexMatrix composition_matrix(const ComplexMatrix& X, const BasisSet& basis);

}  // namespace focklab

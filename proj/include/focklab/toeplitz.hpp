#pragma once

#include <optional>
#include <string>

#include "focklab/fock_basis.hpp"
#include "focklab/measures.hpp"

namespace focklab {

/// Dense truncated operator; entries(beta, alpha) = <T e_alpha, e_beta>.
struct OperatorMatrix {
  BasisSet basis;
  ComplexMatrix entries;
  std::string label;
};

/// T_mu: entry (beta, alpha) = pi^{-n} m_{alpha,beta}(mu) / sqrt(alpha! beta!).
OperatorMatrix assemble_toeplitz(const Measure& mu, const BasisSet& basis, const QuadratureConfig& cfg = {});

/// Sesquilinear form pi^{-n} \int d^a f conj(d^b g) e^{-|w|^2} d mu. When k is
/// given, a + b must equal 2k.
OperatorMatrix assemble_coderivative(const Measure& mu, const MultiIndex& a, const MultiIndex& b,
                                     const BasisSet& basis, const QuadratureConfig& cfg = {},
                                     const std::optional<HalfIndex>& k = {});

/// sum_{beta <= 2k} C(2k, beta) T_{d^{2k-beta} dbar^beta mu}; 2k must be an integer index.
OperatorMatrix assemble_real_coderivative(const Measure& mu, const HalfIndex& k, const BasisSet& basis,
                                          const QuadratureConfig& cfg = {});

/// Same assemblies from a precomputed moment table (degree >= basis D).
ComplexMatrix toeplitz_from_moments(const MomentTable& m, const BasisSet& basis);
ComplexMatrix coderivative_from_moments(const MomentTable& m, const MultiIndex& a, const MultiIndex& b,
                                        const BasisSet& basis);

enum class BerezinPath {
  automatic,        ///< factored form for horizontal measures, full quadrature otherwise
  full_quadrature,  ///< always the 2n-dimensional Gaussian integral
};

/// pi^{-n} \int e^{-|z-w|^2} d mu(w).
cplx berezin_measure(const Measure& mu, const ComplexVector& z, const QuadratureConfig& cfg = {},
                     BerezinPath path = BerezinPath::automatic);

/// 2^{|2k|} (Re z)^{2k} mu~(z).
cplx berezin_coderivative(const Measure& mu, const HalfIndex& k, const ComplexVector& z,
                          const QuadratureConfig& cfg = {});

struct BerezinOperatorValue {
  cplx value;
  double kernel_norm;  ///< truncated ||k_z||
  bool in_domain;      ///< kernel_norm >= 0.99
};

/// <S k_z, k_z> / <k_z, k_z> with the truncated normalized kernel.
BerezinOperatorValue berezin_operator(const OperatorMatrix& S, const ComplexVector& z);
BerezinOperatorValue berezin_operator(const ComplexMatrix& S, const BasisSet& basis, const ComplexVector& z);

/// Leading block of degrees <= D/2.
ComplexMatrix interior_block(const ComplexMatrix& M, const BasisSet& basis);

/// max |M_ij| over the interior block.
double interior_max(const ComplexMatrix& M, const BasisSet& basis);

/// Spectral norm of the interior block of AB - BA.
double commutator_interior_norm(const ComplexMatrix& A, const ComplexMatrix& B, const BasisSet& basis);

/// Writes the matrix as CSV (each entry as a re,im pair) plus a legend file
/// mapping row i to its multi-index.
void write_matrix_csv(const ComplexMatrix& M, const BasisSet& basis, const std::string& path,
                      const std::string& legend_path);

}  // namespace focklab
